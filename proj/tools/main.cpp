#include <iostream>

#include "ohmprobe/cli/app.hpp"

int main(int argc, char** argv) { return ohmprobe::cli::run_cli(argc, argv, std::cout, std::cerr); }
