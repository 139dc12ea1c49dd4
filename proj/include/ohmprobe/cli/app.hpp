// app.hpp: the ohmprobe command-line entry point.

#pragma once

#include <ostream>

namespace ohmprobe::cli {

// Exit status: 0 success, 1 numerical failure, 2 usage or domain error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ohmprobe::cli
