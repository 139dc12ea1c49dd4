// output.hpp: serialization of figure panels and their provenance sidecars.

#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "ohmprobe/cli/config.hpp"
#include "ohmprobe/cli/figures.hpp"

namespace ohmprobe::cli {

inline constexpr const char* kVersion = "0.1.0";

// Scientific notation with 12 significant digits.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);

nlohmann::json table_to_json(const Table& table);

nlohmann::json make_sidecar(const std::string& figure, const Panel& panel, const ParamSet& params, Format format);

// Writes <dir>/<stem>.csv|json and <dir>/<stem>.meta.json; returns the data path.
std::filesystem::path write_panel(const std::filesystem::path& dir, const std::string& figure, const Panel& panel,
                                  const ParamSet& params, Format format);

}  // namespace ohmprobe::cli
