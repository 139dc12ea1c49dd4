// query.hpp: single-point evaluation of library quantities as one JSON record.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ohmprobe/cli/config.hpp"

namespace ohmprobe::cli {

// Recognised quantity names, in output order.
const std::vector<std::string>& query_quantities();

ParamSet query_defaults();

// Evaluates the requested quantities. query.phi = "opt" selects the optimal
// homodyne phase.
nlohmann::json run_query(const ParamSet& params, const std::vector<std::string>& quantities);

}  // namespace ohmprobe::cli
