// figures.hpp: data sets behind each figure of the cutoff-estimation study.

#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ohmprobe/cli/config.hpp"

namespace ohmprobe::cli {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Panel {
    std::string stem;            // file name without extension
    std::string description;
    Table table;
    nlohmann::json parameters;   // fixed values that, with a row, reproduce it
};

enum class Format { csv, json };

struct RunConfig {
    std::string id;
    std::vector<std::pair<std::string, std::string>> overrides;  // config file first, then command line
    std::filesystem::path out_dir = ".";
    Format format = Format::csv;
    int jobs = 1;
};

const std::vector<std::string>& figure_ids();

// Default parameter set of a figure; UsageError for unknown ids.
ParamSet figure_defaults(const std::string& id);

// Computes all panels of a figure. Rows are evaluated by up to `jobs`
// threads; the result does not depend on `jobs`.
std::vector<Panel> compute_figure(const std::string& id, const ParamSet& params, int jobs = 1);

// Applies overrides, computes, and writes one data file plus one
// <stem>.meta.json sidecar per panel. Returns the data file paths.
std::vector<std::filesystem::path> run_figure(const RunConfig& cfg);

}  // namespace ohmprobe::cli
