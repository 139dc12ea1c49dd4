#include "ohmprobe/cli/output.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace ohmprobe::cli {

std::string format_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

void write_csv(std::ostream& out, const Table& table)
{
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << table.columns[j];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
        out << '\n';
    }
}

nlohmann::json table_to_json(const Table& table)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        // Same 12 significant digits as the CSV output.
        for (double v : row) r.push_back(std::strtod(format_number(v).c_str(), nullptr));
        rows.push_back(std::move(r));
    }
    return {{"columns", table.columns}, {"rows", std::move(rows)}};
}

nlohmann::json make_sidecar(const std::string& figure, const Panel& panel, const ParamSet& params, Format format)
{
    nlohmann::json config = nlohmann::json::object();
    for (const auto& [k, v] : params.values()) config[k] = v;
    return {
        {"figure", figure},
        {"panel", panel.stem},
        {"description", panel.description},
        {"version", kVersion},
        {"format", format == Format::csv ? "csv" : "json"},
        {"columns", panel.table.columns},
        {"config", std::move(config)},
        {"panel_parameters", panel.parameters},
        {"units", "hbar = k_B = 1; frequencies, temperatures in units of omega_0; times as omega_0 t"},
        {"picture", "interaction"},
        {"tolerances",
         {{"sweet_spot_scan_points", 200},
          {"sweet_spot_rel_tol", 1e-6},
          {"full_mode_fd_step_rel", 1e-4},
          {"full_mode_chebyshev_points", 24},
          {"fidelity_oracle_richardson_rel_tol", 1e-4},
          {"csv_significant_digits", 12}}},
    };
}

std::filesystem::path write_panel(const std::filesystem::path& dir, const std::string& figure, const Panel& panel,
                                  const ParamSet& params, Format format)
{
    std::filesystem::create_directories(dir);
    const std::filesystem::path data = dir / (panel.stem + (format == Format::csv ? ".csv" : ".json"));
    {
        std::ofstream out(data, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + data.string());
        if (format == Format::csv)
            write_csv(out, panel.table);
        else
            out << table_to_json(panel.table).dump(1) << '\n';
    }
    const std::filesystem::path meta = dir / (panel.stem + ".meta.json");
    std::ofstream out(meta, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + meta.string());
    out << make_sidecar(figure, panel, params, format).dump(2) << '\n';
    return data;
}

}  // namespace ohmprobe::cli
