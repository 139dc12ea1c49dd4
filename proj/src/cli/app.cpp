#include "ohmprobe/cli/app.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ohmprobe/cli/figures.hpp"
#include "ohmprobe/cli/output.hpp"
#include "ohmprobe/cli/query.hpp"
#include "ohmprobe/errors.hpp"

namespace ohmprobe::cli {

namespace {

int default_jobs()
{
    const char* env = std::getenv("OHMPROBE_JOBS");
    if (!env || !*env) return 1;
    try {
        std::size_t used = 0;
        const int n = std::stoi(env, &used);
        if (used == std::string(env).size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("OHMPROBE_JOBS must be a positive integer, got '") + env + "'");
}

std::vector<std::pair<std::string, std::string>> collect_overrides(const std::string& config_file,
                                                                   const std::vector<std::string>& assignments)
{
    std::vector<std::pair<std::string, std::string>> out;
    if (!config_file.empty()) out = read_config_file(config_file);
    for (const auto& a : assignments) out.push_back(parse_assignment(a));
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cutoff-frequency estimation with Gaussian probes in Ohmic-family reservoirs", "ohmprobe"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string fig_id, fig_config, fig_format = "csv", fig_out = ".";
    std::vector<std::string> fig_assignments;
    int fig_jobs = 0;
    auto* figure = app.add_subcommand("figure", "write the data sets behind one figure");
    figure->add_option("id", fig_id, "figure id (fig2 ... fig9)")->required();
    figure->add_option("assignments", fig_assignments, "key=value overrides");
    figure->add_option("--config", fig_config, "key=value configuration file");
    figure->add_option("--out", fig_out, "output directory");
    figure->add_option("--format", fig_format, "csv or json");
    figure->add_option("--jobs", fig_jobs, "worker threads (default: OHMPROBE_JOBS or 1)");

    std::string q_config, q_quantities;
    std::vector<std::string> q_assignments;
    auto* query = app.add_subcommand("query", "evaluate quantities at a single point");
    query->add_option("assignments", q_assignments, "key=value overrides");
    query->add_option("--config", q_config, "key=value configuration file");
    query->add_option("--quantities", q_quantities, "comma-separated list")->required();

    auto* list = app.add_subcommand("list", "print the figure ids and their default parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (figure->parsed()) {
            RunConfig cfg;
            cfg.id = fig_id;
            figure_defaults(cfg.id);  // rejects unknown ids before any work
            cfg.overrides = collect_overrides(fig_config, fig_assignments);
            cfg.out_dir = fig_out;
            if (fig_format == "csv")
                cfg.format = Format::csv;
            else if (fig_format == "json")
                cfg.format = Format::json;
            else
                throw UsageError("--format must be csv or json");
            if (figure->count("--jobs") && fig_jobs < 1) throw UsageError("--jobs must be at least 1");
            cfg.jobs = figure->count("--jobs") ? fig_jobs : default_jobs();
            for (const auto& path : run_figure(cfg)) out << path.string() << '\n';
        } else if (query->parsed()) {
            ParamSet params = query_defaults();
            for (const auto& [k, v] : collect_overrides(q_config, q_assignments)) params.override_value(k, v);
            std::vector<std::string> names;
            std::size_t start = 0;
            while (start <= q_quantities.size()) {
                const std::size_t comma = std::min(q_quantities.find(',', start), q_quantities.size());
                std::string name = q_quantities.substr(start, comma - start);
                if (!name.empty()) names.push_back(name);
                start = comma + 1;
            }
            out << run_query(params, names).dump() << '\n';
        } else if (list->parsed()) {
            for (const auto& id : figure_ids()) {
                out << id << '\n';
                const ParamSet defaults = figure_defaults(id);
                for (const auto& [k, v] : defaults.values()) out << "  " << k << '=' << v << '\n';
            }
        }
    } catch (const UsageError& e) {
        err << "ohmprobe: usage error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "ohmprobe: invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedConfiguration& e) {
        err << "ohmprobe: unsupported configuration: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "ohmprobe: numerical failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "ohmprobe: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace ohmprobe::cli
