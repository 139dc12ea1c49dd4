#include "ohmprobe/cli/query.hpp"

#include <algorithm>

#include "ohmprobe/dynamics.hpp"
#include "ohmprobe/estimation.hpp"
#include "ohmprobe/optimize.hpp"

namespace ohmprobe::cli {

namespace {

ProbeSpec probe_of(const ParamSet& p)
{
    ProbeSpec pr;
    pr.xi = p.number("probe.xi");
    pr.n_th = p.number("probe.n_th");
    pr.theta = p.number("probe.theta");
    pr.n_c = p.number("probe.n_c");
    pr.theta_d = p.number("probe.theta_d");
    pr.validate();
    return pr;
}

EnvironmentSpec env_of(const ParamSet& p)
{
    EnvironmentSpec env{{p.number("env.alpha"), p.number("env.s"), p.number("env.w")}, p.number("env.T")};
    env.validate();
    return env;
}

EvolutionMode mode_of(const ParamSet& p)
{
    const std::string& m = p.raw("mode");
    if (m == "secular_markov") return EvolutionMode::secular_markov;
    if (m == "full") return EvolutionMode::full;
    throw UsageError("mode must be secular_markov or full, got '" + m + "'");
}

nlohmann::json matrix_json(const Mat2& m)
{
    return {{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}};
}

}  // namespace

const std::vector<std::string>& query_quantities()
{
    static const std::vector<std::string> names = {"J",     "Gamma", "DeltaGamma", "sigma",   "delta", "H",
                                                   "F",     "snr_H", "snr_F",      "phi_opt", "w_max"};
    return names;
}

ParamSet query_defaults()
{
    return {{"probe.xi", "1"},     {"probe.n_th", "0"},   {"probe.theta", "0"},   {"probe.n_c", "0"},
            {"probe.theta_d", "0"}, {"env.alpha", "1e-3"}, {"env.s", "1"},         {"env.T", "100"},
            {"env.w", "1"},         {"time.t", "1000"},    {"query.omega", "1"},   {"query.phi", "opt"},
            {"mode", "secular_markov"}};
}

nlohmann::json run_query(const ParamSet& p, const std::vector<std::string>& quantities)
{
    if (quantities.empty()) throw UsageError("empty quantities list");
    const auto& known = query_quantities();
    for (const auto& q : quantities)
        if (std::find(known.begin(), known.end(), q) == known.end()) throw UsageError("unknown quantity '" + q + "'");

    const ProbeSpec probe = probe_of(p);
    const EnvironmentSpec env = env_of(p);
    const double t = p.number("time.t");
    if (!(t >= 0.0)) throw UsageError("time.t must be non-negative");
    const EvolutionMode mode = mode_of(p);
    const bool want_phi_opt = p.raw("query.phi") == "opt";

    auto wants = [&](const char* name) { return std::find(quantities.begin(), quantities.end(), name) != quantities.end(); };

    Warnings warnings;
    nlohmann::json rec = nlohmann::json::object();
    rec["mode"] = p.raw("mode");

    std::optional<double> phi;
    if (wants("phi_opt") || wants("F") || wants("snr_F")) {
        if (want_phi_opt) {
            const PhaseOptimum opt = optimal_phase(probe, env, t, &warnings);
            phi = opt.phi;
            if (wants("phi_opt")) rec["phi_opt"] = opt.phi;
        } else {
            phi = p.number("query.phi");
            if (wants("phi_opt")) rec["phi_opt"] = optimal_phase(probe, env, t, &warnings).phi;
        }
    }

    if (wants("J")) rec["J"] = spectral_density(env.spectral, p.number("query.omega"));
    if (wants("Gamma") || wants("DeltaGamma")) {
        double gamma = 0.0, delta_gamma = 0.0;
        if (mode == EvolutionMode::secular_markov) {
            gamma = markov_gamma_t(env, probe.omega0, t).Gamma;
            delta_gamma = markov_delta_gamma_t(env, probe.omega0, t);
        } else {
            const PropagatorData prop = full_propagator(env, probe.omega0, t);
            gamma = prop.Gamma;
            delta_gamma = prop.DeltaGamma;
        }
        if (wants("Gamma")) rec["Gamma"] = gamma;
        if (wants("DeltaGamma")) rec["DeltaGamma"] = delta_gamma;
    }
    if (wants("sigma") || wants("delta")) {
        const GaussianState st = evolved_state(probe, env, t, mode);
        if (wants("sigma")) rec["sigma"] = matrix_json(st.sigma);
        if (wants("delta")) rec["delta"] = {st.delta[0], st.delta[1]};
        if (st.sigma.determinant() < 0.25 - 1e-9)
            emit(&warnings, WarningCode::uncertainty_violation, "det sigma below 1/4 at the requested point");
    }
    if (wants("H") || wants("snr_H") || wants("F") || wants("snr_F")) {
        const EstimationPoint e = qfi_cutoff(probe, env, t, mode, phi);
        if (wants("H")) rec["H"] = e.qfi;
        if (wants("snr_H")) rec["snr_H"] = e.snr_h;
        if (wants("F")) rec["F"] = e.fi ? nlohmann::json(*e.fi) : nlohmann::json(nullptr);
        if (wants("snr_F")) rec["snr_F"] = e.snr_f ? nlohmann::json(*e.snr_f) : nlohmann::json(nullptr);
    }
    if (phi && (wants("F") || wants("snr_F"))) rec["phi"] = *phi;
    if (wants("w_max")) {
        const SweetSpot spot = sweet_spot_numeric(
            [&](double w) { return qfi_cutoff(probe, env.with_cutoff(w), t, mode).qfi; }, Bracket{}, &warnings);
        rec["w_max"] = spot.w_max;
        rec["H_max"] = spot.value;
    }

    nlohmann::json warn = nlohmann::json::array();
    for (const auto& w : warnings) warn.push_back({{"code", to_string(w.code)}, {"message", w.message}});
    rec["warnings"] = warn;
    return rec;
}

}  // namespace ohmprobe::cli
