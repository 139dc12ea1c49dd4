#include "ohmprobe/cli/figures.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>

#include "ohmprobe/cli/output.hpp"
#include "ohmprobe/estimation.hpp"
#include "ohmprobe/optimize.hpp"
#include "ohmprobe/parallel.hpp"

namespace ohmprobe::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::vector<double> log_grid(double lo, double hi, long n)
{
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw UsageError("invalid logarithmic grid");
    std::vector<double> out(static_cast<std::size_t>(n));
    const double a = std::log(lo), b = std::log(hi);
    for (long i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> lin_grid(double lo, double hi, long n)
{
    if (!(hi > lo) || n < 2) throw UsageError("invalid linear grid");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.back() = hi;
    return out;
}

double positive(const ParamSet& p, const std::string& key)
{
    const double v = p.number(key);
    if (!(v > 0.0)) throw UsageError(key + " must be positive");
    return v;
}

double nonneg(const ParamSet& p, const std::string& key)
{
    const double v = p.number(key);
    if (!(v >= 0.0)) throw UsageError(key + " must be non-negative");
    return v;
}

std::vector<double> positive_list(const ParamSet& p, const std::string& key)
{
    auto v = p.list(key);
    for (double x : v)
        if (!(x > 0.0)) throw UsageError(key + " entries must be positive");
    return v;
}

std::vector<double> nonneg_list(const ParamSet& p, const std::string& key)
{
    auto v = p.list(key);
    for (double x : v)
        if (!(x >= 0.0)) throw UsageError(key + " entries must be non-negative");
    return v;
}

long points(const ParamSet& p, const std::string& key)
{
    const long n = p.integer(key);
    if (n < 2 || n > 100000) throw UsageError(key + " must lie in [2, 100000]");
    return n;
}

EvolutionMode mode_of(const ParamSet& p)
{
    const std::string& m = p.raw("mode");
    if (m == "secular_markov") return EvolutionMode::secular_markov;
    if (m == "full") return EvolutionMode::full;
    throw UsageError("mode must be secular_markov or full, got '" + m + "'");
}

EnvironmentSpec environment(double alpha, double s, double temperature, double w)
{
    return {{alpha, s, w}, temperature};
}

ProbeSpec probe(double xi, double n_th, double theta, double n_c = 0.0, double theta_d = 0.0)
{
    ProbeSpec p;
    p.xi = xi;
    p.n_th = n_th;
    p.theta = theta;
    p.n_c = n_c;
    p.theta_d = theta_d;
    return p;
}

double optimal_theta_d(double theta) { return 0.5 * (theta + kPi); }

std::vector<double> w_grid(const ParamSet& p)
{
    return log_grid(positive(p, "grid.w_min"), positive(p, "grid.w_max"), points(p, "grid.w_points"));
}

double qfi_scaled(const ProbeSpec& pr, const EnvironmentSpec& env, double t, EvolutionMode mode)
{
    return qfi_cutoff(pr, env, t, mode).qfi_scaled;
}

// Sweet spot of the QFI over w in the default bracket.
SweetSpot qfi_sweet_spot(const ProbeSpec& pr, double alpha, double s, double temperature, double t, EvolutionMode mode)
{
    return sweet_spot_numeric(
        [&](double w) { return qfi_cutoff(pr, environment(alpha, s, temperature, w), t, mode).qfi; });
}

Table tabulate(std::vector<std::string> columns, std::size_t n, int jobs,
               const std::function<std::vector<double>(std::size_t)>& row)
{
    Table t;
    t.columns = std::move(columns);
    t.rows = parallel_map<std::vector<double>>(n, jobs, row);
    return t;
}

using Builder = std::function<std::vector<Panel>(const ParamSet&, int)>;

struct FigureDef {
    ParamSet defaults;
    Builder build;
};

// QFI versus w for three interaction times, per (s, T) pair.
std::vector<Panel> build_fig2(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha");
    const auto s_list = positive_list(p, "env.s");
    const auto t_list = nonneg_list(p, "env.T");
    const auto times = nonneg_list(p, "time.t");
    const ProbeSpec pr = probe(nonneg(p, "probe.xi"), nonneg(p, "probe.n_th"), p.number("probe.theta"));
    const auto mode = mode_of(p);
    const auto ws = w_grid(p);

    std::vector<Panel> out;
    for (double s : s_list) {
        for (double T : t_list) {
            std::vector<std::string> cols{"w"};
            for (double t : times) cols.push_back("H_t" + label(t));
            Panel panel;
            panel.stem = "fig2_s" + label(s) + "_T" + label(T);
            panel.description = "omega_0^2 H versus w = omega_c/omega_0, one column per interaction time";
            panel.parameters = {{"s", s}, {"T", T}, {"alpha", alpha}, {"xi", pr.xi}, {"n_th", pr.n_th},
                                {"theta", pr.theta}, {"times", times}, {"mode", p.raw("mode")}};
            panel.table = tabulate(cols, ws.size(), jobs, [&](std::size_t i) {
                std::vector<double> row{ws[i]};
                for (double t : times) row.push_back(qfi_scaled(pr, environment(alpha, s, T, ws[i]), t, mode));
                return row;
            });
            out.push_back(std::move(panel));
        }
    }
    return out;
}

// Sweet spots versus t, T, xi, n_th, and H at the sweet spot over (xi, n_th).
std::vector<Panel> build_fig3(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha");
    const auto s_list = positive_list(p, "env.s");
    const double theta = p.number("probe.theta");
    const auto mode = mode_of(p);

    std::vector<std::string> cols_suffix;
    for (double s : s_list) cols_suffix.push_back("wmax_s" + label(s));
    nlohmann::json closed = nlohmann::json::object();
    for (double s : s_list)
        closed[label(s)] = {{"w2_max", sweet_spot_closed_form(s, 2)}, {"w4_max", sweet_spot_closed_form(s, 4)}};

    struct Sweep {
        std::string name, variable;
        std::vector<double> grid;
        std::function<std::vector<double>(double)> row;  // x -> wmax per s
        nlohmann::json fixed;
    };
    std::vector<Sweep> sweeps;

    {
        const double T = nonneg(p, "a.T"), xi = nonneg(p, "a.xi"), nth = nonneg(p, "a.n_th");
        sweeps.push_back({"fig3a_vs_t", "t", log_grid(positive(p, "a.t_min"), positive(p, "a.t_max"), points(p, "a.points")),
                          [=, &s_list](double t) {
                              std::vector<double> r;
                              for (double s : s_list) r.push_back(qfi_sweet_spot(probe(xi, nth, theta), alpha, s, T, t, mode).w_max);
                              return r;
                          },
                          {{"T", T}, {"xi", xi}, {"n_th", nth}}});
    }
    {
        const double t = positive(p, "b.t"), xi = nonneg(p, "b.xi"), nth = nonneg(p, "b.n_th");
        sweeps.push_back({"fig3b_vs_T", "T", log_grid(positive(p, "b.T_min"), positive(p, "b.T_max"), points(p, "b.points")),
                          [=, &s_list](double T) {
                              std::vector<double> r;
                              for (double s : s_list) r.push_back(qfi_sweet_spot(probe(xi, nth, theta), alpha, s, T, t, mode).w_max);
                              return r;
                          },
                          {{"t", t}, {"xi", xi}, {"n_th", nth}}});
    }
    {
        const double T = nonneg(p, "c.T"), t = positive(p, "c.t"), nth = nonneg(p, "c.n_th");
        sweeps.push_back({"fig3c_vs_xi", "xi", lin_grid(nonneg(p, "c.xi_min"), positive(p, "c.xi_max"), points(p, "c.points")),
                          [=, &s_list](double xi) {
                              std::vector<double> r;
                              for (double s : s_list) r.push_back(qfi_sweet_spot(probe(xi, nth, theta), alpha, s, T, t, mode).w_max);
                              return r;
                          },
                          {{"T", T}, {"t", t}, {"n_th", nth}}});
    }
    {
        const double T = nonneg(p, "d.T"), t = positive(p, "d.t"), xi = nonneg(p, "d.xi");
        sweeps.push_back({"fig3d_vs_n_th", "n_th", lin_grid(nonneg(p, "d.n_th_min"), positive(p, "d.n_th_max"), points(p, "d.points")),
                          [=, &s_list](double nth) {
                              std::vector<double> r;
                              for (double s : s_list) r.push_back(qfi_sweet_spot(probe(xi, nth, theta), alpha, s, T, t, mode).w_max);
                              return r;
                          },
                          {{"T", T}, {"t", t}, {"xi", xi}}});
    }

    std::vector<Panel> out;
    for (auto& sw : sweeps) {
        std::vector<std::string> cols{sw.variable};
        cols.insert(cols.end(), cols_suffix.begin(), cols_suffix.end());
        Panel panel;
        panel.stem = sw.name;
        panel.description = "QFI sweet spot w_max versus " + sw.variable + ", one column per Ohmicity s";
        panel.parameters = sw.fixed;
        panel.parameters["alpha"] = alpha;
        panel.parameters["theta"] = theta;
        panel.parameters["s"] = s_list;
        panel.parameters["mode"] = p.raw("mode");
        panel.parameters["closed_form_sweet_spots"] = closed;
        panel.table = tabulate(cols, sw.grid.size(), jobs, [&](std::size_t i) {
            std::vector<double> row{sw.grid[i]};
            const auto w = sw.row(sw.grid[i]);
            row.insert(row.end(), w.begin(), w.end());
            return row;
        });
        out.push_back(std::move(panel));
    }

    // Maximum QFI over the initial-state plane.
    const double T = nonneg(p, "hmax.T"), t = positive(p, "hmax.t");
    const long n = points(p, "hmax.points");
    const auto xis = lin_grid(0.0, positive(p, "hmax.xi_max"), n);
    const auto nths = lin_grid(0.0, positive(p, "hmax.n_th_max"), n);
    for (double s : s_list) {
        Panel panel;
        panel.stem = "fig3_hmax_s" + label(s);
        panel.description = "omega_0^2 H at the sweet spot over (xi, n_th), with the probe energy N_tot";
        panel.parameters = {{"s", s}, {"T", T}, {"t", t}, {"alpha", alpha}, {"theta", theta}, {"mode", p.raw("mode")}};
        panel.table = tabulate({"xi", "n_th", "N_tot", "w_max", "H_max"}, xis.size() * nths.size(), jobs,
                               [&](std::size_t k) {
                                   const double xi = xis[k / nths.size()];
                                   const double nth = nths[k % nths.size()];
                                   const ProbeSpec pr = probe(xi, nth, theta);
                                   const SweetSpot spot = qfi_sweet_spot(pr, alpha, s, T, t, mode);
                                   return std::vector<double>{xi, nth, energy_total(pr), spot.w_max, spot.value};
                               });
        out.push_back(std::move(panel));
    }
    return out;
}

// Homodyne FI over (w, 2 phi - theta) for squeezed vacuum, and its maximal cut.
std::vector<Panel> build_fig4(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha");
    const auto s_list = positive_list(p, "env.s");
    const double T = nonneg(p, "env.T"), t = positive(p, "time.t");
    const ProbeSpec pr = probe(nonneg(p, "probe.xi"), nonneg(p, "probe.n_th"), p.number("probe.theta"));
    const auto ws = w_grid(p);
    const auto ws_surface = log_grid(positive(p, "grid.w_min"), positive(p, "grid.w_max"), points(p, "surface.w_points"));
    const auto phases = lin_grid(0.0, 2.0 * kPi, points(p, "surface.phase_points"));

    std::vector<Panel> out;
    for (double s : s_list) {
        const nlohmann::json params = {{"s", s}, {"T", T}, {"t", t}, {"alpha", alpha}, {"xi", pr.xi},
                                       {"n_th", pr.n_th}, {"theta", pr.theta}, {"mode", "secular_markov"}};
        Panel surface;
        surface.stem = "fig4_s" + label(s) + "_surface";
        surface.description = "omega_0^2 F over w and the phase variable 2 phi - theta";
        surface.parameters = params;
        surface.table = tabulate({"w", "phase", "F"}, ws_surface.size() * phases.size(), jobs, [&](std::size_t k) {
            const double w = ws_surface[k / phases.size()];
            const double phase = phases[k % phases.size()];
            const double phi = 0.5 * (phase + pr.theta);
            return std::vector<double>{w, phase, fi_homodyne(pr, environment(alpha, s, T, w), t, phi)};
        });
        out.push_back(std::move(surface));

        Panel curve;
        curve.stem = "fig4_s" + label(s) + "_curve";
        curve.description = "omega_0^2 F at 2 phi - theta = pi compared with omega_0^2 H";
        curve.parameters = params;
        curve.table = tabulate({"w", "F_phase_pi", "H"}, ws.size(), jobs, [&](std::size_t i) {
            const EnvironmentSpec env = environment(alpha, s, T, ws[i]);
            const auto e = qfi_cutoff(pr, env, t, EvolutionMode::secular_markov, 0.5 * (kPi + pr.theta));
            return std::vector<double>{ws[i], *e.fi, e.qfi};
        });
        out.push_back(std::move(curve));
    }
    return out;
}

// Trade-off between the best homodyne SNR and F/H at its sweet spot.
std::vector<Panel> build_fig5(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha"), s = positive(p, "env.s");
    const double T = nonneg(p, "env.T"), t = positive(p, "time.t");
    const double theta = p.number("probe.theta");
    const EnvironmentSpec env = environment(alpha, s, T, 1.0);
    const std::vector<std::string> cols{"n_th", "xi", "w_max", "phi_opt", "snr_f_max", "r_max"};

    auto panel_from = [&](const std::string& stem, const std::string& description, const std::vector<ProbeSpec>& probes) {
        Panel panel;
        panel.stem = stem;
        panel.description = description;
        panel.parameters = {{"s", s}, {"T", T}, {"t", t}, {"alpha", alpha}, {"theta", theta}, {"mode", "secular_markov"}};
        panel.table.columns = cols;
        for (const auto& q : tradeoff_curve(probes, env, t, nullptr, jobs))
            panel.table.rows.push_back({q.probe.n_th, q.probe.xi, q.w_max, q.phi_opt, q.snr_f_max, q.r_max});
        return panel;
    };

    std::vector<ProbeSpec> fixed_nth;
    const auto xis = lin_grid(0.0, positive(p, "fixed_nth.xi_max"), points(p, "fixed_nth.points"));
    for (double nth : nonneg_list(p, "fixed_nth.n_th"))
        for (double xi : xis) fixed_nth.push_back(probe(xi, nth, theta));

    std::vector<ProbeSpec> fixed_xi;
    const auto nths = lin_grid(0.0, positive(p, "fixed_xi.n_th_max"), points(p, "fixed_xi.points"));
    for (double xi : nonneg_list(p, "fixed_xi.xi"))
        for (auto it = nths.rbegin(); it != nths.rend(); ++it) fixed_xi.push_back(probe(xi, *it, theta));

    return {panel_from("fig5_fixed_n_th", "trade-off curves at fixed n_th, xi increasing", fixed_nth),
            panel_from("fig5_fixed_xi", "trade-off curves at fixed xi, n_th decreasing", fixed_xi)};
}

// Displaced squeezed vacuum versus squeezed vacuum, and the theta_D dependence.
std::vector<Panel> build_fig6(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha"), s = positive(p, "env.s"), t = positive(p, "time.t");
    const double xi = nonneg(p, "probe.xi"), nth = nonneg(p, "probe.n_th"), theta = p.number("probe.theta");
    const double n_c = nonneg(p, "probe.n_c");
    const auto ws = w_grid(p);
    const auto mode = mode_of(p);
    const ProbeSpec plain = probe(xi, nth, theta);
    const ProbeSpec displaced = probe(xi, nth, theta, n_c, optimal_theta_d(theta));

    std::vector<Panel> out;
    for (double T : nonneg_list(p, "env.T")) {
        const nlohmann::json params = {{"s", s}, {"T", T}, {"t", t}, {"alpha", alpha}, {"xi", xi}, {"n_th", nth},
                                       {"theta", theta}, {"n_c", n_c}, {"theta_d", optimal_theta_d(theta)},
                                       {"mode", p.raw("mode")}};
        Panel curves;
        curves.stem = "fig6_T" + label(T);
        curves.description = "omega_0^2 H versus w without and with displacement along theta_D = (theta + pi)/2";
        curves.parameters = params;
        curves.table = tabulate({"w", "H_n_c0", "H_n_c" + label(n_c)}, ws.size(), jobs, [&](std::size_t i) {
            const EnvironmentSpec env = environment(alpha, s, T, ws[i]);
            return std::vector<double>{ws[i], qfi_scaled(plain, env, t, mode), qfi_scaled(displaced, env, t, mode)};
        });
        out.push_back(std::move(curves));

        const SweetSpot spot = qfi_sweet_spot(displaced, alpha, s, T, t, mode);
        const auto thetas = lin_grid(0.0, kPi, points(p, "inset.points"));
        Panel inset;
        inset.stem = "fig6_T" + label(T) + "_theta_d";
        inset.description = "omega_0^2 H and its displacement part versus theta_D at the sweet spot of the displaced probe";
        inset.parameters = params;
        inset.parameters["w"] = spot.w_max;
        inset.table = tabulate({"theta_d", "H", "H_displacement"}, thetas.size(), jobs, [&](std::size_t i) {
            const auto e = qfi_cutoff(probe(xi, nth, theta, n_c, thetas[i]), environment(alpha, s, T, spot.w_max), t, mode);
            return std::vector<double>{thetas[i], e.qfi_scaled, e.qfi_displacement};
        });
        out.push_back(std::move(inset));
    }
    return out;
}

// Sweet spot versus coherent energy for displaced probes.
std::vector<Panel> build_fig7(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha"), t = positive(p, "time.t");
    const auto s_list = positive_list(p, "env.s");
    const double xi = nonneg(p, "probe.xi"), theta = p.number("probe.theta");
    const auto mode = mode_of(p);
    std::vector<double> ncs{0.0};
    for (double v : log_grid(positive(p, "sweep.n_c_min"), positive(p, "sweep.n_c_max"), points(p, "sweep.points")))
        ncs.push_back(v);

    std::vector<Panel> out;
    for (double nth : nonneg_list(p, "probe.n_th")) {
        for (double T : nonneg_list(p, "env.T")) {
            std::vector<std::string> cols{"n_c"};
            for (double s : s_list) cols.push_back("wmax_s" + label(s));
            Panel panel;
            panel.stem = "fig7_n_th" + label(nth) + "_T" + label(T);
            panel.description = "QFI sweet spot versus coherent energy n_c at theta_D = (theta + pi)/2";
            panel.parameters = {{"n_th", nth}, {"T", T}, {"t", t}, {"alpha", alpha}, {"xi", xi}, {"theta", theta},
                                {"theta_d", optimal_theta_d(theta)}, {"s", s_list}, {"mode", p.raw("mode")}};
            panel.table = tabulate(cols, ncs.size(), jobs, [&](std::size_t i) {
                std::vector<double> row{ncs[i]};
                const ProbeSpec pr = probe(xi, nth, theta, ncs[i], optimal_theta_d(theta));
                for (double s : s_list) row.push_back(qfi_sweet_spot(pr, alpha, s, T, t, mode).w_max);
                return row;
            });
            out.push_back(std::move(panel));
        }
    }
    return out;
}

// Optimal squeezing fraction versus total energy.
std::vector<Panel> build_fig8(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha"), s = positive(p, "env.s"), t = positive(p, "time.t");
    const double w = positive(p, "env.w"), theta = p.number("probe.theta");
    const auto mode = mode_of(p);
    const auto fths = nonneg_list(p, "sweep.f_th");
    const auto ns = log_grid(positive(p, "sweep.N_min"), positive(p, "sweep.N_max"), points(p, "sweep.points"));

    std::vector<Panel> out;
    for (double T : nonneg_list(p, "env.T")) {
        std::vector<std::string> cols{"N_tot"};
        for (double f : fths) cols.push_back("f_sq_opt_f_th" + label(f));
        Panel panel;
        panel.stem = "fig8_T" + label(T);
        panel.description = "optimal squeezing fraction versus total probe energy, one column per thermal fraction";
        panel.parameters = {{"s", s}, {"T", T}, {"t", t}, {"alpha", alpha}, {"w", w}, {"theta", theta},
                            {"f_th", fths}, {"mode", p.raw("mode")}};
        const EnvironmentSpec env = environment(alpha, s, T, w);
        panel.table = tabulate(cols, ns.size(), jobs, [&](std::size_t i) {
            std::vector<double> row{ns[i]};
            for (double f : fths) row.push_back(optimal_squeezing_fraction(ns[i], f, env, t, w, nullptr, theta, 1.0, mode).f_sq);
            return row;
        });
        out.push_back(std::move(panel));
    }
    return out;
}

// Leading weak-coupling QFI, with the closed-form sweet spots as constant columns.
std::vector<Panel> build_fig9(const ParamSet& p, int jobs)
{
    const double alpha = positive(p, "env.alpha");
    const auto ws = w_grid(p);

    struct Curve {
        double xi, n_th, T, t;
    };
    struct Spec {
        std::string stem, varied;
        double s;
        std::vector<double> values;
        std::vector<Curve> curves;
        nlohmann::json fixed;
    };
    std::vector<Spec> specs;
    {
        const double s = positive(p, "a.s"), T = nonneg(p, "a.T"), xi = nonneg(p, "a.xi"), nth = nonneg(p, "a.n_th");
        Spec sp{"fig9a_vs_t", "t", s, positive_list(p, "a.t"), {}, {{"T", T}, {"xi", xi}, {"n_th", nth}}};
        for (double t : sp.values) sp.curves.push_back({xi, nth, T, t});
        specs.push_back(sp);
    }
    {
        const double s = positive(p, "b.s"), t = positive(p, "b.t"), xi = nonneg(p, "b.xi"), nth = nonneg(p, "b.n_th");
        Spec sp{"fig9b_vs_T", "T", s, positive_list(p, "b.T"), {}, {{"t", t}, {"xi", xi}, {"n_th", nth}}};
        for (double T : sp.values) sp.curves.push_back({xi, nth, T, t});
        specs.push_back(sp);
    }
    {
        const double s = positive(p, "c.s"), T = nonneg(p, "c.T"), t = positive(p, "c.t"), nth = nonneg(p, "c.n_th");
        Spec sp{"fig9c_vs_xi", "xi", s, nonneg_list(p, "c.xi"), {}, {{"T", T}, {"t", t}, {"n_th", nth}}};
        for (double xi : sp.values) sp.curves.push_back({xi, nth, T, t});
        specs.push_back(sp);
    }
    {
        const double s = positive(p, "d.s"), T = nonneg(p, "d.T"), t = positive(p, "d.t"), xi = nonneg(p, "d.xi");
        Spec sp{"fig9d_vs_n_th", "n_th", s, nonneg_list(p, "d.n_th"), {}, {{"T", T}, {"t", t}, {"xi", xi}}};
        for (double nth : sp.values) sp.curves.push_back({xi, nth, T, t});
        specs.push_back(sp);
    }

    std::vector<Panel> out;
    for (const auto& sp : specs) {
        std::vector<std::string> cols{"w"};
        for (double v : sp.values) cols.push_back("H_" + sp.varied + label(v));
        cols.push_back("w2_max");
        cols.push_back("w4_max");
        const double w2 = sweet_spot_closed_form(sp.s, 2);
        const double w4 = sweet_spot_closed_form(sp.s, 4);
        Panel panel;
        panel.stem = sp.stem;
        panel.description = "leading weak-coupling omega_0^2 H (order alpha^2 for n_th = 0, alpha^4 otherwise)";
        panel.parameters = sp.fixed;
        panel.parameters["s"] = sp.s;
        panel.parameters["alpha"] = alpha;
        panel.parameters["values"] = sp.values;
        panel.table = tabulate(cols, ws.size(), jobs, [&](std::size_t i) {
            std::vector<double> row{ws[i]};
            for (const auto& c : sp.curves) {
                const EnvironmentSpec env = environment(alpha, sp.s, c.T, ws[i]);
                const auto g = markov_gamma_t(env, 1.0, c.t);
                const double coth = thermal_coth(env, 1.0);
                if (c.n_th > 0.0)
                    row.push_back(qfi_weak4(c.xi, c.n_th, coth, g.dGamma_dwc));
                else
                    row.push_back(qfi_weak2(c.xi, coth, g.Gamma, g.dGamma_dwc));
            }
            row.push_back(w2);
            row.push_back(w4);
            return row;
        });
        out.push_back(std::move(panel));
    }
    return out;
}

const std::map<std::string, FigureDef>& registry()
{
    static const std::map<std::string, FigureDef> figures = {
        {"fig2",
         {{{"env.alpha", "1e-3"}, {"env.s", "1,3,0.5"}, {"env.T", "100,0.01"}, {"time.t", "1000,2000,3000"},
           {"probe.xi", "1"}, {"probe.n_th", "2"}, {"probe.theta", "0"}, {"grid.w_min", "1e-3"},
           {"grid.w_max", "10"}, {"grid.w_points", "400"}, {"mode", "secular_markov"}},
          build_fig2}},
        {"fig3",
         {{{"env.alpha", "1e-3"}, {"env.s", "1,3,0.5"}, {"probe.theta", "0"}, {"mode", "secular_markov"},
           {"a.T", "100"}, {"a.xi", "1"}, {"a.n_th", "2"}, {"a.t_min", "100"}, {"a.t_max", "10000"}, {"a.points", "41"},
           {"b.t", "1000"}, {"b.xi", "1"}, {"b.n_th", "2"}, {"b.T_min", "0.01"}, {"b.T_max", "100"}, {"b.points", "41"},
           {"c.T", "100"}, {"c.t", "1000"}, {"c.n_th", "2"}, {"c.xi_min", "0"}, {"c.xi_max", "2"}, {"c.points", "41"},
           {"d.T", "100"}, {"d.t", "1000"}, {"d.xi", "1"}, {"d.n_th_min", "0"}, {"d.n_th_max", "5"}, {"d.points", "41"},
           {"hmax.T", "100"}, {"hmax.t", "1000"}, {"hmax.xi_max", "2"}, {"hmax.n_th_max", "5"}, {"hmax.points", "11"}},
          build_fig3}},
        {"fig4",
         {{{"env.alpha", "1e-3"}, {"env.s", "1,3,0.5"}, {"env.T", "100"}, {"time.t", "1000"}, {"probe.xi", "1"},
           {"probe.n_th", "0"}, {"probe.theta", "0"}, {"grid.w_min", "1e-3"}, {"grid.w_max", "10"},
           {"grid.w_points", "400"}, {"surface.w_points", "100"}, {"surface.phase_points", "73"}},
          build_fig4}},
        {"fig5",
         {{{"env.alpha", "1e-3"}, {"env.s", "1"}, {"env.T", "100"}, {"time.t", "1000"}, {"probe.theta", "0"},
           {"fixed_nth.n_th", "0,0.1,1"}, {"fixed_nth.xi_max", "4"}, {"fixed_nth.points", "41"},
           {"fixed_xi.xi", "0,1,2,3,3.5"}, {"fixed_xi.n_th_max", "10"}, {"fixed_xi.points", "21"}},
          build_fig5}},
        {"fig6",
         {{{"env.alpha", "1e-3"}, {"env.s", "1"}, {"env.T", "100,1"}, {"time.t", "1000"}, {"probe.xi", "1"},
           {"probe.n_th", "0"}, {"probe.theta", "0"}, {"probe.n_c", "1e5"}, {"grid.w_min", "1e-3"},
           {"grid.w_max", "10"}, {"grid.w_points", "400"}, {"inset.points", "181"}, {"mode", "secular_markov"}},
          build_fig6}},
        {"fig7",
         {{{"env.alpha", "1e-3"}, {"env.s", "1,3,0.5"}, {"env.T", "100,0.01"}, {"time.t", "1000"},
           {"probe.xi", "1"}, {"probe.n_th", "0,2"}, {"probe.theta", "0"}, {"sweep.n_c_min", "1"},
           {"sweep.n_c_max", "1e6"}, {"sweep.points", "25"}, {"mode", "secular_markov"}},
          build_fig7}},
        {"fig8",
         {{{"env.alpha", "1e-3"}, {"env.s", "1"}, {"env.T", "100,0.01"}, {"env.w", "0.25"}, {"time.t", "1000"},
           {"probe.theta", "0"}, {"sweep.f_th", "0,0.1,0.2,0.3,0.4"}, {"sweep.N_min", "1"}, {"sweep.N_max", "1000"},
           {"sweep.points", "16"}, {"mode", "secular_markov"}},
          build_fig8}},
        {"fig9",
         {{{"env.alpha", "1e-3"}, {"grid.w_min", "1e-3"}, {"grid.w_max", "10"}, {"grid.w_points", "400"},
           {"a.s", "1"}, {"a.T", "10"}, {"a.xi", "1"}, {"a.n_th", "1"}, {"a.t", "100,200,300"},
           {"b.s", "0.5"}, {"b.t", "100"}, {"b.xi", "1"}, {"b.n_th", "0"}, {"b.T", "10,20,30"},
           {"c.s", "1"}, {"c.T", "10"}, {"c.t", "100"}, {"c.n_th", "0"}, {"c.xi", "1,1.5,2"},
           {"d.s", "3"}, {"d.T", "10"}, {"d.t", "100"}, {"d.xi", "1"}, {"d.n_th", "1,2,3"}},
          build_fig9}},
    };
    return figures;
}

const FigureDef& lookup(const std::string& id)
{
    const auto& reg = registry();
    auto it = reg.find(id);
    if (it == reg.end()) throw UsageError("unknown figure id '" + id + "'");
    return it->second;
}

}  // namespace

const std::vector<std::string>& figure_ids()
{
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [k, v] : registry()) out.push_back(k);
        return out;
    }();
    return ids;
}

ParamSet figure_defaults(const std::string& id) { return lookup(id).defaults; }

std::vector<Panel> compute_figure(const std::string& id, const ParamSet& params, int jobs)
{
    return lookup(id).build(params, jobs);
}

std::vector<std::filesystem::path> run_figure(const RunConfig& cfg)
{
    ParamSet params = figure_defaults(cfg.id);
    for (const auto& [k, v] : cfg.overrides) params.override_value(k, v);
    const auto panels = compute_figure(cfg.id, params, cfg.jobs);
    std::vector<std::filesystem::path> out;
    for (const auto& panel : panels) out.push_back(write_panel(cfg.out_dir, cfg.id, panel, params, cfg.format));
    return out;
}

}  // namespace ohmprobe::cli
