#include "ohmprobe/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "ohmprobe/parallel.hpp"

namespace ohmprobe {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt 5 - 1) / 2

struct Probe1D {
    double x;
    double value;
};

// Golden-section maximization of f on [a, b] until b - a <= tol.
Probe1D golden_max(const std::function<double(double)>& f, double a, double b, double tol)
{
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol) {
        // Ties keep the left part, favouring the smaller argument.
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? Probe1D{c, fc} : Probe1D{d, fd};
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

SweetSpot sweet_spot_numeric(const std::function<double(double)>& objective, Bracket bracket, Warnings* warnings,
                             const ScanOptions& options)
{
    if (!(bracket.lo > 0.0) || !(bracket.hi > bracket.lo)) throw DomainError("sweet-spot bracket must satisfy 0 < lo < hi");
    if (options.points < 3) throw DomainError("coarse scan needs at least 3 points");
    const int n = options.points;
    const double log_lo = std::log(bracket.lo);
    const double log_hi = std::log(bracket.hi);
    auto grid_w = [&](int i) {
        if (i == 0) return bracket.lo;
        if (i == n - 1) return bracket.hi;
        return std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
    };
    const std::vector<double> values = parallel_map<double>(static_cast<std::size_t>(n), options.jobs,
                                                            [&](std::size_t i) { return objective(grid_w(static_cast<int>(i))); });
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(values[i]))
            throw NumericalError("sweet-spot objective is not finite at w = " + fmt(grid_w(i)));
    }

    int best = 0;
    for (int i = 1; i < n; ++i)
        if (values[i] > values[best]) best = i;

    SweetSpot out;
    out.bracket = bracket;
    out.w_max = grid_w(best);
    out.value = values[best];

    // Interior local maxima of the coarse scan other than the global one.
    const double peak = values[best];
    for (int i = 1; i + 1 < n; ++i) {
        if (i == best) continue;
        if (values[i] > values[i - 1] && values[i] >= values[i + 1] &&
            values[i] >= peak - 0.1 * std::abs(peak)) {
            out.multimodal = true;
            break;
        }
    }
    if (out.multimodal)
        emit(warnings, WarningCode::multimodal_landscape, "two coarse peaks within 10% near w = " + fmt(out.w_max));

    if (best == 0 || best == n - 1) {
        out.boundary = true;
        emit(warnings, WarningCode::boundary_maximum, "maximum on the bracket edge at w = " + fmt(out.w_max));
        return out;
    }

    auto in_log = [&](double x) { return objective(std::exp(x)); };
    const double a = std::log(grid_w(best - 1));
    const double b = std::log(grid_w(best + 1));
    // A log-width of rel_tol is a relative width of rel_tol in w.
    const Probe1D refined = golden_max(in_log, a, b, options.rel_tol);
    if (refined.value > out.value) {
        out.w_max = std::exp(refined.x);
        out.value = refined.value;
    }
    return out;
}

double sweet_spot_closed_form(double s, int order)
{
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Ohmicity s must be positive");
    if (order == 2) {
        if (s == 1.0) return 0.25;
        return (s + 1.0 - std::sqrt(2.0 * (s + 1.0))) / (s * s - 1.0);
    }
    if (order == 4) return 1.0 / (s + std::sqrt(s));
    throw DomainError("sweet-spot order must be 2 or 4");
}

PhaseOptimum optimal_phase(const ProbeSpec& probe, const EnvironmentSpec& env, double t, Warnings* warnings)
{
    const double candidate = std::fmod(std::fmod(0.5 * (probe.theta + kPi), kPi) + kPi, kPi);
    PhaseOptimum out;
    out.phi = candidate;
    out.fi = fi_homodyne(probe, env, t, candidate);
    if (probe.xi == 0.0) {
        out.flat = true;
        emit(warnings, WarningCode::flat_landscape, "homodyne FI does not depend on phi for an unsqueezed probe");
        return out;
    }
    constexpr int kGrid = 181;
    double best_phi = candidate;
    double best = out.fi;
    for (int k = 0; k < kGrid; ++k) {
        const double phi = kPi * k / (kGrid - 1);
        const double f = fi_homodyne(probe, env, t, phi);
        if (f > best) {
            best = f;
            best_phi = phi;
        }
    }
    if (best > out.fi * (1.0 + 1e-9)) {
        out.off_candidate = true;
        emit(warnings, WarningCode::phase_off_candidate,
             "grid phase " + fmt(best_phi) + " beats (theta + pi)/2 = " + fmt(candidate));
        out.phi = best_phi;
        out.fi = best;
    }
    return out;
}

SqueezingOptimum optimal_squeezing_fraction(double n_total, double f_th, const EnvironmentSpec& env, double t,
                                            double w, Warnings* warnings, double theta, double omega0,
                                            EvolutionMode mode)
{
    if (!(w > 0.0)) throw DomainError("w must be positive");
    // Validates the energy budget before any evaluation.
    (void)probe_from_fractions(n_total, 1.0, f_th, theta, omega0);
    const EnvironmentSpec at_w = env.with_cutoff(w * omega0);
    auto objective = [&](double f_sq) {
        return qfi_cutoff(probe_from_fractions(n_total, std::clamp(f_sq, 0.0, 1.0), f_th, theta, omega0), at_w, t, mode)
            .qfi;
    };

    constexpr int kGrid = 101;
    std::vector<double> values(kGrid);
    for (int i = 0; i < kGrid; ++i) values[i] = objective(static_cast<double>(i) / (kGrid - 1));
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    SqueezingOptimum out;
    const double spread = *hi_it - *lo_it;
    if (!(spread > 1e-4 * std::abs(*hi_it))) {
        out.f_sq = 1.0;
        out.qfi = values.back();
        out.flat = true;
        emit(warnings, WarningCode::flat_landscape, "QFI varies by less than 1e-4 relative over f_sq");
        return out;
    }
    // Ties favour more squeezing.
    int best = kGrid - 1;
    for (int i = kGrid - 2; i >= 0; --i)
        if (values[i] > values[best]) best = i;
    out.f_sq = static_cast<double>(best) / (kGrid - 1);
    out.qfi = values[best];
    if (best == 0 || best == kGrid - 1) return out;

    const double a = static_cast<double>(best - 1) / (kGrid - 1);
    const double b = static_cast<double>(best + 1) / (kGrid - 1);
    const Probe1D refined = golden_max(objective, a, b, 1e-7);
    if (refined.value > out.qfi) {
        out.f_sq = refined.x;
        out.qfi = refined.value;
    }
    return out;
}

std::vector<TradeoffPoint> tradeoff_curve(const std::vector<ProbeSpec>& probes, const EnvironmentSpec& env, double t,
                                          Warnings* warnings, int jobs)
{
    auto solve = [&](std::size_t k) {
        const ProbeSpec& probe = probes[k];
        Warnings local;
        auto snr_f = [&](double w) {
            const EnvironmentSpec e = env.with_cutoff(w * probe.omega0);
            const PhaseOptimum ph = optimal_phase(probe, e, t, nullptr);
            return e.spectral.omega_c * e.spectral.omega_c * ph.fi;
        };
        const SweetSpot spot = sweet_spot_numeric(snr_f, {}, &local);
        TradeoffPoint p;
        p.probe = probe;
        p.w_max = spot.w_max;
        const EnvironmentSpec e = env.with_cutoff(spot.w_max * probe.omega0);
        const PhaseOptimum ph = optimal_phase(probe, e, t, &local);
        p.phi_opt = ph.phi;
        p.fi = ph.fi;
        p.snr_f_max = e.spectral.omega_c * e.spectral.omega_c * ph.fi;
        p.qfi = qfi_cutoff(probe, e, t).qfi;
        p.r_max = p.qfi > 0.0 ? p.fi / p.qfi : 0.0;
        return std::pair<TradeoffPoint, Warnings>{p, std::move(local)};
    };
    auto results = parallel_map<std::pair<TradeoffPoint, Warnings>>(probes.size(), jobs, solve);
    std::vector<TradeoffPoint> out;
    out.reserve(results.size());
    for (auto& [point, local] : results) {
        out.push_back(point);
        if (warnings)
            for (auto& wmsg : local) warnings->push_back(std::move(wmsg));
    }
    return out;
}

}  // namespace ohmprobe
