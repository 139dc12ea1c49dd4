// optimize.hpp: one-dimensional searches over the estimation landscape.

#pragma once

#include <functional>
#include <vector>

#include "ohmprobe/errors.hpp"
#include "ohmprobe/estimation.hpp"

namespace ohmprobe {

struct Bracket {
    double lo = 1e-3;
    double hi = 10.0;
};

struct SweetSpot {
    double w_max = 0.0;
    double value = 0.0;
    Bracket bracket;
    bool boundary = false;
    bool multimodal = false;
};

struct ScanOptions {
    int points = 200;        // log-spaced coarse scan
    double rel_tol = 1e-6;   // golden-section stopping width, relative in w
    int jobs = 1;            // threads for the coarse scan; objective must be pure
};

// Coarse log scan, then golden-section search in log w around the best
// coarse point. Ties go to the smaller w; the result is never worse than the
// coarse maximum. Maxima on the bracket edge and multiple comparable coarse
// peaks are reported through warnings and the returned flags.
SweetSpot sweet_spot_numeric(const std::function<double(double)>& objective, Bracket bracket = {},
                             Warnings* warnings = nullptr, const ScanOptions& options = {});

// Weak-coupling sweet spots: order 2 gives (s+1-sqrt(2(s+1)))/(s^2-1)
// (1/4 at s = 1), order 4 gives 1/(s+sqrt(s)).
double sweet_spot_closed_form(double s, int order);

struct PhaseOptimum {
    double phi = 0.0;
    double fi = 0.0;
    bool flat = false;
    bool off_candidate = false;
};

// argmax over phi in [0, pi) of the homodyne FI: the candidate (theta + pi)/2
// checked against a 181-point grid.
PhaseOptimum optimal_phase(const ProbeSpec& probe, const EnvironmentSpec& env, double t, Warnings* warnings = nullptr);

struct SqueezingOptimum {
    double f_sq = 1.0;
    double qfi = 0.0;
    bool flat = false;
};

// Best split of a fixed energy budget between squeezing and displacement at
// thermal fraction f_th, cutoff omega_c = w omega0. 101-point grid plus
// golden-section refinement.
SqueezingOptimum optimal_squeezing_fraction(double n_total, double f_th, const EnvironmentSpec& env, double t,
                                            double w, Warnings* warnings = nullptr, double theta = 0.0,
                                            double omega0 = 1.0, EvolutionMode mode = EvolutionMode::secular_markov);

struct TradeoffPoint {
    ProbeSpec probe;
    double w_max = 0.0;
    double phi_opt = 0.0;
    double snr_f_max = 0.0;
    double qfi = 0.0;
    double fi = 0.0;
    double r_max = 0.0;  // F / H at w_max
};

// For each probe: maximize omega_c^2 F over w (phase chosen by optimal_phase
// at each w) and report F/H at the maximizer. The cutoff in env is ignored.
std::vector<TradeoffPoint> tradeoff_curve(const std::vector<ProbeSpec>& probes, const EnvironmentSpec& env, double t,
                                          Warnings* warnings = nullptr, int jobs = 1);

}  // namespace ohmprobe
