// oracles.hpp: independent reference implementations used only by the tests.
//
// The secular-Markov family is written out from the closed-form solution in
// long double, sharing no code with the library's evolution routines.

#pragma once

#include <cmath>
#include <random>

#include "ohmprobe/estimation.hpp"

namespace oracle {

using LD = long double;
using Moments = ohmprobe::Moments<LD>;
using LMat = Eigen::Matrix<LD, 2, 2>;
using LVec = Eigen::Matrix<LD, 2, 1>;

inline LD spectral_density(LD alpha, LD s, LD wc, LD omega)
{
    return alpha * alpha * wc * std::pow(omega / wc, s) * std::exp(-omega / wc);
}

inline LD coth_half(LD omega0, LD temperature)
{
    if (temperature == 0) return 1;
    return 1 / std::tanh(omega0 / (2 * temperature));
}

struct Point {
    LD alpha = 1e-3L, s = 1, temperature = 100, t = 1000;
    LD xi = 0, n_th = 0, theta = 0, n_c = 0, theta_d = 0;
};

// Interaction-picture moments of the secular-Markov solution at cutoff wc
// (omega0 = 1).
inline Moments secular_state(const Point& p, LD wc)
{
    const LD gamma = std::acos(LD(-1)) * spectral_density(p.alpha, p.s, wc, 1) * p.t;
    const LD decay = std::exp(-gamma);
    const LD diffusion = coth_half(1, p.temperature) * (-std::expm1(-gamma)) / 2;
    const LD c = std::cosh(p.xi), sh = std::sinh(p.xi);
    LMat sq;
    sq << c + sh * std::cos(p.theta), sh * std::sin(p.theta), sh * std::sin(p.theta), c - sh * std::cos(p.theta);
    const LMat sigma0 = (LD(0.5) + p.n_th) * sq * sq.transpose();
    LVec delta0;
    delta0 << std::sqrt(2 * p.n_c) * std::cos(p.theta_d), std::sqrt(2 * p.n_c) * std::sin(p.theta_d);
    Moments m;
    m.sigma = decay * sigma0 + diffusion * LMat::Identity();
    m.delta = std::exp(-gamma / 2) * delta0;
    return m;
}

// QFI for the cutoff from the Bures fidelity of the long-double family.
inline LD secular_qfi(const Point& p, LD wc, LD rel_step = 1e-4L)
{
    return ohmprobe::qfi_fidelity_oracle_generic<LD>([&](LD x) { return secular_state(p, x); }, wc, rel_step * wc);
}

inline ohmprobe::ProbeSpec probe_of(const Point& p)
{
    ohmprobe::ProbeSpec pr;
    pr.xi = static_cast<double>(p.xi);
    pr.n_th = static_cast<double>(p.n_th);
    pr.theta = static_cast<double>(p.theta);
    pr.n_c = static_cast<double>(p.n_c);
    pr.theta_d = static_cast<double>(p.theta_d);
    return pr;
}

inline ohmprobe::EnvironmentSpec env_of(const Point& p, double wc)
{
    return {{static_cast<double>(p.alpha), static_cast<double>(p.s), wc}, static_cast<double>(p.temperature)};
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace oracle
