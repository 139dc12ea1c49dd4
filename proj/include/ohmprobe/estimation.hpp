// estimation.hpp: quantum and homodyne Fisher information for estimating the
// reservoir cutoff omega_c with a single-mode Gaussian probe.

#pragma once

#include <cmath>
#include <functional>
#include <optional>

#include <Eigen/Dense>

#include "ohmprobe/dynamics.hpp"
#include "ohmprobe/errors.hpp"
#include "ohmprobe/gaussian.hpp"
#include "ohmprobe/spectral.hpp"

namespace ohmprobe {

enum class EvolutionMode { secular_markov, full };

// L = Z^T Phi Z + Z^T zeta - nu, with <L> = 0.
struct SLDData {
    Mat2 Phi = Mat2::Zero();
    Vec2 zeta = Vec2::Zero();
    double nu = 0.0;
};

struct EstimationPoint {
    double w = 0.0;                  // omega_c / omega_0
    double qfi = 0.0;                // H(omega_c)
    double qfi_displacement = 0.0;   // first-moment part of qfi
    double snr_h = 0.0;              // omega_c^2 H
    std::optional<double> fi;        // homodyne F(omega_c, phi)
    std::optional<double> snr_f;     // omega_c^2 F
    double qfi_scaled = 0.0;         // omega_0^2 H
};

// H = [d^4 Tr((sigma^-1 sigma')^2) - Tr((Omega sigma')^2)/4] / (2 d^4 - 1/8)
//     + delta'^T sigma^-1 delta'
// Throws NearPureStateError when 2 d^4 - 1/8 vanishes to working precision.
double qfi_gaussian(const Mat2& sigma, const Mat2& sigma_dot, const Vec2& delta, const Vec2& delta_dot);

// Same, with det(sigma) - 1/4 supplied by the caller. Near purity that
// difference can be formed analytically much more accurately than from the
// entries of sigma.
double qfi_gaussian(const Mat2& sigma, double det_excess, const Mat2& sigma_dot, const Vec2& delta_dot);

template <class Real>
struct Moments {
    Eigen::Matrix<Real, 2, 2> sigma;
    Eigen::Matrix<Real, 2, 1> delta;
};

// Logarithm of the squared Uhlmann fidelity between two single-mode Gaussian
// states,
//   F = exp(-u^T (s1 + s2)^-1 u / 2) / (sqrt(D + d) - sqrt(d)),
//   D = det(s1 + s2), d = 4 (det s1 - 1/4)(det s2 - 1/4), u = delta1 - delta2.
// The denominator minus one is evaluated without cancellation, so nearby
// states give an accurate 1 - F.
template <class Real>
Real log_bures_fidelity(const Moments<Real>& s1, const Moments<Real>& s2)
{
    using std::sqrt;
    using std::log1p;
    const Real quarter = Real(1) / Real(4);
    const Eigen::Matrix<Real, 2, 2> e = s2.sigma - s1.sigma;
    Eigen::Matrix<Real, 2, 2> adj;
    adj << s1.sigma(1, 1), -s1.sigma(0, 1), -s1.sigma(1, 0), s1.sigma(0, 0);
    const Real p = s1.sigma.determinant() - quarter;
    const Real a = (adj * e).trace();
    const Real det_e = e.determinant();
    const Real q = a + det_e;
    const Real pq = p * (p + q);
    const Real root_pq = pq > Real(0) ? sqrt(pq) : Real(0);
    const Real sum_det = (s1.sigma + s2.sigma).determinant();
    const Real sqrt_small = Real(2) * root_pq;
    const Real split = p + q / Real(2) + root_pq;
    const Real numerator = (split != Real(0) ? q * q / split : Real(0)) - det_e;
    const Real g_minus_one = numerator / (sqrt(sum_det + sqrt_small * sqrt_small) + Real(1) + sqrt_small);
    const Eigen::Matrix<Real, 2, 1> u = s1.delta - s2.delta;
    const Real quad = u.dot((s1.sigma + s2.sigma).inverse() * u);
    return -log1p(g_minus_one) - quad / Real(2);
}

// QFI from the fidelity between the states at lambda -+ h/2:
//   H(h) = 8 (1 - sqrt F) / h^2, extrapolated as (4 H(h/2) - H(h)) / 3.
// Throws StepTooLargeError if extrapolation moves the result by more than
// rel_tol.
template <class Real, class StateAt>
Real qfi_fidelity_oracle_generic(StateAt&& state_at, Real lambda, Real h, Real rel_tol = Real(1e-4))
{
    using std::abs;
    using std::expm1;
    auto estimate = [&](Real step) {
        const Moments<Real> lo = state_at(lambda - step / Real(2));
        const Moments<Real> hi = state_at(lambda + step / Real(2));
        const Real log_f = log_bures_fidelity(lo, hi);
        return Real(-8) * expm1(log_f / Real(2)) / (step * step);
    };
    const Real coarse = estimate(h);
    const Real fine = estimate(h / Real(2));
    const Real extrapolated = (Real(4) * fine - coarse) / Real(3);
    if (abs(extrapolated - fine) > rel_tol * abs(extrapolated))
        throw StepTooLargeError("fidelity oracle: Richardson correction exceeds tolerance; reduce the step");
    return extrapolated;
}

double qfi_fidelity_oracle(const std::function<GaussianState(double)>& state_at, double lambda, double h);

// Evolved interaction-picture state of the probe for cutoff omega_c = lambda.
GaussianState evolved_state(const ProbeSpec& probe, const EnvironmentSpec& env, double t, EvolutionMode mode);

// QFI (and optionally the homodyne FI at angle phi) for the cutoff, in the
// interaction picture. Secular-Markov mode differentiates analytically; full
// mode uses central differences with step 1e-4 omega_c and one Richardson
// level. Near-pure states use the closed-form det sigma - 1/4 directly; only
// an exactly pure state with nonzero derivatives reaches the fidelity oracle.
EstimationPoint qfi_cutoff(const ProbeSpec& probe, const EnvironmentSpec& env, double t,
                           EvolutionMode mode = EvolutionMode::secular_markov,
                           std::optional<double> phi = std::nullopt);

// Displacement contribution to the QFI as printed for displaced squeezed
// thermal probes,
//   n_c [Y - m cos(phi) sinh 2xi] / [m^2 + Y e^{-Gamma} Delta_Gamma] Gamma'^2,
//   Y = m cosh 2xi + 2 e^{-Gamma} Delta_Gamma, m = 1 + 2 n_th, phi = 2 theta_D - theta.
// qfi_cutoff does not use it: it evaluates delta'^T sigma^-1 delta' from the
// evolved moments, which differs from this expression beyond leading order in Gamma.
double qfi_displacement_term(const ProbeSpec& probe, const EnvironmentSpec& env, double t);

// Homodyne FI of X(phi) in the secular-Markov regime, F = sigma_F'^2 / (2 sigma_F^2).
// Throws UnsupportedConfiguration for displaced probes (n_c > 0).
double fi_homodyne(const ProbeSpec& probe, const EnvironmentSpec& env, double t, double phi);

// (Gamma'^2 / 2) [(c - coth) / (c + offset)]^2 with offset = 2 e^{Gamma} Delta_Gamma.
double fi_homodyne_closed_form(double c, double coth, double offset, double dGamma);

// c(phi) = (1 + 2 n_th) [cosh 2xi + cos(2 phi - theta) sinh 2xi]
double homodyne_c(const ProbeSpec& probe, double phi);

// Solves 2 sigma Phi sigma - Omega Phi Omega^T / 2 = sigma_dot as a 3x3 linear
// system over symmetric Phi. Throws SingularSystemError near purity.
SLDData sld(const Mat2& sigma, const Mat2& sigma_dot, const Vec2& delta, const Vec2& delta_dot);

struct WeakSLD {
    double c_low = 0.0;   // coefficient of X(theta/2)^2
    double c_high = 0.0;  // coefficient of X((theta + pi)/2)^2
    double angle = 0.0;   // theta / 2
};

// Leading-order SLD of a squeezed thermal probe at weak coupling:
// c = (1/2) d ln J(omega0)/d omega_c e^{-+2 xi}.
WeakSLD sld_weak_diag(const ProbeSpec& probe, const EnvironmentSpec& env);

// Leading weak-coupling QFI for squeezed vacuum probes:
//   [cosh(2 xi) coth - 1] Gamma'^2 / (2 Gamma), and 0 when Gamma and Gamma' both vanish.
double qfi_weak2(double xi, double env_coth, double Gamma, double dGamma);

// Leading weak-coupling QFI for squeezed thermal probes (n_th > 0), O(alpha^4).
double qfi_weak4(double xi, double n_th, double env_coth, double dGamma);

// 1 / (M info)
double variance_bound(double info, long repetitions);

}  // namespace ohmprobe
