// dynamics.hpp: coefficients of the time-local master equation for a
// harmonic probe linearly coupled to an Ohmic-family reservoir, and the
// Gaussian solution of that master equation.
//
// Time is measured in units of 1/omega_0 when omega_0 = 1; every function
// takes omega0 explicitly so other unit choices work as well.

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ohmprobe/errors.hpp"
#include "ohmprobe/gaussian.hpp"
#include "ohmprobe/spectral.hpp"

namespace ohmprobe {

struct MECoefficients {
    double r = 0.0;      // energy shift
    double gamma = 0.0;  // damping
    double delta = 0.0;  // diffusion
    double pi = 0.0;     // anomalous diffusion
};

struct PropagatorData {
    double Gamma = 0.0;       // 2 int_0^t gamma
    double DeltaGamma = 0.0;  // e^{-Gamma(t)} int_0^t e^{Gamma} Delta
    Mat2 R = Mat2::Identity();
    Mat2 Wbar = Mat2::Zero();

    // sigma(t) - sigma0 in the interaction picture, computed without
    // cancelling the O(1) part of sigma0.
    Mat2 interaction_deviation(const Mat2& sigma0) const;
};

// Frame in which moments are reported. The interaction picture strips the
// free rotation R(t).
enum class Picture { lab, interaction };

// Hurwitz zeta sum_{k>=0} (q + k)^{-p} for real p > 1 and Re q > 0.
std::complex<double> hurwitz_zeta(double p, std::complex<double> q);

// Bath correlation kernels
//   sine(t)   = int_0^inf J(w) sin(w t) dw
//   cosine(t) = int_0^inf J(w) coth(w / 2T) cos(w t) dw
struct BathKernels {
    double sine = 0.0;
    double cosine = 0.0;
};

// Closed form through Gamma functions and the Hurwitz zeta function.
BathKernels bath_kernels(const EnvironmentSpec& env, double t);

// Direct frequency quadrature of the same integrals. Slow; kept as an
// independent check of the closed form.
BathKernels bath_kernels_quadrature(const EnvironmentSpec& env, double t, double rel_tol = 1e-10);

enum class KernelMethod { closed_form, frequency_quadrature };

// r, gamma, Delta, Pi at time tau, integrating the kernels against
// cos/sin(omega0 t') on panels no wider than pi / (4 omega0).
// Throws QuadratureError if the time integrals do not converge.
MECoefficients me_coefficients(const EnvironmentSpec& env, double omega0, double tau,
                               KernelMethod method = KernelMethod::closed_form);

struct MarkovRates {
    double gamma = 0.0;
    double delta = 0.0;
};

// tau -> infinity limits: gamma_M = (pi/2) J(omega0), Delta_M = gamma_M coth(omega0 / 2T).
MarkovRates markov_coefficients(const EnvironmentSpec& env, double omega0);

struct GammaWithDerivative {
    double Gamma = 0.0;
    double dGamma_dwc = 0.0;
};

// Gamma_M(t) = pi J(omega0) t and its omega_c derivative.
GammaWithDerivative markov_gamma_t(const EnvironmentSpec& env, double omega0, double t);

// Delta_Gamma(t) = coth(omega0 / 2T) (1 - e^{-Gamma_M(t)}) / 2.
double markov_delta_gamma_t(const EnvironmentSpec& env, double omega0, double t);

// Secular and Markov approximated solution:
//   sigma = Delta_Gamma I + e^{-Gamma} R sigma0 R^T,  delta = e^{-Gamma/2} R delta0.
GaussianState evolve_secular_markov(const GaussianState& state0, const ProbeSpec& probe, const EnvironmentSpec& env,
                                    double t, Picture picture = Picture::lab);

// Full non-secular propagator data at each requested time (ascending, >= 0).
// Coefficients, Gamma and W are carried as running integrals over Chebyshev
// panels, so a whole trajectory costs one pass.
std::vector<PropagatorData> full_propagators(const EnvironmentSpec& env, double omega0, std::span<const double> times);

PropagatorData full_propagator(const EnvironmentSpec& env, double omega0, double t);

// Apply propagator data to an initial state.
GaussianState propagate(const GaussianState& state0, const PropagatorData& prop, Picture picture = Picture::lab);

// sigma = 2 Wbar + e^{-Gamma} R sigma0 R^T. A determinant below 1/4 - 1e-9
// (breakdown of the weak-coupling expansion) is reported through warnings and
// the state is returned unmodified.
GaussianState evolve_full(const GaussianState& state0, const ProbeSpec& probe, const EnvironmentSpec& env, double t,
                          Warnings* warnings = nullptr, Picture picture = Picture::lab);

std::vector<GaussianState> evolve_full_trajectory(const GaussianState& state0, const ProbeSpec& probe,
                                                  const EnvironmentSpec& env, std::span<const double> times,
                                                  Warnings* warnings = nullptr, Picture picture = Picture::lab);

}  // namespace ohmprobe
