// gaussian.hpp: single-mode Gaussian state algebra.
//
// Conventions (used consistently everywhere in the library):
//  * quadratures X(phi) = (a e^{-i phi} + a^dag e^{i phi}) / sqrt(2), so the
//    vacuum covariance matrix is I/2;
//  * sigma_ij = <{dZ_i, dZ_j}>/2 with Z = (X, P);
//  * characteristic function chi(z) = exp(i z.delta - z^T sigma z / 2), the
//    plain Fourier transform of the Wigner function. With this choice the
//    reservoir propagator acts as chi_t(z) = exp(-z^T Wbar z) chi_0(e^{-Gamma/2} R^T z).

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ohmprobe {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

// Displaced squeezed thermal state parameters: D(beta) S(xi) nu(n_th) S^dag D^dag
// with xi = |xi| e^{i theta} and beta = sqrt(n_c) e^{i theta_D}.
struct ProbeSpec {
    double omega0 = 1.0;
    double n_th = 0.0;
    double xi = 0.0;
    double theta = 0.0;
    double n_c = 0.0;
    double theta_d = 0.0;

    void validate() const;
    bool is_squeezed_thermal() const noexcept { return n_c == 0.0; }
};

struct GaussianState {
    Vec2 delta = Vec2::Zero();
    Mat2 sigma = 0.5 * Mat2::Identity();

    // Throws DomainError if sigma is not symmetric positive definite with
    // det sigma >= 1/4 - tol.
    void check_physical(double tol = 1e-9) const;
};

// Symplectic form.
Mat2 omega_matrix();

// Phase-space rotation [[cos, sin], [-sin, cos]] (free evolution for a time
// with omega_0 t = angle).
Mat2 rotation(double angle);

// Squeezing matrix cosh(xi) I + sinh(xi) [[cos theta, sin theta], [sin theta, -cos theta]].
Mat2 squeezing_matrix(double xi, double theta);

GaussianState make_dsts(const ProbeSpec& probe);

// n_th + sinh^2(xi) (2 n_th + 1) + n_c
double energy_total(const ProbeSpec& probe);

struct EnergyFractions {
    double f_sq = 0.0;
    double f_c = 0.0;
    double f_th = 0.0;
};

// Throws DegenerateEnergyError when the probe carries only thermal energy.
EnergyFractions energy_fractions(const ProbeSpec& probe);

// Inverse of energy_fractions at fixed total energy; theta_D is set to the
// value (theta + pi)/2 that aligns displacement with the squeezed quadrature.
ProbeSpec probe_from_fractions(double n_total, double f_sq, double f_th, double theta = 0.0, double omega0 = 1.0);

// sqrt(det sigma); throws DomainError if det sigma < 1/4 - 1e-9.
double symplectic_eigenvalue(const Mat2& sigma);

std::complex<double> characteristic_function(const GaussianState& state, const Vec2& z);

double wigner(const GaussianState& state, const Vec2& z);

struct HomodyneMarginal {
    double mean = 0.0;
    double variance = 0.0;
};

// Distribution of the outcome of X(phi): Gaussian with mean c.delta and
// variance c^T sigma c, c = (cos phi, sin phi).
HomodyneMarginal homodyne_marginal(const GaussianState& state, double phi);

}  // namespace ohmprobe
