#include "ohmprobe/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ohmprobe/errors.hpp"

namespace ohmprobe {

namespace {

constexpr double kUncertaintyTol = 1e-9;

void require_nonnegative(double v, const char* name)
{
    if (!(v >= 0.0) || !std::isfinite(v))
        throw DomainError(std::string(name) + " must be non-negative and finite, got " + std::to_string(v));
}

}  // namespace

void ProbeSpec::validate() const
{
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be positive");
    require_nonnegative(n_th, "n_th");
    require_nonnegative(xi, "xi");
    require_nonnegative(n_c, "n_c");
    if (!std::isfinite(theta) || !std::isfinite(theta_d)) throw DomainError("phases must be finite");
}

void GaussianState::check_physical(double tol) const
{
    if (!delta.allFinite() || !sigma.allFinite()) throw DomainError("state has non-finite entries");
    if (std::abs(sigma(0, 1) - sigma(1, 0)) > 1e-12 * sigma.cwiseAbs().maxCoeff())
        throw DomainError("covariance matrix is not symmetric");
    if (!(sigma(0, 0) > 0.0) || !(sigma(1, 1) > 0.0)) throw DomainError("covariance matrix is not positive definite");
    const double det = sigma.determinant();
    if (det < 0.25 - tol)
        throw DomainError("covariance matrix violates the uncertainty relation: det = " + std::to_string(det));
}

Mat2 omega_matrix()
{
    Mat2 m;
    m << 0.0, 1.0, -1.0, 0.0;
    return m;
}

Mat2 rotation(double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    Mat2 r;
    r << c, s, -s, c;
    return r;
}

Mat2 squeezing_matrix(double xi, double theta)
{
    const double ch = std::cosh(xi);
    const double sh = std::sinh(xi);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Mat2 m;
    m << ch + sh * c, sh * s, sh * s, ch - sh * c;
    return m;
}

GaussianState make_dsts(const ProbeSpec& probe)
{
    probe.validate();
    const Mat2 squeeze = squeezing_matrix(probe.xi, probe.theta);
    GaussianState state;
    state.sigma = (0.5 + probe.n_th) * squeeze * squeeze.transpose();
    // Exact symmetry; the product above can differ in the last ulp.
    state.sigma(1, 0) = state.sigma(0, 1);
    const double amplitude = std::sqrt(2.0 * probe.n_c);
    state.delta = amplitude * Vec2(std::cos(probe.theta_d), std::sin(probe.theta_d));
    return state;
}

double energy_total(const ProbeSpec& probe)
{
    probe.validate();
    const double sh = std::sinh(probe.xi);
    return probe.n_th + sh * sh * (2.0 * probe.n_th + 1.0) + probe.n_c;
}

EnergyFractions energy_fractions(const ProbeSpec& probe)
{
    const double total = energy_total(probe);
    const double active = total - probe.n_th;
    if (!(active > 0.0)) throw DegenerateEnergyError("energy fractions undefined: probe has no squeezing or coherent energy");
    const double sh = std::sinh(probe.xi);
    EnergyFractions f;
    f.f_sq = sh * sh * (1.0 + 2.0 * probe.n_th) / active;
    f.f_c = 1.0 - f.f_sq;
    f.f_th = probe.n_th / total;
    return f;
}

ProbeSpec probe_from_fractions(double n_total, double f_sq, double f_th, double theta, double omega0)
{
    if (!(n_total > 0.0)) throw DegenerateEnergyError("total energy must be positive");
    if (!(f_th >= 0.0 && f_th < 1.0)) throw DegenerateEnergyError("thermal fraction must lie in [0, 1)");
    if (!(f_sq >= 0.0 && f_sq <= 1.0)) throw DomainError("squeezing fraction must lie in [0, 1]");
    ProbeSpec p;
    p.omega0 = omega0;
    p.n_th = f_th * n_total;
    const double active = n_total - p.n_th;
    const double sinh2 = f_sq * active / (1.0 + 2.0 * p.n_th);
    p.xi = std::asinh(std::sqrt(sinh2));
    p.theta = theta;
    p.n_c = (1.0 - f_sq) * active;
    p.theta_d = 0.5 * (theta + std::numbers::pi);
    return p;
}

double symplectic_eigenvalue(const Mat2& sigma)
{
    const double det = sigma.determinant();
    if (!(det >= 0.25 - kUncertaintyTol))
        throw DomainError("invalid covariance matrix: det = " + std::to_string(det) + " < 1/4");
    return std::sqrt(std::max(det, 0.25));
}

std::complex<double> characteristic_function(const GaussianState& state, const Vec2& z)
{
    const double quad = z.dot(state.sigma * z);
    const double phase = z.dot(state.delta);
    return std::exp(std::complex<double>(-0.5 * quad, phase));
}

double wigner(const GaussianState& state, const Vec2& z)
{
    const Vec2 d = z - state.delta;
    const double det = state.sigma.determinant();
    const double quad = d.dot(state.sigma.inverse() * d);
    return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

HomodyneMarginal homodyne_marginal(const GaussianState& state, double phi)
{
    const Vec2 c(std::cos(phi), std::sin(phi));
    return {c.dot(state.delta), c.dot(state.sigma * c)};
}

}  // namespace ohmprobe
