#include "ohmprobe/spectral.hpp"

#include <cmath>
#include <string>

#include "ohmprobe/errors.hpp"

namespace ohmprobe {

namespace {

constexpr double kOverflowExponent = 700.0;

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value))
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(value));
}

void require_nonnegative_frequency(double omega)
{
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw DomainError("frequency must be non-negative, got " + std::to_string(omega));
}

}  // namespace

void SpectralFamily::validate() const
{
    require_positive(alpha, "alpha");
    require_positive(s, "s");
    require_positive(omega_c, "omega_c");
}

void EnvironmentSpec::validate() const
{
    spectral.validate();
    if (!(temperature >= 0.0) || !std::isfinite(temperature))
        throw DomainError("temperature must be non-negative, got " + std::to_string(temperature));
}

double spectral_density(const SpectralFamily& fam, double omega)
{
    fam.validate();
    require_nonnegative_frequency(omega);
    const double u = omega / fam.omega_c;
    return fam.alpha * fam.alpha * fam.omega_c * std::pow(u, fam.s) * std::exp(-u);
}

double spectral_density_dwc(const SpectralFamily& fam, double omega)
{
    fam.validate();
    require_nonnegative_frequency(omega);
    const double u = omega / fam.omega_c;
    const double us = std::pow(u, fam.s);
    return fam.alpha * fam.alpha * std::exp(-u) * ((1.0 - fam.s) * us + us * u);
}

double spectral_log_derivative(const SpectralFamily& fam, double omega)
{
    fam.validate();
    if (!(omega > 0.0)) throw DomainError("log-derivative of J needs omega > 0");
    return (1.0 - fam.s) / fam.omega_c + omega / (fam.omega_c * fam.omega_c);
}

double thermal_occupation(const EnvironmentSpec& env, double omega)
{
    env.validate();
    if (!(omega > 0.0) || !std::isfinite(omega))
        throw DomainError("thermal occupation needs omega > 0, got " + std::to_string(omega));
    if (env.temperature == 0.0) return 0.0;
    const double x = omega / env.temperature;
    if (x > kOverflowExponent) return 0.0;
    return 1.0 / std::expm1(x);
}

double thermal_coth(const EnvironmentSpec& env, double omega)
{
    return 1.0 + 2.0 * thermal_occupation(env, omega);
}

}  // namespace ohmprobe
