// spectral.hpp: Ohmic-family spectral densities with exponential cutoff and
// thermal occupation of the reservoir.
//
// Units: hbar = k_B = 1. Frequencies and temperatures are expressed in units
// of the probe frequency omega_0 wherever a reference scale is needed.

#pragma once

namespace ohmprobe {

// J(w) = alpha^2 * omega_c * (w / omega_c)^s * exp(-w / omega_c)
//
// s = 1 is Ohmic, s < 1 sub-Ohmic, s > 1 super-Ohmic. The exponent is a
// continuous parameter.
struct SpectralFamily {
    double alpha = 1e-3;   // dimensionless coupling
    double s = 1.0;        // Ohmicity exponent
    double omega_c = 1.0;  // cutoff frequency

    // Throws DomainError unless alpha, s, omega_c are all positive and finite.
    void validate() const;

    SpectralFamily with_cutoff(double cutoff) const
    {
        SpectralFamily out = *this;
        out.omega_c = cutoff;
        return out;
    }
};

struct EnvironmentSpec {
    SpectralFamily spectral;
    double temperature = 0.0;  // k_B T

    void validate() const;

    EnvironmentSpec with_cutoff(double cutoff) const
    {
        return {spectral.with_cutoff(cutoff), temperature};
    }
};

double spectral_density(const SpectralFamily& fam, double omega);

// Analytic derivative dJ/d(omega_c):
//   alpha^2 e^{-u} [ (1 - s) u^s + u^{s+1} ],  u = omega / omega_c
double spectral_density_dwc(const SpectralFamily& fam, double omega);

// d/d(omega_c) ln J(omega) = (1 - s)/omega_c + omega/omega_c^2, omega > 0.
double spectral_log_derivative(const SpectralFamily& fam, double omega);

// Bose occupation 1/(e^{omega/T} - 1). Zero at T = 0 and for omega/T > 700.
double thermal_occupation(const EnvironmentSpec& env, double omega);

// coth(omega / 2T) = 1 + 2 N(omega); equals 1 at T = 0.
double thermal_coth(const EnvironmentSpec& env, double omega);

}  // namespace ohmprobe
