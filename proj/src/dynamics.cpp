#include "ohmprobe/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ohmprobe/quadrature.hpp"

namespace ohmprobe {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// B_2, B_4, ..., B_20 divided by (2j)!.
constexpr double kBernoulliOverFactorial[10] = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

void require_time(double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be non-negative and finite, got " + std::to_string(t));
}

void require_frequency(double omega0)
{
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("probe frequency must be positive");
}

// alpha^2 omega_c^{1-s} Gamma(s+1): J(w) = prefactor * w^s e^{-w/omega_c} / Gamma(s+1).
double kernel_prefactor(const SpectralFamily& f)
{
    return f.alpha * f.alpha * std::pow(f.omega_c, 1.0 - f.s) * std::tgamma(f.s + 1.0);
}

// Magnitude used to turn relative tolerances into absolute ones for integrals
// of the kernels: the t = 0 values of both kernels scaled by the decay time.
double kernel_scale(const EnvironmentSpec& env)
{
    const auto& f = env.spectral;
    double scale = f.alpha * f.alpha * f.omega_c * std::tgamma(f.s + 1.0);
    if (env.temperature > 0.0) scale += 2.0 * f.alpha * f.alpha * env.temperature * std::tgamma(f.s);
    return scale;
}

}  // namespace

Mat2 PropagatorData::interaction_deviation(const Mat2& sigma0) const
{
    // e^{-Gamma} W = R^T Wbar R
    const Mat2 scaled_w = R.transpose() * Wbar * R;
    Mat2 out = std::expm1(-Gamma) * sigma0 + 2.0 * scaled_w;
    out(1, 0) = out(0, 1);
    return out;
}

std::complex<double> hurwitz_zeta(double p, std::complex<double> q)
{
    if (!(p > 1.0)) throw DomainError("hurwitz_zeta requires p > 1");
    if (!(q.real() > 0.0)) throw DomainError("hurwitz_zeta requires Re q > 0");
    const int direct = std::max(0, static_cast<int>(std::ceil(25.0 - q.real())));
    cplx sum = 0.0;
    for (int k = 0; k < direct; ++k) sum += std::pow(q + static_cast<double>(k), -p);
    const cplx a = q + static_cast<double>(direct);
    const cplx a_inv = 1.0 / a;
    const cplx a_pow = std::pow(a, -p);
    sum += a_pow * a / (p - 1.0) + 0.5 * a_pow;
    // Euler-Maclaurin tail: sum_j B_2j/(2j)! (p)_{2j-1} a^{-p-2j+1}
    double rising = p;
    cplx power = a_pow * a_inv;
    const cplx a_inv2 = a_inv * a_inv;
    for (int j = 1; j <= 10; ++j) {
        sum += kBernoulliOverFactorial[j - 1] * rising * power;
        rising *= (p + 2.0 * j - 1.0) * (p + 2.0 * j);
        power *= a_inv2;
    }
    return sum;
}

BathKernels bath_kernels(const EnvironmentSpec& env, double t)
{
    env.validate();
    require_time(t);
    const auto& f = env.spectral;
    const double p = f.s + 1.0;
    const double pref = kernel_prefactor(f);
    const cplx base = std::pow(cplx(1.0 / f.omega_c, -t), -p);
    BathKernels k;
    k.sine = pref * base.imag();
    double cosine = base.real();
    const double T = env.temperature;
    if (T > 0.0) {
        // 2 sum_{n>=1} (1/omega_c + n/T - i t)^{-p} = 2 T^p zeta(p, 1 + T/omega_c - i T t)
        const cplx z = hurwitz_zeta(p, cplx(1.0 + T / f.omega_c, -T * t));
        cosine += 2.0 * std::pow(T, p) * z.real();
    }
    k.cosine = pref * cosine;
    return k;
}

BathKernels bath_kernels_quadrature(const EnvironmentSpec& env, double t, double rel_tol)
{
    env.validate();
    require_time(t);
    const auto& f = env.spectral;
    const double wc = f.omega_c;
    // u = w / omega_c; the neglected tail of u^s e^{-u} beyond U is below 1e-18.
    const double upper = std::max(50.0, 50.0 * f.s);
    quad::Options opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = rel_tol * 1e-3 * kernel_scale(env) * wc;
    if (t > 0.0) opts.max_panel_width = kPi / (4.0 * wc * t);

    const double a2 = f.alpha * f.alpha;
    auto sine = [&](double u) { return a2 * wc * wc * std::pow(u, f.s) * std::exp(-u) * std::sin(wc * u * t); };
    auto cosine = [&](double u) {
        const double coth = thermal_coth(env, wc * u);
        return a2 * wc * wc * std::pow(u, f.s) * std::exp(-u) * coth * std::cos(wc * u * t);
    };
    BathKernels k;
    k.sine = t > 0.0 ? quad::integrate(sine, 0.0, upper, opts).value : 0.0;
    k.cosine = quad::integrate(cosine, 0.0, upper, opts).value;
    return k;
}

MECoefficients me_coefficients(const EnvironmentSpec& env, double omega0, double tau, KernelMethod method)
{
    env.validate();
    require_frequency(omega0);
    require_time(tau);
    MECoefficients c;
    if (tau == 0.0) return c;

    auto kernels = [&](double t) {
        return method == KernelMethod::closed_form ? bath_kernels(env, t) : bath_kernels_quadrature(env, t, 1e-11);
    };
    quad::Options opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-14 * kernel_scale(env);
    opts.max_panel_width = kPi / (4.0 * omega0);

    c.r = quad::integrate([&](double t) { return std::cos(omega0 * t) * kernels(t).sine; }, 0.0, tau, opts).value;
    c.gamma = quad::integrate([&](double t) { return std::sin(omega0 * t) * kernels(t).sine; }, 0.0, tau, opts).value;
    c.delta = quad::integrate([&](double t) { return std::cos(omega0 * t) * kernels(t).cosine; }, 0.0, tau, opts).value;
    c.pi = quad::integrate([&](double t) { return std::sin(omega0 * t) * kernels(t).cosine; }, 0.0, tau, opts).value;
    return c;
}

MarkovRates markov_coefficients(const EnvironmentSpec& env, double omega0)
{
    env.validate();
    require_frequency(omega0);
    MarkovRates m;
    m.gamma = 0.5 * kPi * spectral_density(env.spectral, omega0);
    m.delta = m.gamma * thermal_coth(env, omega0);
    return m;
}

GammaWithDerivative markov_gamma_t(const EnvironmentSpec& env, double omega0, double t)
{
    env.validate();
    require_frequency(omega0);
    require_time(t);
    return {kPi * spectral_density(env.spectral, omega0) * t, kPi * t * spectral_density_dwc(env.spectral, omega0)};
}

double markov_delta_gamma_t(const EnvironmentSpec& env, double omega0, double t)
{
    const double gamma = markov_gamma_t(env, omega0, t).Gamma;
    return -0.5 * thermal_coth(env, omega0) * std::expm1(-gamma);
}

GaussianState evolve_secular_markov(const GaussianState& state0, const ProbeSpec& probe, const EnvironmentSpec& env,
                                    double t, Picture picture)
{
    probe.validate();
    require_time(t);
    if (t == 0.0) return state0;
    const double gamma = markov_gamma_t(env, probe.omega0, t).Gamma;
    const double delta_gamma = markov_delta_gamma_t(env, probe.omega0, t);
    const double decay = std::exp(-gamma);
    const Mat2 r = picture == Picture::lab ? rotation(probe.omega0 * t) : Mat2::Identity();
    GaussianState out;
    out.sigma = delta_gamma * Mat2::Identity() + decay * (r * state0.sigma * r.transpose());
    out.sigma(1, 0) = out.sigma(0, 1);
    out.delta = std::exp(-0.5 * gamma) * (r * state0.delta);
    return out;
}

std::vector<PropagatorData> full_propagators(const EnvironmentSpec& env, double omega0, std::span<const double> times)
{
    env.validate();
    require_frequency(omega0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        require_time(times[i]);
        if (i > 0 && times[i] < times[i - 1]) throw DomainError("full_propagators requires ascending times");
    }

    static const quad::ChebyshevCumulative cheb(24);
    const int n = cheb.size();
    const double wc = env.spectral.omega_c;
    const double max_width = kPi / (2.0 * omega0);

    // Running integrals at the current left endpoint a.
    double gamma = 0.0, delta = 0.0, pi = 0.0, big_gamma = 0.0, e_int = 0.0;
    double w00 = 0.0, w01 = 0.0, w11 = 0.0;
    double a = 0.0;

    std::vector<PropagatorData> out;
    out.reserve(times.size());
    Eigen::VectorXd fs(n), fc(n), fp(n), eg(n), ed(n), m00(n), m01(n), m11(n);

    std::size_t next = 0;
    while (next < times.size()) {
        const double target = times[next];
        if (target <= a) {
            PropagatorData d;
            d.Gamma = big_gamma;
            const double decay = std::exp(-big_gamma);
            d.DeltaGamma = decay * e_int;
            d.R = rotation(omega0 * a);
            Mat2 w;
            w << w00, w01, w01, w11;
            d.Wbar = decay * (d.R * w * d.R.transpose());
            d.Wbar(1, 0) = d.Wbar(0, 1);
            out.push_back(d);
            ++next;
            continue;
        }
        // Near t = 0 the kernels vary on the scale 1/omega_c; the width cap
        // keeps the complex poles at t = -i/omega_c well outside the panel.
        const double width = std::min(max_width, 0.5 * std::max(1.0 / wc, a));
        double b = a + width;
        if (b >= target - 0.1 * width) b = target;

        const std::vector<double> x = cheb.nodes(a, b);
        for (int i = 0; i < n; ++i) {
            const BathKernels k = bath_kernels(env, x[i]);
            const double s = std::sin(omega0 * x[i]);
            const double c = std::cos(omega0 * x[i]);
            fs[i] = s * k.sine;
            fc[i] = c * k.cosine;
            fp[i] = s * k.cosine;
        }
        const Eigen::VectorXd g = (gamma + cheb.cumulative(fs, a, b).array()).matrix();
        const Eigen::VectorXd dl = (delta + cheb.cumulative(fc, a, b).array()).matrix();
        const Eigen::VectorXd pl = (pi + cheb.cumulative(fp, a, b).array()).matrix();
        const Eigen::VectorXd bg = (big_gamma + 2.0 * cheb.cumulative(g, a, b).array()).matrix();
        for (int i = 0; i < n; ++i) {
            eg[i] = std::exp(bg[i]);
            ed[i] = eg[i] * dl[i];
            // e^{Gamma} R^T M R with M = [[Delta, -Pi/2], [-Pi/2, 0]]
            const double s = std::sin(omega0 * x[i]);
            const double c = std::cos(omega0 * x[i]);
            const double m = dl[i];
            const double q = -0.5 * pl[i];
            m00[i] = eg[i] * (m * c * c - 2.0 * q * s * c);
            m01[i] = eg[i] * (m * s * c + q * (c * c - s * s));
            m11[i] = eg[i] * (m * s * s + 2.0 * q * s * c);
        }
        gamma = g[n - 1];
        delta = dl[n - 1];
        pi = pl[n - 1];
        big_gamma = bg[n - 1];
        e_int += cheb.cumulative(ed, a, b)[n - 1];
        w00 += cheb.cumulative(m00, a, b)[n - 1];
        w01 += cheb.cumulative(m01, a, b)[n - 1];
        w11 += cheb.cumulative(m11, a, b)[n - 1];
        a = b;
    }
    return out;
}

PropagatorData full_propagator(const EnvironmentSpec& env, double omega0, double t)
{
    const double times[1] = {t};
    return full_propagators(env, omega0, times).front();
}

GaussianState propagate(const GaussianState& state0, const PropagatorData& prop, Picture picture)
{
    GaussianState out;
    if (picture == Picture::lab) {
        out.sigma = 2.0 * prop.Wbar + std::exp(-prop.Gamma) * (prop.R * state0.sigma * prop.R.transpose());
        out.delta = std::exp(-0.5 * prop.Gamma) * (prop.R * state0.delta);
    } else {
        out.sigma = state0.sigma + prop.interaction_deviation(state0.sigma);
        out.delta = std::exp(-0.5 * prop.Gamma) * state0.delta;
    }
    out.sigma(1, 0) = out.sigma(0, 1);
    return out;
}

namespace {

void check_uncertainty(const GaussianState& s, double t, Warnings* warnings)
{
    const double det = s.sigma.determinant();
    if (det < 0.25 - 1e-9) {
        emit(warnings, WarningCode::uncertainty_violation,
             "det sigma = " + std::to_string(det) + " < 1/4 at t = " + std::to_string(t) +
                 "; weak-coupling expansion has broken down");
    }
}

}  // namespace

GaussianState evolve_full(const GaussianState& state0, const ProbeSpec& probe, const EnvironmentSpec& env, double t,
                          Warnings* warnings, Picture picture)
{
    const double times[1] = {t};
    return evolve_full_trajectory(state0, probe, env, times, warnings, picture).front();
}

std::vector<GaussianState> evolve_full_trajectory(const GaussianState& state0, const ProbeSpec& probe,
                                                  const EnvironmentSpec& env, std::span<const double> times,
                                                  Warnings* warnings, Picture picture)
{
    probe.validate();
    const auto props = full_propagators(env, probe.omega0, times);
    std::vector<GaussianState> out;
    out.reserve(props.size());
    for (std::size_t i = 0; i < props.size(); ++i) {
        out.push_back(propagate(state0, props[i], picture));
        check_uncertainty(out.back(), times[i], warnings);
    }
    return out;
}

}  // namespace ohmprobe
