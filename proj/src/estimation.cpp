#include "ohmprobe/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ohmprobe {

namespace {

Mat2 adjugate(const Mat2& m)
{
    Mat2 out;
    out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return out;
}

void symmetrize(Mat2& m) { m(1, 0) = m(0, 1) = 0.5 * (m(0, 1) + m(1, 0)); }

// Interaction-picture moments and their omega_c derivatives.
struct MomentDerivatives {
    Mat2 sigma;
    Mat2 sigma_dot;
    Vec2 delta;
    Vec2 delta_dot;
    double det_excess = 0.0;  // det(sigma) - 1/4
};

double initial_det_excess(const ProbeSpec& probe) { return probe.n_th * (probe.n_th + 1.0); }

MomentDerivatives secular_derivatives(const ProbeSpec& probe, const EnvironmentSpec& env, double t)
{
    const GaussianState s0 = make_dsts(probe);
    const GammaWithDerivative g = markov_gamma_t(env, probe.omega0, t);
    const double coth = thermal_coth(env, probe.omega0);
    const double decay = std::exp(-g.Gamma);
    const double delta_gamma = -0.5 * coth * std::expm1(-g.Gamma);
    const double delta_gamma_dot = 0.5 * coth * decay * g.dGamma_dwc;

    MomentDerivatives m;
    m.sigma = delta_gamma * Mat2::Identity() + decay * s0.sigma;
    m.sigma_dot = delta_gamma_dot * Mat2::Identity() - g.dGamma_dwc * decay * s0.sigma;
    symmetrize(m.sigma);
    symmetrize(m.sigma_dot);
    const double amp = std::exp(-0.5 * g.Gamma);
    m.delta = amp * s0.delta;
    m.delta_dot = -0.5 * g.dGamma_dwc * amp * s0.delta;
    // det(DG I + e^{-G} s0) - 1/4 = DG^2 + DG e^{-G} tr s0 + D0 expm1(-2G) + (D0 - 1/4)
    const double d0 = s0.sigma.determinant();
    m.det_excess = delta_gamma * delta_gamma + delta_gamma * decay * s0.sigma.trace() +
                   d0 * std::expm1(-2.0 * g.Gamma) + initial_det_excess(probe);
    return m;
}

MomentDerivatives full_derivatives(const ProbeSpec& probe, const EnvironmentSpec& env, double t)
{
    const GaussianState s0 = make_dsts(probe);
    const double lambda = env.spectral.omega_c;
    auto propagator = [&](double cutoff) { return full_propagator(env.with_cutoff(cutoff), probe.omega0, t); };

    const PropagatorData centre = propagator(lambda);
    const Mat2 dev = centre.interaction_deviation(s0.sigma);

    struct Diff {
        Mat2 sigma;
        double gamma;
    };
    auto central = [&](double h) {
        const PropagatorData hi = propagator(lambda + h);
        const PropagatorData lo = propagator(lambda - h);
        Diff d;
        d.sigma = (hi.interaction_deviation(s0.sigma) - lo.interaction_deviation(s0.sigma)) / (2.0 * h);
        d.gamma = (hi.Gamma - lo.Gamma) / (2.0 * h);
        return d;
    };
    const double h = 1e-4 * lambda;
    const Diff coarse = central(h);
    const Diff fine = central(0.5 * h);

    MomentDerivatives m;
    m.sigma = s0.sigma + dev;
    symmetrize(m.sigma);
    m.sigma_dot = (4.0 * fine.sigma - coarse.sigma) / 3.0;
    symmetrize(m.sigma_dot);
    const double gamma_dot = (4.0 * fine.gamma - coarse.gamma) / 3.0;
    const double amp = std::exp(-0.5 * centre.Gamma);
    m.delta = amp * s0.delta;
    m.delta_dot = -0.5 * gamma_dot * amp * s0.delta;
    m.det_excess = initial_det_excess(probe) + (adjugate(s0.sigma) * dev).trace() + dev.determinant();
    return m;
}

MomentDerivatives derivatives(const ProbeSpec& probe, const EnvironmentSpec& env, double t, EvolutionMode mode)
{
    probe.validate();
    env.validate();
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be non-negative and finite");
    return mode == EvolutionMode::secular_markov ? secular_derivatives(probe, env, t) : full_derivatives(probe, env, t);
}

double homodyne_fi_from_moments(const MomentDerivatives& m, double phi)
{
    const Vec2 c(std::cos(phi), std::sin(phi));
    const double var = c.dot(m.sigma * c);
    const double var_dot = c.dot(m.sigma_dot * c);
    return var_dot * var_dot / (2.0 * var * var);
}

}  // namespace

namespace {

// The QFI formula without the near-purity guard. Accurate whenever det_excess
// carries full relative precision: the numerator does not cancel as the state
// approaches purity along a dissipative path.
double qfi_formula(const Mat2& sigma, double det_excess, const Mat2& sigma_dot, const Vec2& delta_dot)
{
    const double det = 0.25 + det_excess;
    const double denom = 2.0 * det_excess * (det + 0.25);
    const Mat2 adj = adjugate(sigma);
    // Both terms are quadratic in the derivatives; normalizing first keeps the
    // squares out of the subnormal range when J(omega_0) is tiny.
    const double k = std::max(sigma_dot.cwiseAbs().maxCoeff(), delta_dot.cwiseAbs().maxCoeff());
    if (k == 0.0) return 0.0;
    const Mat2 sd = sigma_dot / k;
    const Vec2 dd = delta_dot / k;
    // d^4 Tr((sigma^-1 sigma')^2) = Tr((adj(sigma) sigma')^2); Tr((Omega sigma')^2) = -2 det sigma'.
    const Mat2 a = adj * sd;
    const double numer = (a * a).trace() + 0.5 * sd.determinant();
    const double displacement = dd.dot(adj * dd) / det;
    return numer * (k / denom) * k + displacement * k * k;
}

}  // namespace

double qfi_gaussian(const Mat2& sigma, double det_excess, const Mat2& sigma_dot, const Vec2& delta_dot)
{
    const double det = 0.25 + det_excess;
    // 2 d^4 - 1/8 = 2 (det - 1/4)(det + 1/4)
    const double denom = 2.0 * det_excess * (det + 0.25);
    if (!(std::abs(denom) >= 1e-12 * std::max(1.0, det * det)))
        throw NearPureStateError("QFI formula is singular for a (nearly) pure state: det sigma - 1/4 = " +
                                 std::to_string(det_excess));
    return qfi_formula(sigma, det_excess, sigma_dot, delta_dot);
}

double qfi_gaussian(const Mat2& sigma, const Mat2& sigma_dot, const Vec2& delta, const Vec2& delta_dot)
{
    GaussianState{delta, sigma}.check_physical();
    return qfi_gaussian(sigma, sigma.determinant() - 0.25, sigma_dot, delta_dot);
}

double qfi_fidelity_oracle(const std::function<GaussianState(double)>& state_at, double lambda, double h)
{
    if (!(h > 0.0)) throw DomainError("fidelity oracle step must be positive");
    auto moments = [&](double x) {
        const GaussianState s = state_at(x);
        return Moments<double>{s.sigma, s.delta};
    };
    return qfi_fidelity_oracle_generic<double>(moments, lambda, h);
}

GaussianState evolved_state(const ProbeSpec& probe, const EnvironmentSpec& env, double t, EvolutionMode mode)
{
    const GaussianState s0 = make_dsts(probe);
    if (mode == EvolutionMode::secular_markov) return evolve_secular_markov(s0, probe, env, t, Picture::interaction);
    return evolve_full(s0, probe, env, t, nullptr, Picture::interaction);
}

EstimationPoint qfi_cutoff(const ProbeSpec& probe, const EnvironmentSpec& env, double t, EvolutionMode mode,
                           std::optional<double> phi)
{
    const MomentDerivatives m = derivatives(probe, env, t, mode);
    const double lambda = env.spectral.omega_c;

    EstimationPoint out;
    out.w = lambda / probe.omega0;
    out.qfi_displacement = m.delta_dot.dot(adjugate(m.sigma) * m.delta_dot) / (0.25 + m.det_excess);
    try {
        out.qfi = qfi_gaussian(m.sigma, m.det_excess, m.sigma_dot, m.delta_dot);
    } catch (const NearPureStateError&) {
        // det_excess is known in closed form, so the ratio stays accurate even
        // when it is far below the generic guard.
        if (m.det_excess > 0.0) {
            out.qfi = qfi_formula(m.sigma, m.det_excess, m.sigma_dot, m.delta_dot);
        } else if (m.sigma_dot.isZero(0.0) && m.delta_dot.isZero(0.0)) {
            out.qfi = 0.0;
        } else {
            auto state_at = [&](double cutoff) { return evolved_state(probe, env.with_cutoff(cutoff), t, mode); };
            out.qfi = qfi_fidelity_oracle(state_at, lambda, 1e-3 * lambda);
        }
    }
    out.qfi = std::max(out.qfi, 0.0);
    out.snr_h = lambda * lambda * out.qfi;
    out.qfi_scaled = probe.omega0 * probe.omega0 * out.qfi;
    if (phi) {
        if (probe.n_c != 0.0)
            throw UnsupportedConfiguration("homodyne Fisher information is only available for undisplaced probes");
        out.fi = homodyne_fi_from_moments(m, *phi);
        out.snr_f = lambda * lambda * *out.fi;
    }
    return out;
}

double qfi_displacement_term(const ProbeSpec& probe, const EnvironmentSpec& env, double t)
{
    probe.validate();
    if (probe.n_c == 0.0) return 0.0;
    const GammaWithDerivative g = markov_gamma_t(env, probe.omega0, t);
    const double dg = markov_delta_gamma_t(env, probe.omega0, t);
    const double m = 1.0 + 2.0 * probe.n_th;
    const double weighted = std::exp(-g.Gamma) * dg;
    const double upsilon = m * std::cosh(2.0 * probe.xi) + 2.0 * weighted;
    const double phi = 2.0 * probe.theta_d - probe.theta;
    const double numer = upsilon - m * std::cos(phi) * std::sinh(2.0 * probe.xi);
    const double denom = m * m + upsilon * weighted;
    return probe.n_c * numer / denom * g.dGamma_dwc * g.dGamma_dwc;
}

double homodyne_c(const ProbeSpec& probe, double phi)
{
    return (1.0 + 2.0 * probe.n_th) *
           (std::cosh(2.0 * probe.xi) + std::cos(2.0 * phi - probe.theta) * std::sinh(2.0 * probe.xi));
}

double fi_homodyne(const ProbeSpec& probe, const EnvironmentSpec& env, double t, double phi)
{
    probe.validate();
    if (probe.n_c != 0.0)
        throw UnsupportedConfiguration("homodyne Fisher information is only available for undisplaced probes");
    return homodyne_fi_from_moments(derivatives(probe, env, t, EvolutionMode::secular_markov), phi);
}

double fi_homodyne_closed_form(double c, double coth, double offset, double dGamma)
{
    const double ratio = (c - coth) / (c + offset);
    return 0.5 * dGamma * dGamma * ratio * ratio;
}

SLDData sld(const Mat2& sigma, const Mat2& sigma_dot, const Vec2& delta, const Vec2& delta_dot)
{
    GaussianState{delta, sigma}.check_physical();
    const double d = std::sqrt(sigma.determinant());
    if (d <= 0.5 + 1e-9) throw SingularSystemError("SLD equation is singular for a (nearly) pure state");

    const Mat2 omega = omega_matrix();
    auto apply = [&](const Mat2& phi) { return Mat2(2.0 * sigma * phi * sigma - 0.5 * omega * phi * omega.transpose()); };
    Mat2 basis[3];
    basis[0] << 1.0, 0.0, 0.0, 0.0;
    basis[1] << 0.0, 1.0, 1.0, 0.0;
    basis[2] << 0.0, 0.0, 0.0, 1.0;
    Eigen::Matrix3d system;
    for (int k = 0; k < 3; ++k) {
        const Mat2 image = apply(basis[k]);
        system.col(k) << image(0, 0), image(0, 1), image(1, 1);
    }
    const Eigen::Vector3d rhs(sigma_dot(0, 0), sigma_dot(0, 1), sigma_dot(1, 1));
    const Eigen::FullPivLU<Eigen::Matrix3d> lu(system);
    if (!lu.isInvertible()) throw SingularSystemError("SLD linear system is singular");
    const Eigen::Vector3d x = lu.solve(rhs);

    SLDData out;
    out.Phi << x[0], x[1], x[1], x[2];
    const double residual = (apply(out.Phi) - sigma_dot).norm();
    // Backward error: compare with the size of the terms that were summed.
    const double scale = std::max(sigma_dot.norm(), 2.0 * sigma.squaredNorm() * out.Phi.norm());
    if (residual > 1e-10 * scale && sigma_dot.norm() > 0.0)
        throw SingularSystemError("SLD solve is ill-conditioned: residual " + std::to_string(residual));

    const Vec2 g = sigma.inverse() * delta_dot;
    out.zeta = g - 2.0 * out.Phi * delta;
    out.nu = (out.Phi * sigma).trace() - delta.dot(out.Phi * delta) + delta.dot(g);
    return out;
}

WeakSLD sld_weak_diag(const ProbeSpec& probe, const EnvironmentSpec& env)
{
    probe.validate();
    env.validate();
    const double half_log_derivative = 0.5 * spectral_log_derivative(env.spectral, probe.omega0);
    return {half_log_derivative * std::exp(-2.0 * probe.xi), half_log_derivative * std::exp(2.0 * probe.xi),
            0.5 * probe.theta};
}

double qfi_weak2(double xi, double env_coth, double Gamma, double dGamma)
{
    // Gamma and its derivative vanish together when J(omega_0) underflows.
    if (Gamma == 0.0 && dGamma == 0.0) return 0.0;
    if (!(Gamma > 0.0)) throw DomainError("weak-coupling QFI needs Gamma > 0 (t > 0)");
    return (std::cosh(2.0 * xi) * env_coth - 1.0) * (dGamma / (2.0 * Gamma)) * dGamma;
}

double qfi_weak4(double xi, double n_th, double env_coth, double dGamma)
{
    if (!(n_th > 0.0)) throw DomainError("fourth-order weak-coupling QFI needs n_th > 0");
    const double m = 1.0 + 2.0 * n_th;
    const double m2 = m * m;
    const double denom = m2 * m2 - 1.0;
    const double k = env_coth;
    const double bracket = k * k * (m2 * std::cosh(4.0 * xi) + 1.0) -
                           4.0 * (2.0 * n_th * (1.0 + n_th) + 1.0) * m * std::cosh(2.0 * xi) * k +
                           (4.0 * n_th * (1.0 + n_th) + 2.0) * m2;
    return bracket / denom * dGamma * dGamma;
}

double variance_bound(double info, long repetitions)
{
    if (repetitions < 1) throw DomainError("number of repetitions must be at least 1");
    if (!(info > 0.0) || !std::isfinite(info)) throw ZeroInformationError("variance bound needs positive information");
    return 1.0 / (static_cast<double>(repetitions) * info);
}

}  // namespace ohmprobe
