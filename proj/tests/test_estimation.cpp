#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ohmprobe/errors.hpp"
#include "ohmprobe/estimation.hpp"
#include "ohmprobe/optimize.hpp"
#include "oracles.hpp"

using namespace ohmprobe;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGoldenQfi = 5.3121809485;  // s=1, xi=1, n_th=0, T=100, omega0 t=1e3, w=0.25, alpha=1e-3

ProbeSpec sts(double xi, double n_th, double theta = 0.0)
{
    ProbeSpec p;
    p.xi = xi;
    p.n_th = n_th;
    p.theta = theta;
    return p;
}

GaussianState at(const Mat2& sigma, const Vec2& delta = Vec2::Zero()) { return {delta, sigma}; }

}  // namespace

TEST_SUITE("estimation") {

TEST_CASE("Gaussian QFI at reference points")
{
    const Mat2 th = 2.5 * Mat2::Identity();
    CHECK(qfi_gaussian(th, Mat2::Zero(), Vec2::Zero(), Vec2::Zero()) == 0.0);
    const double thermal = qfi_gaussian(th, Mat2::Identity(), Vec2::Zero(), Vec2::Zero());
    CHECK(thermal == doctest::Approx(13.0 / 78.0).epsilon(1e-14));
    // Independent check of the frozen value: fidelity oracle on nu(lambda) = 2.5 + (lambda - 1).
    const double oracle_value = qfi_fidelity_oracle(
        [](double x) { return at((2.5 + (x - 1.0)) * Mat2::Identity()); }, 1.0, 1e-3);
    CHECK(oracle_value == doctest::Approx(thermal).epsilon(1e-6));
    CHECK(thermal == doctest::Approx(0.16667).epsilon(1e-4));

    CHECK(qfi_gaussian(Mat2::Identity(), Mat2::Zero(), Vec2::Zero(), Vec2(1, 0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(qfi_gaussian(0.5 * Mat2::Identity(), Mat2::Identity(), Vec2::Zero(), Vec2::Zero()),
                    NearPureStateError);
}

TEST_CASE("fidelity oracle")
{
    const Mat2 s = make_dsts(sts(0.8, 0.4, 0.2)).sigma;
    CHECK(qfi_fidelity_oracle([&](double) { return at(s, Vec2(0.3, -1)); }, 2.0, 1e-3) == 0.0);
    CHECK(qfi_fidelity_oracle([](double x) { return at((2.5 + (x - 1.0)) * Mat2::Identity()); }, 1.0, 1e-3) ==
          doctest::Approx(0.16667).epsilon(1e-4));

    // Rotating, nearly pure squeezed state.
    Mat2 s0;
    s0 << std::exp(2.0), 0.0, 0.0, std::exp(-2.0);
    s0 *= (0.5 + 1e-3);
    auto family = [&](double x) {
        const Mat2 r = rotation(x);
        return at(r * s0 * r.transpose());
    };
    const double lambda = 0.4;
    const Mat2 r = rotation(lambda);
    Mat2 dr;
    dr << -std::sin(lambda), std::cos(lambda), -std::cos(lambda), -std::sin(lambda);
    const Mat2 sdot = dr * s0 * r.transpose() + r * s0 * dr.transpose();
    const double direct = qfi_gaussian(r * s0 * r.transpose(), sdot, Vec2::Zero(), Vec2::Zero());
    CHECK(qfi_fidelity_oracle(family, lambda, 1e-3) == doctest::Approx(direct).epsilon(1e-4));

    CHECK_THROWS_AS(qfi_fidelity_oracle(family, lambda, 0.0), DomainError);
}

TEST_CASE("cutoff QFI")
{
    const ProbeSpec p = sts(1.0, 0.0);
    const double strong = qfi_cutoff(p, {{1e-3, 1, 0.25}, 100}, 1e3).qfi;
    const double weak = qfi_cutoff(p, {{1e-8, 1, 0.25}, 100}, 1e3).qfi;
    CHECK(weak >= 0.0);
    CHECK(weak <= 1e-9 * strong);

    // Golden value: the long-double secular oracle first, then the frozen constant.
    oracle::Point pt;
    pt.xi = 1;
    const auto e = qfi_cutoff(p, oracle::env_of(pt, 0.25), 1e3);
    const double independent = static_cast<double>(oracle::secular_qfi(pt, 0.25L));
    CHECK(e.qfi == doctest::Approx(independent).epsilon(1e-9));
    CHECK(independent == doctest::Approx(kGoldenQfi).epsilon(1e-10));
    CHECK(e.qfi == doctest::Approx(kGoldenQfi).epsilon(1e-10));
    CHECK(e.qfi_scaled == e.qfi);
    CHECK(e.snr_h == doctest::Approx(0.0625 * e.qfi).epsilon(1e-15));
    CHECK(e.w == 0.25);
    CHECK_FALSE(e.fi.has_value());

    ProbeSpec displaced = p;
    displaced.n_c = 3.0;
    CHECK_THROWS_AS(qfi_cutoff(displaced, oracle::env_of(pt, 0.25), 1e3, EvolutionMode::secular_markov, 0.5),
                    UnsupportedConfiguration);
}

TEST_CASE("displacement contribution")
{
    const EnvironmentSpec env{{1e-3, 1, 0.25}, 100};
    ProbeSpec p = sts(1.0, 0.5, 0.3);
    CHECK(qfi_displacement_term(p, env, 1e3) == 0.0);

    p.n_c = 10.0;
    p.theta_d = (p.theta + kPi) / 2;
    const double at_pi = qfi_displacement_term(p, env, 1e3);
    p.theta_d = p.theta / 2;
    const double at_zero = qfi_displacement_term(p, env, 1e3);
    CHECK(at_pi >= at_zero);

    p.n_c = 20.0;
    CHECK(qfi_displacement_term(p, env, 1e3) == doctest::Approx(2 * at_zero).epsilon(1e-15));
}

TEST_CASE("homodyne Fisher information")
{
    CHECK(fi_homodyne_closed_form(3.0, 1.0, 1.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fi_homodyne_closed_form(200.0, 200.0, 0.3, 2.0) == 0.0);

    // Initial variance already at the thermal asymptote: nothing to learn.
    const EnvironmentSpec env{{1e-3, 1, 0.5}, 100};
    const ProbeSpec at_asymptote = sts(0.0, (thermal_coth(env, 1.0) - 1.0) / 2);
    const double f = fi_homodyne(at_asymptote, env, 1e3, 0.7);
    CHECK(f <= 1e-20 * qfi_cutoff(sts(0.0, 0.0), env, 1e3).qfi);

    ProbeSpec displaced = sts(1.0, 0.0);
    displaced.n_c = 1.0;
    CHECK_THROWS_AS(fi_homodyne(displaced, env, 1e3, 0.0), UnsupportedConfiguration);

    for (double s : {0.5, 1.0, 3.0}) {
        const ProbeSpec p = sts(1.0, 0.0, 0.8);
        const EnvironmentSpec e{{1e-3, s, 0.3}, 100};
        double best = -1, best_phi = 0;
        for (int k = 0; k < 180; ++k) {
            const double phi = kPi * k / 180;
            const double v = fi_homodyne(p, e, 1e3, phi);
            if (v > best) best = v, best_phi = phi;
        }
        const double target = (p.theta + kPi) / 2;
        CHECK(std::abs(std::remainder(2 * best_phi - p.theta - kPi, 2 * kPi)) <= 2 * kPi / 180 + 1e-12);
        CHECK(std::abs(best_phi - target) <= kPi / 180 + 1e-12);
    }
}

TEST_CASE("symmetric logarithmic derivative")
{
    const auto zero = sld(2.0 * Mat2::Identity(), Mat2::Zero(), Vec2(1, 2), Vec2::Zero());
    CHECK(zero.Phi.isZero(0.0));
    CHECK(zero.zeta.isZero(0.0));
    CHECK(zero.nu == 0.0);

    const auto iso = sld(2.5 * Mat2::Identity(), Mat2::Identity(), Vec2::Zero(), Vec2::Zero());
    CHECK(std::abs(iso.Phi(0, 1)) <= 1e-15);
    CHECK(iso.Phi(0, 0) == doctest::Approx(iso.Phi(1, 1)).epsilon(1e-14));
    CHECK(iso.Phi.trace() == doctest::Approx(13.0 / 78.0).epsilon(1e-12));

    // Weak coupling: eigenvectors of Phi along theta/2 and (theta + pi)/2.
    const double theta = 1.1;
    const ProbeSpec p = sts(1.0, 1.0, theta);
    const EnvironmentSpec env{{1e-4, 1, 0.5}, 100};
    const double lambda = 0.5, h = 1e-6;
    const GaussianState s = evolved_state(p, env, 1e3, EvolutionMode::secular_markov);
    const Mat2 sdot = (evolved_state(p, env.with_cutoff(lambda + h), 1e3, EvolutionMode::secular_markov).sigma -
                       evolved_state(p, env.with_cutoff(lambda - h), 1e3, EvolutionMode::secular_markov).sigma) /
                      (2 * h);
    const auto d = sld(s.sigma, sdot, s.delta, Vec2::Zero());
    Eigen::SelfAdjointEigenSolver<Mat2> eig(d.Phi);
    const Vec2 u(std::cos(theta / 2), std::sin(theta / 2)), v(std::cos((theta + kPi) / 2), std::sin((theta + kPi) / 2));
    for (int k = 0; k < 2; ++k) {
        const Vec2 e = eig.eigenvectors().col(k);
        CHECK(std::max(std::abs(e.dot(u)), std::abs(e.dot(v))) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("weak-coupling SLD coefficients")
{
    const EnvironmentSpec env{{1e-3, 1, 0.25}, 100};
    const auto flat = sld_weak_diag(sts(0.0, 0.0), env);
    CHECK(flat.c_low == doctest::Approx(0.5 * spectral_log_derivative(env.spectral, 1.0)).epsilon(1e-15));
    CHECK(flat.c_high == doctest::Approx(flat.c_low).epsilon(1e-15));
    CHECK(spectral_log_derivative(env.spectral, 1.0) == doctest::Approx(16.0).epsilon(1e-14));

    const auto sq = sld_weak_diag(sts(1.0, 0.0, 0.6), env);
    CHECK(sq.c_low / sq.c_high == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
    CHECK(sq.c_low / sq.c_high == doctest::Approx(0.018316).epsilon(1e-4));
    CHECK(sq.angle == doctest::Approx(0.3));
}

TEST_CASE("second-order weak-coupling QFI")
{
    CHECK(qfi_weak2(0.0, 3.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(qfi_weak2(0.0, 1.0, 0.3, 2.0) == 0.0);
    CHECK_THROWS_AS(qfi_weak2(1.0, 3.0, 0.0, 1.0), DomainError);
    CHECK(qfi_weak2(1.0, 3.0, 0.0, 0.0) == 0.0);

    for (double s : {0.5, 1.0, 3.0}) {
        const EnvironmentSpec env{{1e-4, s, sweet_spot_closed_form(s, 2)}, 100};
        const auto g = markov_gamma_t(env, 1.0, 1e3);
        const double h2 = qfi_weak2(1.0, thermal_coth(env, 1.0), g.Gamma, g.dGamma_dwc);
        CHECK(std::abs(h2 / qfi_cutoff(sts(1.0, 0.0), env, 1e3).qfi - 1.0) <= 0.01);
    }
    const EnvironmentSpec env{{1e-4, 1, 0.25}, 100};
    CHECK(thermal_coth(env, 1.0) == doctest::Approx(200.0016666638889).epsilon(1e-13));
    const auto g = markov_gamma_t(env, 1.0, 1e3);
    const double h2 = qfi_weak2(1.0, thermal_coth(env, 1.0), g.Gamma, g.dGamma_dwc);
    CHECK(std::abs(h2 / qfi_cutoff(sts(1.0, 0.0), env, 1e3, EvolutionMode::full).qfi - 1.0) <= 0.01);
}

TEST_CASE("fourth-order weak-coupling QFI")
{
    CHECK_THROWS_AS(qfi_weak4(1.0, 0.0, 10.0, 1.0), DomainError);
    // xi=0, n_th=1, coth=10: [10^2 (9+1) - 4*5*3*10 + (4*2+2)*9] / 80 = 490/80.
    CHECK(qfi_weak4(0.0, 1.0, 10.0, 1.0) == doctest::Approx(6.125).epsilon(1e-14));
    CHECK(qfi_weak4(0.0, 1.0, 10.0, 2.0) == doctest::Approx(4 * qfi_weak4(0.0, 1.0, 10.0, 1.0)).epsilon(1e-15));

    const EnvironmentSpec env{{1e-4, 1, 0.5}, 100};
    const auto g = markov_gamma_t(env, 1.0, 1e3);
    const double h4 = qfi_weak4(1.0, 2.0, thermal_coth(env, 1.0), g.dGamma_dwc);
    CHECK(std::abs(h4 / qfi_cutoff(sts(1.0, 2.0), env, 1e3).qfi - 1.0) <= 0.02);
    CHECK(std::abs(h4 / qfi_cutoff(sts(1.0, 2.0), env, 1e3, EvolutionMode::full).qfi - 1.0) <= 0.02);
}

TEST_CASE("variance bound")
{
    CHECK(variance_bound(1.0, 1) == 1.0);
    CHECK(variance_bound(1.0 / 6.0, 100) == doctest::Approx(0.06).epsilon(1e-14));
    CHECK(variance_bound(0.37, 2) == doctest::Approx(variance_bound(0.37, 1) / 2).epsilon(1e-15));
    CHECK_THROWS_AS(variance_bound(1.0, 0), DomainError);
    CHECK_THROWS_AS(variance_bound(0.0, 5), ZeroInformationError);
}

TEST_CASE("property: Fisher information never exceeds the QFI")
{
    std::mt19937_64 rng(41);
    int violations = 0;
    for (int k = 0; k < 1000; ++k) {
        const ProbeSpec p = sts(oracle::uniform(rng, 0, 2), oracle::uniform(rng, 0, 5), oracle::uniform(rng, 0, 2 * kPi));
        const EnvironmentSpec env{{oracle::log_uniform(rng, 1e-4, 1e-2), oracle::uniform(rng, 0.3, 4),
                                   oracle::log_uniform(rng, 0.03, 3)},
                                  oracle::log_uniform(rng, 1e-2, 1e2)};
        const double t = oracle::log_uniform(rng, 10, 1e4);
        const double phi = k % 4 == 0 ? optimal_phase(p, env, t).phi : oracle::uniform(rng, 0, kPi);
        const auto e = qfi_cutoff(p, env, t, EvolutionMode::secular_markov, phi);
        if (*e.fi > e.qfi * (1 + 1e-9)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("property: SLD reproduces the QFI")
{
    std::mt19937_64 rng(42);
    for (int k = 0; k < 300; ++k) {
        ProbeSpec p = sts(oracle::uniform(rng, 0, 2), oracle::uniform(rng, 0.05, 5), oracle::uniform(rng, 0, 2 * kPi));
        p.n_c = oracle::uniform(rng, 0, 5);
        p.theta_d = oracle::uniform(rng, 0, 2 * kPi);
        const GaussianState s = make_dsts(p);
        Mat2 sdot;
        sdot << oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1), 0, oracle::uniform(rng, -1, 1);
        sdot(1, 0) = sdot(0, 1);
        const Vec2 ddot(oracle::uniform(rng, -1, 1), oracle::uniform(rng, -1, 1));
        const auto d = sld(s.sigma, sdot, s.delta, ddot);
        const double from_sld = (sdot * d.Phi).trace() + ddot.dot(s.sigma.inverse() * ddot);
        const double h = qfi_gaussian(s.sigma, sdot, s.delta, ddot);
        // Rounding in the SLD solve grows with cond(sigma)^2 and with 1/(det sigma - 1/4).
        const double cond = s.sigma.squaredNorm() / s.sigma.determinant();
        const double tol = 1e-14 * cond * cond / (s.sigma.determinant() - 0.25);
        CHECK(std::abs(from_sld / h - 1) <= tol);
        CHECK(d.Phi(0, 1) == d.Phi(1, 0));
    }
}

TEST_CASE("property: homodyne FI depends on phi only through 2 phi - theta")
{
    std::mt19937_64 rng(43);
    for (int k = 0; k < 300; ++k) {
        const double theta = oracle::uniform(rng, 0, 2 * kPi), chi = oracle::uniform(rng, -kPi, kPi);
        const double xi = oracle::uniform(rng, 0, 2), n = oracle::uniform(rng, 0, 4), phi = oracle::uniform(rng, 0, kPi);
        const EnvironmentSpec env{{1e-3, oracle::uniform(rng, 0.5, 3), oracle::log_uniform(rng, 0.05, 3)},
                                  oracle::log_uniform(rng, 1e-2, 1e2)};
        const double a = fi_homodyne(sts(xi, n, theta), env, 1e3, phi);
        const double b = fi_homodyne(sts(xi, n, theta + 2 * chi), env, 1e3, phi + chi);
        CHECK(b == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("property: QFI of squeezed thermal probes is invariant under theta shifts")
{
    std::mt19937_64 rng(44);
    for (int k = 0; k < 200; ++k) {
        const double xi = oracle::uniform(rng, 0, 2), n = oracle::uniform(rng, 0, 4);
        const double theta = oracle::uniform(rng, 0, 2 * kPi), chi = oracle::uniform(rng, -kPi, kPi);
        const EnvironmentSpec env{{1e-3, oracle::uniform(rng, 0.5, 3), oracle::log_uniform(rng, 0.05, 3)},
                                  oracle::log_uniform(rng, 1e-2, 1e2)};
        const double t = oracle::log_uniform(rng, 10, 1e4);
        CHECK(qfi_cutoff(sts(xi, n, theta + chi), env, t).qfi ==
              doctest::Approx(qfi_cutoff(sts(xi, n, theta), env, t).qfi).epsilon(1e-10));
    }
}

TEST_CASE("property: QFI is affine in the coherent energy")
{
    std::mt19937_64 rng(45);
    for (int k = 0; k < 100; ++k) {
        ProbeSpec p = sts(oracle::uniform(rng, 0, 2), oracle::uniform(rng, 0, 3), oracle::uniform(rng, 0, 2 * kPi));
        p.theta_d = oracle::uniform(rng, 0, 2 * kPi);
        const EnvironmentSpec env{{1e-3, oracle::uniform(rng, 0.5, 3), oracle::log_uniform(rng, 0.05, 3)},
                                  oracle::log_uniform(rng, 1e-2, 1e2)};
        double term[3], qfi[3];
        const double ncs[3] = {1, 2, 4};
        for (int i = 0; i < 3; ++i) {
            p.n_c = ncs[i];
            term[i] = qfi_displacement_term(p, env, 1e3);
            qfi[i] = qfi_cutoff(p, env, 1e3).qfi;
        }
        // Residual of the line through the first two points at the third.
        CHECK(std::abs(term[2] - (term[1] + 2 * (term[1] - term[0]))) <= 1e-12 * std::abs(term[2]));
        CHECK(std::abs(qfi[2] - (qfi[1] + 2 * (qfi[1] - qfi[0]))) <= 1e-12 * std::abs(qfi[2]));
    }
}

TEST_CASE("property: more squeezing gives more information at the sweet spot")
{
    for (double s : {0.5, 1.0, 3.0}) {
        const EnvironmentSpec env{{1e-3, s, sweet_spot_closed_form(s, 2)}, 100};
        double previous = 0.0;
        for (double xi : {0.5, 1.0, 1.5, 2.0}) {
            const double h = qfi_cutoff(sts(xi, 0.0), env, 1e3).qfi;
            CHECK(h > previous);
            previous = h;
        }
    }
}

TEST_CASE("property: homodyne efficiency grows with thermal noise")
{
    for (double s : {0.5, 1.0, 3.0}) {
        const EnvironmentSpec env{{1e-3, s, sweet_spot_closed_form(s, 4)}, 100};
        double previous = 0.0;
        for (double n : {0.0, 1.0, 5.0, 10.0}) {
            const ProbeSpec p = sts(1.0, n);
            const auto e = qfi_cutoff(p, env, 1e3, EvolutionMode::secular_markov, optimal_phase(p, env, 1e3).phi);
            const double r = *e.fi / e.qfi;
            CHECK(r >= previous);
            previous = r;
        }
    }
}

}
