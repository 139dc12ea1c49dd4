#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ohmprobe/optimize.hpp"
#include "oracles.hpp"

using namespace ohmprobe;

namespace {

constexpr double kPi = std::numbers::pi;

ProbeSpec sts(double xi, double n_th, double theta = 0.0)
{
    ProbeSpec p;
    p.xi = xi;
    p.n_th = n_th;
    p.theta = theta;
    return p;
}

double weak2_at(double s, double w, double alpha = 1e-3)
{
    const EnvironmentSpec env{{alpha, s, w}, 100};
    const auto g = markov_gamma_t(env, 1.0, 1e3);
    return qfi_weak2(1.0, thermal_coth(env, 1.0), g.Gamma, g.dGamma_dwc);
}

double weak4_at(double s, double w, double alpha = 1e-3)
{
    const EnvironmentSpec env{{alpha, s, w}, 100};
    return qfi_weak4(1.0, 2.0, thermal_coth(env, 1.0), markov_gamma_t(env, 1.0, 1e3).dGamma_dwc);
}

bool has(const Warnings& w, WarningCode code)
{
    for (const auto& x : w)
        if (x.code == code) return true;
    return false;
}

}  // namespace

TEST_SUITE("optimize") {

TEST_CASE("closed-form sweet spots")
{
    CHECK(sweet_spot_closed_form(1, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(sweet_spot_closed_form(1, 4) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sweet_spot_closed_form(3, 2) == doctest::Approx((4 - std::sqrt(8.0)) / 8).epsilon(1e-15));
    CHECK(sweet_spot_closed_form(3, 2) == doctest::Approx(0.146447).epsilon(1e-5));
    CHECK(sweet_spot_closed_form(0.5, 4) == doctest::Approx(1 / (0.5 + std::sqrt(0.5))).epsilon(1e-15));
    CHECK(sweet_spot_closed_form(0.5, 4) == doctest::Approx(0.828427).epsilon(1e-6));
    CHECK_THROWS_AS(sweet_spot_closed_form(1, 3), DomainError);
}

TEST_CASE("numeric sweet spots")
{
    CHECK(std::abs(sweet_spot_numeric([](double w) { return weak2_at(1, w); }).w_max - 0.25) <= 1e-4);
    CHECK(std::abs(sweet_spot_numeric([](double w) { return -(w - 0.3) * (w - 0.3); }).w_max - 0.3) <= 1e-6);
    CHECK(std::abs(sweet_spot_numeric([](double w) { return weak4_at(3, w); }).w_max - 0.211325) <= 1e-4);
}

TEST_CASE("boundary and multimodal landscapes are flagged")
{
    Warnings w;
    const auto edge = sweet_spot_numeric([](double x) { return x; }, {0.1, 2.0}, &w);
    CHECK(edge.boundary);
    CHECK(edge.w_max == 2.0);
    CHECK(has(w, WarningCode::boundary_maximum));

    w.clear();
    auto twin = [](double x) {
        return std::exp(-std::pow(std::log(x / 0.05), 2) * 4) + 0.95 * std::exp(-std::pow(std::log(x / 2.0), 2) * 4);
    };
    const auto two = sweet_spot_numeric(twin, {}, &w);
    CHECK(two.multimodal);
    CHECK(two.w_max == doctest::Approx(0.05).epsilon(1e-4));
    CHECK(has(w, WarningCode::multimodal_landscape));
}

TEST_CASE("optimal homodyne phase")
{
    const EnvironmentSpec env{{1e-3, 1, 0.3}, 100};
    CHECK(optimal_phase(sts(1.0, 0.0, 0.0), env, 1e3).phi == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(optimal_phase(sts(1.0, 0.0, kPi / 2), env, 1e3).phi == doctest::Approx(3 * kPi / 4).epsilon(1e-12));
    Warnings w;
    const auto flat = optimal_phase(sts(0.0, 1.0), env, 1e3, &w);
    CHECK(flat.flat);
    CHECK(has(w, WarningCode::flat_landscape));
}

TEST_CASE("optimal squeezing fraction")
{
    const double t = 1e3, w = 0.25;
    for (double n : {1.0, 10.0, 100.0, 1000.0}) {
        const auto hot = optimal_squeezing_fraction(n, 0.0, {{1e-3, 1, w}, 100}, t, w);
        CHECK(hot.f_sq == 1.0);
    }
    const auto cold = optimal_squeezing_fraction(1e3, 0.2, {{1e-3, 1, w}, 0.01}, t, w);
    CHECK(cold.f_sq < 1.0);
    CHECK(cold.f_sq > 0.0);

    Warnings warnings;
    const auto tiny = optimal_squeezing_fraction(1e-6, 0.0, {{1e-3, 1, w}, 100}, t, w, &warnings);
    CHECK(tiny.flat);
    CHECK(tiny.f_sq == 1.0);
}

TEST_CASE("trade-off curves")
{
    const EnvironmentSpec env{{1e-3, 1, 1}, 100};
    std::vector<ProbeSpec> by_xi;
    for (double xi : {0.0, 1.0, 2.0, 3.0, 4.0}) by_xi.push_back(sts(xi, 0.0));
    const auto a = tradeoff_curve(by_xi, env, 1e3);
    for (std::size_t k = 1; k < a.size(); ++k) {
        CHECK(a[k].snr_f_max >= a[k - 1].snr_f_max);
        CHECK(a[k].r_max >= a[k - 1].r_max);
    }
    CHECK(a[0].r_max <= 1.0);

    std::vector<ProbeSpec> by_n;
    for (double n : {0.0, 0.5, 1.0, 5.0, 10.0}) by_n.push_back(sts(1.0, n));
    const auto b = tradeoff_curve(by_n, env, 1e3, nullptr, 3);
    for (std::size_t k = 1; k < b.size(); ++k) {
        CHECK(b[k].r_max >= b[k - 1].r_max);
        CHECK(b[k].snr_f_max <= b[k - 1].snr_f_max);
    }
    for (const auto& q : b) CHECK(q.fi <= q.qfi * (1 + 1e-9));
}

TEST_CASE("property: numeric sweet spots of the weak-coupling QFI match the closed forms")
{
    for (double s : {0.5, 1.0, 3.0}) {
        CHECK(std::abs(sweet_spot_numeric([&](double w) { return weak2_at(s, w); }).w_max - sweet_spot_closed_form(s, 2)) <=
              1e-4);
        CHECK(std::abs(sweet_spot_numeric([&](double w) { return weak4_at(s, w); }).w_max - sweet_spot_closed_form(s, 4)) <=
              1e-4);
    }
}

TEST_CASE("property: full QFI sweet spots approach the weak-coupling ones")
{
    for (double s : {0.5, 1.0, 3.0}) {
        auto spot = [&](double alpha, const ProbeSpec& p) {
            return sweet_spot_numeric([&](double w) { return qfi_cutoff(p, {{alpha, s, w}, 100}, 1e3).qfi; }).w_max;
        };
        const double w2 = sweet_spot_closed_form(s, 2), w4 = sweet_spot_closed_form(s, 4);
        CHECK(std::abs(spot(1e-4, sts(1.0, 0.0)) - w2) < std::abs(spot(1e-3, sts(1.0, 0.0)) - w2));
        CHECK(std::abs(spot(1e-4, sts(1.0, 0.0)) - w2) <= 1e-2);
        for (double n : {1.0, 2.0}) CHECK(std::abs(spot(1e-4, sts(1.0, n)) - w4) <= 1e-2);
    }
}

TEST_CASE("property: homodyne sweet spot approaches the fourth-order one for any initial state")
{
    for (double s : {0.5, 1.0, 3.0}) {
        for (const ProbeSpec& p : {sts(1.0, 0.0), sts(0.5, 1.0, 0.7), sts(2.0, 3.0, 2.0)}) {
            const double phi = (p.theta + kPi) / 2;
            const double w = sweet_spot_numeric([&](double x) {
                                 return fi_homodyne(p, {{1e-5, s, x}, 100}, 1e3, phi);
                             }).w_max;
            CAPTURE(s);
            CAPTURE(p.n_th);
            CHECK(std::abs(w - sweet_spot_closed_form(s, 4)) <= 1e-2);
        }
    }
}

TEST_CASE("property: refinement never falls below the coarse maximum")
{
    std::mt19937_64 rng(51);
    for (int k = 0; k < 200; ++k) {
        const double c1 = oracle::log_uniform(rng, 1e-2, 5), c2 = oracle::log_uniform(rng, 1e-2, 5);
        const double a1 = oracle::uniform(rng, 0.2, 1), a2 = oracle::uniform(rng, 0.2, 1);
        const double k1 = oracle::uniform(rng, 0.5, 30), k2 = oracle::uniform(rng, 0.5, 30);
        auto f = [&](double x) {
            return a1 * std::exp(-k1 * std::pow(std::log(x / c1), 2)) + a2 * std::exp(-k2 * std::pow(std::log(x / c2), 2)) +
                   0.01 * std::sin(7 * std::log(x));
        };
        double coarse = -1e300;
        const Bracket b;
        for (int i = 0; i < 200; ++i) {
            const double x = i == 0 ? b.lo : i == 199 ? b.hi : std::exp(std::log(b.lo) + (std::log(b.hi) - std::log(b.lo)) * i / 199);
            coarse = std::max(coarse, f(x));
        }
        const auto spot = sweet_spot_numeric(f);
        CHECK(spot.value >= coarse);
        CHECK(spot.value == doctest::Approx(f(spot.w_max)).epsilon(1e-15));
    }
}

}
