#include <doctest.h>

#include <cmath>

#include "hhlab/errors.hpp"
#include "hhlab/profiles.hpp"

using namespace hh;

namespace {
// max over the inner part of the support of |U_t - Lap U^m - |x|^sigma U^p|, relative to |U_t|
double pde_defect(const Profile& prof, double t, std::size_t cells) {
    const double rho = prof.support * std::pow(t, prof.coef.b);
    const auto g = RadialGrid::uniform(prof.exps.dim, 1.5 * rho, cells);
    const double dt = 1e-4 * t;
    const auto up = evaluate_selfsimilar(prof, t + dt, g);
    const auto dn = evaluate_selfsimilar(prof, t - dt, g);
    const auto u = evaluate_selfsimilar(prof, t, g);
    const auto lap = laplacian_of_power(u, prof.exps.m);
    const auto w = g->regularized_weights(prof.exps.sigma, 0);
    double worst = 0, scale = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double ut = (up.values[i] - dn.values[i]) / (2 * dt);
        scale = std::max(scale, std::abs(ut));
        if (g->centers()[i] > 0.7 * rho || g->centers()[i] < 0.1 * rho) continue;
        worst = std::max(worst, std::abs(ut - lap.values[i] - w[i] * std::pow(u.values[i], prof.exps.p)));
    }
    return worst / scale;
}
}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("forward profile below p_G") {
    const ExponentTriple e{2, 1.2, -1, 3};
    const auto prof = shoot(ProfileKind::Forward, e);
    CHECK(prof.coef.a == doctest::Approx(5.0 / 3));
    CHECK(prof.coef.b == doctest::Approx(4.0 / 3));
    CHECK(prof.support > 0);
    CHECK(ode_residual(prof) < 1e-4);
    for (double v : prof.f) CHECK(v >= 0);
    CHECK(prof.at(2 * prof.support) == 0.0);
    CHECK(prof.at(0) == doctest::Approx(prof.shoot_param));
}

TEST_CASE("exponential profile at p_G ties the spreading rate to the growth rate") {
    const ExponentTriple e{2, 1.5, -1, 3};
    const auto prof = shoot(ProfileKind::Exponential, e);
    CHECK(prof.coef.a > 0);
    CHECK(std::abs(2 * prof.coef.b - (e.m - 1) * prof.coef.a) <= 1e-12 * prof.coef.a);
    CHECK(prof.at(0) == doctest::Approx(1.0));
    CHECK(ode_residual(prof) < 1e-4);
}

TEST_CASE("backward profile between p_G and m") {
    const ExponentTriple e{2, 1.8, -1, 3};
    const auto prof = shoot(ProfileKind::Backward, e);
    CHECK(prof.coef.b == doctest::Approx(1.0 / 3));
    CHECK(ode_residual(prof) < 1e-4);
    for (double v : prof.f) CHECK(v >= 0);
}

TEST_CASE("Kaplan profile at p = m") {
    const ExponentTriple e{2, 2, -1, 3};
    const auto prof = shoot(ProfileKind::Kaplan, e);
    CHECK(prof.support > 0);
    CHECK(ode_residual(prof) < 1e-5);
    for (double v : prof.f) CHECK(v >= 0);
}

TEST_CASE("profiles outside their regime are refused") {
    CHECK_THROWS_AS(shoot(ProfileKind::Forward, {2, 1.8, -1, 3}), RegimeMismatch);
    CHECK_THROWS_AS(shoot(ProfileKind::Exponential, {2, 1.2, -1, 3}), RegimeMismatch);
    CHECK_THROWS_AS(shoot(ProfileKind::Backward, {2, 2.5, -1, 3}), RegimeMismatch);
    CHECK_THROWS_AS(shoot(ProfileKind::Kaplan, {2, 1.8, -1, 3}), RegimeMismatch);
    const auto kap = shoot(ProfileKind::Kaplan, {2, 2, -1, 3});
    CHECK_THROWS_AS(evaluate_selfsimilar(kap, 1, RadialGrid::uniform(3, 1, 10)), RegimeMismatch);
}

TEST_CASE("self-similar evaluation scales amplitude and support") {
    const auto prof = shoot(ProfileKind::Forward, {2, 1.2, -1, 3});
    const auto g = RadialGrid::uniform(3, 20 * prof.support, 20000);
    const auto u1 = evaluate_selfsimilar(prof, 1, g), u8 = evaluate_selfsimilar(prof, 8, g);
    CHECK(u8.values[0] / u1.values[0] == doctest::Approx(std::pow(8, prof.coef.a)).epsilon(1e-3));
    CHECK(u8.support_radius() / u1.support_radius() ==
          doctest::Approx(std::pow(8, prof.coef.b)).epsilon(0.05));
    CHECK_THROWS_AS(evaluate_selfsimilar(prof, 0, g), OutOfRange);
}

TEST_CASE("forward self-similar solution solves the discrete equation up to truncation error") {
    const auto prof = shoot(ProfileKind::Forward, {2, 1.2, -1, 3});
    const double d1 = pde_defect(prof, 2, 100), d2 = pde_defect(prof, 2, 200);
    CHECK(d1 < 0.05);
    CHECK(d2 < 0.6 * d1);
}

TEST_CASE("subsolution field agrees with pointwise values") {
    const ExponentTriple e{2, 1.8, -1, 3};
    const auto k = subsolution_constants(e, 1);
    const double A = 10 * k.threshold;
    const auto g = RadialGrid::uniform(3, 20, 300);
    const auto f = subsolution_field(e, A, 1, 0.5, g);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(f.values[i] == doctest::Approx(subsolution_value(e, A, 1, 0.5, g->centers()[i])));
    CHECK(f.linf() == doctest::Approx(A * std::pow(0.5, -*derive(e).alpha)).epsilon(1e-3));
    CHECK_THROWS_AS(subsolution_field(e, A, 1, 1, g), OutOfRange);
}

}
