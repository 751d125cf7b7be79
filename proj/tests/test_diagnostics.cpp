#include <doctest.h>

#include <cmath>

#include "hhlab/diagnostics.hpp"
#include "hhlab/errors.hpp"

using namespace hh;

namespace {
RadialField bump(const GridPtr& g, double amp, double radius) {
    RadialField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double z = 1 - std::pow(g->centers()[i] / radius, 2);
        f.values[i] = z > 0 ? amp * z * z : 0.0;
    }
    return f;
}
}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("rate fit recovers exact laws") {
    std::vector<double> t, pw, ex;
    for (int i = 1; i <= 30; ++i) {
        t.push_back(i * 0.5);
        pw.push_back(3.0 * std::pow(i * 0.5, 1.7));
        ex.push_back(0.2 * std::exp(0.35 * i * 0.5));
    }
    const auto a = rate_fit(t, pw, FitModel::PowerLaw, 1, 15);
    CHECK(std::abs(a.fitted - 1.7) < 1e-10);
    CHECK(std::abs(a.intercept - std::log(3.0)) < 1e-10);
    CHECK(a.conclusive());
    const auto b = rate_fit(t, ex, FitModel::Exponential, 0, 15);
    CHECK(std::abs(b.fitted - 0.35) < 1e-10);
    CHECK_THROWS_AS(rate_fit(t, pw, FitModel::PowerLaw, 100, 200), EmptyWindow);
}

TEST_CASE("energy signs") {
    const auto g = RadialGrid::uniform(3, 20, 400);
    const ExponentTriple e{2, 3, -1, 3};
    CHECK(energy(bump(g, 0.01, 1), e).total > 0);
    CHECK(energy(bump(g, 10, 4), e).total < 0);
    // at p = m the potential and Dirichlet parts scale alike, a wide bump wins
    const ExponentTriple k{2, 2, -1, 3};
    CHECK(energy(bump(g, 1, 10), k).total < 0);
    const auto r = energy(bump(g, 1, 2), e);
    CHECK(r.total == doctest::Approx(r.dirichlet - r.potential));
}

TEST_CASE("blow-up functional carries the Kaplan pairing only when asked") {
    const auto g = RadialGrid::uniform(3, 5, 100);
    const auto u = bump(g, 1, 2);
    const ExponentTriple e{2, 2, -1, 3};
    CHECK_FALSE(blowup_functional(u, e).kaplan.has_value());
    const auto one = RadialField(g, std::vector<double>(g->size(), 1.0));
    const auto b = blowup_functional(u, e, &one);
    REQUIRE(b.kaplan);
    CHECK(*b.kaplan == doctest::Approx(u.l1()));
    CHECK(b.I == doctest::Approx(std::pow(u.lq(3), 3)));
}

TEST_CASE("elementary inequality ratio") {
    CHECK(lemma35_ratio(2, 3, 1, 0.7, 0.7) == 0.0);
    CHECK(lemma35_ratio(1, 1, 0, 0.3, 2.0) == doctest::Approx(1.0));
    const double c1 = lemma35_test(2, 2.5, 1, 20000, 1), c2 = lemma35_test(2, 2.5, 1, 40000, 1);
    CHECK(std::isfinite(c1));
    CHECK(c2 >= c1);
    CHECK(c2 < 1.05 * c1);
    CHECK(lemma35_scale_deviation(2.5, 1.75, 0.5, 500, 2) <= 1e-12);
    CHECK(std::abs(lemma35_exponent_sum(3.25, 1.75, 1.5)) <= 1e-12);
    CHECK_THROWS_AS(lemma35_test(0.5, 2, 1, 10, 1), OutOfRange);
}

TEST_CASE("interpolation ratio") {
    const ExponentTriple e{2, 1.8, -1, 3};
    const auto c = ckn_instantiation(e, 1, 1);
    const auto g = RadialGrid::uniform(3, 10, 400);
    CHECK(ckn_ratio(c, RadialField(g)) == 0.0);
    const auto z = ckn_trial(g, 3, 2);
    auto z5 = z;
    for (double& v : z5.values) v *= 5;
    CHECK(ckn_ratio(c, z5) == doctest::Approx(ckn_ratio(c, z)).epsilon(1e-10));
    CknParams bad;
    bad.a = 0.5;
    bad.gamma1 = 0.5;
    bad.gamma2 = 0;
    bad.gamma3 = 0;
    CHECK_THROWS_AS(ckn_ratio(bad, z), ConditionsFail);
    const auto lo = ckn_lambda_lower(c, g, 4), hi = ckn_lambda_lower(c, g, 12);
    CHECK(lo.lambda_lower > 0);
    CHECK(hi.lambda_lower >= lo.lambda_lower * (1 - 1e-12));
    CHECK(hi.trials == 72);
}

TEST_CASE("preconditions of the bound monitors") {
    const auto g = RadialGrid::uniform(3, 10, 100);
    const ExponentTriple e{2, 3, -1, 3};
    RunOptions o;
    o.horizon = 0.05;
    const auto r = run(make_problem(e, 0, bump(g, 0.1, 2)), o);
    CHECK_THROWS_AS(blowup_bound_check(r, e), PreconditionViolated);
    const auto kap = shoot(ProfileKind::Kaplan, {2, 2, -1, 3});
    CHECK_THROWS_AS(kaplan_monitor(r, kap), RegimeMismatch);
    CHECK_THROWS_AS(selfsim_convergence(r, kap), RegimeMismatch);
}

TEST_CASE("subsolution residual is nonpositive above the amplitude threshold") {
    const ExponentTriple e{2, 1.8, -1, 3};
    const double A = 10 * subsolution_constants(e, 1).threshold;
    const auto k = subsolution_constants(e, A);
    const double extent = 1.5 * std::sqrt(k.a_sq) * std::pow(0.5, -k.beta);
    const auto res = subsolution_residual(e, A, 1, 0.5, RadialGrid::uniform(3, extent, 2000), 1e-6);
    CHECK(res.dt_scale > 0);
    CHECK(res.violation <= 1e-3);
    CHECK(res.support_max < 0);
    CHECK_THROWS_AS(subsolution_residual(e, A, 1, 0.5, RadialGrid::uniform(3, extent, 100), 0.6),
                    OutOfRange);
}

}
