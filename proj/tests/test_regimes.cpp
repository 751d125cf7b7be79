#include <doctest.h>

#include <boost/rational.hpp>
#include <cmath>
#include <random>

#include "hhlab/errors.hpp"
#include "hhlab/regimes.hpp"

using namespace hh;
using Q = boost::rational<long long>;

namespace {
double d(const Q& q) { return double(q.numerator()) / double(q.denominator()); }

ExponentTriple random_triple(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0, 1);
    const int dim = 1 + int(U(rng) * 5);
    const double lo = std::max(-2.0, -double(dim));
    return validate(1.05 + 3 * U(rng), 1.05 + 5 * U(rng), lo + (0.01 + 0.98 * U(rng)) * -lo, dim);
}
}  // namespace

TEST_SUITE("regimes") {

TEST_CASE("worked exponents match exact rationals") {
    // m = 2, sigma = -1, N = 3
    const Q m(2), s(-1), n(3);
    const Q pg = 1 - s * (m - 1) / 2, pf = m + (s + 2) / n;
    const auto k = derive(ExponentTriple{2, 1.8, -1, 3});
    CHECK(k.p_g == doctest::Approx(d(pg)).epsilon(1e-15));
    CHECK(k.p_f == doctest::Approx(d(pf)).epsilon(1e-15));
    CHECK(pg == Q(3, 2));
    CHECK(pf == Q(7, 3));

    const Q r0 = n * (Q(3) - m) / (s + 2) - 1;
    CHECK(std::abs(derive(ExponentTriple{2, 3, -1, 3}).r0 - d(r0)) < 1e-12);

    const Q p(6, 5);
    const Q a = (s + 2) / (2 * (p - pg)), b = (m - p) / (2 * (p - pg));
    const auto k12 = derive(ExponentTriple{2, 1.2, -1, 3});
    REQUIRE(k12.alpha_star);
    REQUIRE(k12.beta_star);
    CHECK(-a == Q(5, 3));
    CHECK(-b == Q(4, 3));
    CHECK(std::abs(*k12.alpha_star - d(-a)) < 1e-12);
    CHECK(std::abs(*k12.beta_star - d(-b)) < 1e-12);

    // beta = 1/3 at p = 1.8
    const auto k18 = derive(ExponentTriple{2, 1.8, -1, 3});
    CHECK(std::abs(*k18.beta - 1.0 / 3) < 1e-12);
}

TEST_CASE("classification examples and closed boundaries") {
    CHECK(classify({2, 1.2, -1, 3}).tag == RegimeTag::GlobalAllData);
    CHECK(classify({2, 1.8, -1, 3}).tag == RegimeTag::BlowUpAllData);
    CHECK(classify({2, 3, -1, 3}).tag == RegimeTag::Conditional);
    CHECK(classify({2, 1.5, -1, 3}).tag == RegimeTag::GlobalAllData);
    CHECK(classify({2, 7.0 / 3, -1, 3}).tag == RegimeTag::BlowUpAllData);
    CHECK(classify({2, 2 + 1 / 3.0, -1, 3}).tag == RegimeTag::BlowUpAllData);
    CHECK(classify({2, 7.0 / 3 + 1e-9, -1, 3}).tag == RegimeTag::Conditional);
}

TEST_CASE("no backward exponents at p_G") {
    const auto k = derive(ExponentTriple{2, 1.5, -1, 3});
    CHECK_FALSE(k.alpha.has_value());
    CHECK_FALSE(k.beta.has_value());
    CHECK_FALSE(k.alpha_star.has_value());
}

TEST_CASE("comparison thresholds by dimension") {
    CHECK(classify({2, 1.5, -1, 3}).comparison == ComparisonTag::Unconditional);
    CHECK(classify({2, 1.4, -1, 3}).comparison == ComparisonTag::NeedsPositivityNearOrigin);
    // N = 2: strict at p_G
    CHECK(classify({2, 1.5, -1, 2}).comparison == ComparisonTag::NeedsPositivityNearOrigin);
    CHECK(classify({2, 1.6, -1, 2}).comparison == ComparisonTag::Unconditional);
    // N = 1: threshold 1 - sigma (m - 1) = 1.5 at sigma = -0.5, strict
    CHECK(classify({2, 1.5, -0.5, 1}).comparison == ComparisonTag::NeedsPositivityNearOrigin);
    CHECK(classify({2, 1.6, -0.5, 1}).comparison == ComparisonTag::Unconditional);
}

TEST_CASE("validate reports the offending field") {
    auto field = [](double m, double p, double s, double n) {
        try {
            validate(m, p, s, n);
        } catch (const OutOfRange& e) {
            return e.field();
        }
        return std::string();
    };
    CHECK(field(1.0, 2, -1, 3) == "m");
    CHECK(field(2, 1.0, -1, 3) == "p");
    CHECK(field(2, 2, -1, 2.5) == "dim");
    CHECK(field(2, 2, -1.5, 1) == "sigma");
    CHECK(field(2, 2, 0.0, 3) == "sigma");
    CHECK(field(2, 2, -2.0, 3) == "sigma");
    CHECK(field(2, 2, -1, 3).empty());
}

TEST_CASE("exponent ordering and self-similarity identities over random triples") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto e = random_triple(rng);
        const auto k = derive(e);
        CHECK(1 < k.p_g);
        CHECK(k.p_g < e.m);
        CHECK(e.m < k.p_f);
        if (k.alpha) {
            const double a = *k.alpha, b = *k.beta;
            CHECK(std::abs((a + 1) - (a * e.m - 2 * b)) <= 1e-10 * std::max(1.0, std::abs(a)));
            CHECK(std::abs((a + 1) - (a * e.p + e.sigma * b)) <= 1e-10 * std::max(1.0, std::abs(a)));
        }
    }
}

TEST_CASE("interpolation parameter map, worked case") {
    const ExponentTriple e{2, 1.8, -1, 3};
    const auto x = prop32_exponents(e, 1, 1);
    CHECK(x.omega_r == doctest::Approx(4.4 / 7).epsilon(1e-13));
    CHECK(x.mu_r == doctest::Approx(3.2 / 7).epsilon(1e-13));
    CHECK(x.a == doctest::Approx(3 / 2.8 * 4.4 / 7).epsilon(1e-13));
    CHECK(std::abs(x.a + x.one_minus_a - 1) < 1e-12);
    CHECK(x.one_minus_nu_r1 == doctest::Approx(-0.6 / 2.6).epsilon(1e-13));
    CHECK(one_minus_nu(e, 1, 1) == doctest::Approx(-0.6 / 2.6).epsilon(1e-13));
    CHECK(ckn_check(ckn_instantiation(e, 1, 1), 3).all());
}

TEST_CASE("omega is exactly one at r1 = r0 above p_F") {
    const ExponentTriple e{2, 3, -1, 3};
    const double r0 = derive(e).r0;
    const auto x = prop32_exponents(e, r0, r0);
    CHECK(x.omega_r == 1.0);
    CHECK_FALSE(x.nu_r.has_value());
    CHECK_THROWS_AS(prop32_exponents(e, r0 - 0.1, r0), IndexBelowCritical);
    CHECK_THROWS_AS(prop32_exponents(e, r0, r0 - 0.1), IndexBelowCritical);
}

TEST_CASE("parameter map passes every condition on random samples") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 1000; ++i) {
        const auto e = random_triple(rng);
        const double r1 = derive(e).rc + 2 * U(rng);
        const double r = r1 + 2 * U(rng);
        const auto x = prop32_exponents(e, r1, r);
        CHECK(ckn_check(ckn_instantiation(e, r1, r), e.dim).all());
        CHECK(x.a > 0);
        CHECK(x.a < 1);
        CHECK(std::abs(x.a + x.one_minus_a - 1) < 1e-12);
    }
}

TEST_CASE("constructed condition violations are reported") {
    CknParams c;  // q = 2 throughout
    c.a = 1;
    c.q1 = 1;  // 1/q1 = 1 > 1/q2 = 1/2
    c.gamma1 = 3 * (1.0 / 2 - 1.0 / 3 - 1);  // keeps the balance at N = 3
    auto rep = ckn_check(c, 3);
    CHECK_FALSE(rep.holds[4]);

    CknParams w;
    w.a = 0.5;
    w.gamma1 = 0.5;
    w.gamma2 = 0;
    w.gamma3 = 0;
    CHECK_FALSE(ckn_check(w, 3).holds[3]);
}

TEST_CASE("subsolution constants") {
    const ExponentTriple e{2, 1.8, -1, 3};
    const auto k = subsolution_constants(e, 2.0);
    CHECK(k.beta == doctest::Approx(1.0 / 3));
    CHECK(k.z0 == doctest::Approx(0.1));
    CHECK(k.a_sq == doctest::Approx(12.0));
    CHECK_FALSE(k.satisfied);
    CHECK(subsolution_constants(e, 2 * k.threshold).satisfied);
    CHECK_FALSE(subsolution_constants(e, 0.5 * k.threshold).satisfied);
    CHECK_THROWS_AS(subsolution_constants({2, 1.2, -1, 3}, 1), WrongRegime);
    CHECK_THROWS_AS(subsolution_constants({2, 2.5, -1, 3}, 1), WrongRegime);
}

TEST_CASE("interpolation exponents sum to one") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    int checked = 0;
    while (checked < 500) {
        const auto e = random_triple(rng);
        const auto k = derive(e);
        if (!(e.p > k.p_f)) continue;
        const double r = k.r0 + 0.01 + 5 * U(rng);
        const double th = gn_theta(e, r), om = gn_one_minus_theta(e, r);
        CHECK(th > 0);
        CHECK(th < 1);
        CHECK(std::abs(th + om - 1) < 1e-12);
        ++checked;
    }
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(M_PI));
    CHECK(unit_ball_volume(3) == doctest::Approx(4 * M_PI / 3));
}

}
