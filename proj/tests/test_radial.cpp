#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "hhlab/errors.hpp"
#include "hhlab/radial.hpp"
#include "hhlab/regimes.hpp"

using namespace hh;

TEST_SUITE("radial") {

TEST_CASE("integral of one over the unit ball") {
    for (int n = 1; n <= 4; ++n) {
        const auto g = RadialGrid::uniform(n, 1.0, 37);
        RadialField one(g, std::vector<double>(g->size(), 1.0));
        const double wn = std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1);
        CHECK(weighted_integral(one, 1, 0) == doctest::Approx(wn).epsilon(1e-13));
        // singular weight integrates exactly, no quadrature error at the origin
        const double s = -0.7;
        CHECK(weighted_integral(one, 1, s) == doctest::Approx(n * wn / (n + s)).epsilon(1e-13));
        CHECK(std::accumulate(g->volumes().begin(), g->volumes().end(), 0.0) ==
              doctest::Approx(wn).epsilon(1e-13));
    }
    const auto g = RadialGrid::uniform(1, 1.0, 10);
    CHECK_THROWS_AS(g->singular_weights(-1.0), WeightNotIntegrable);
}

TEST_CASE("graded grid") {
    const auto g = RadialGrid::graded(3, 100, 50, 1.05);
    const auto& e = g->edges();
    CHECK(e.front() == 0.0);
    CHECK(e.back() == 100.0);
    for (std::size_t i = 2; i + 1 < e.size(); ++i)
        CHECK((e[i + 1] - e[i]) / (e[i] - e[i - 1]) == doctest::Approx(1.05).epsilon(1e-9));
    CHECK_THROWS_AS(RadialGrid::graded(3, 1, 10, 0.9), OutOfRange);
    CHECK_THROWS_AS(RadialGrid::from_edges(3, {0, 1, 0.5}), OutOfRange);
}

TEST_CASE("regularized weights") {
    const auto g = RadialGrid::uniform(3, 2.0, 40);
    const auto w0 = g->regularized_weights(-1, 0.0);
    const auto ws = g->singular_weights(-1);
    for (std::size_t i = 0; i < g->size(); ++i) CHECK(w0[i] == doctest::Approx(ws[i] / g->volumes()[i]));
    // positive eta caps the potential at eta^sigma and lowers every average
    const auto w1 = g->regularized_weights(-1, 0.1);
    for (std::size_t i = 0; i < g->size(); ++i) {
        CHECK(w1[i] <= w0[i]);
        CHECK(w1[i] <= 10.0 + 1e-12);
    }
}

TEST_CASE("Laplacian of a Barenblatt square is second order in one dimension") {
    // f = (C - k x^2)_+ , (f^2)'' = -4 k C + 12 k^2 x^2 inside the support
    const double C = 0.6, k = 1.0 / 24;
    const double front = std::sqrt(C / k);
    auto err = [&](std::size_t n) {
        const auto g = RadialGrid::uniform(1, 1.5 * front, n);
        RadialField f(g);
        for (std::size_t i = 0; i < n; ++i) f.values[i] = std::max(C - k * std::pow(g->centers()[i], 2), 0.0);
        const auto lap = laplacian_of_power(f, 2);
        double e = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const double x = g->centers()[i];
            if (x > 0.8 * front) break;
            e = std::max(e, std::abs(lap.values[i] - (-4 * k * C + 12 * k * k * x * x)));
        }
        return e;
    };
    const double e1 = err(200), e2 = err(400);
    CHECK(e1 < 1e-3);
    CHECK(e2 < e1 / 3.5);
}

TEST_CASE("Laplacian conserves mass and pairs with the gradient form") {
    const auto g = RadialGrid::graded(3, 5, 60, 1.03);
    std::vector<double> u(g->size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::exp(-g->centers()[i]) * (1 + 0.3 * std::sin(7.0 * i));
    std::vector<double> lap;
    g->laplacian(u, lap);
    double total = 0, pairing = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        total += g->volumes()[i] * lap[i];
        pairing += g->volumes()[i] * u[i] * lap[i];
    }
    CHECK(std::abs(total) < 1e-12);
    CHECK(pairing == doctest::Approx(-g->grad_sq(u)).epsilon(1e-12));
}

TEST_CASE("norms") {
    const auto g = RadialGrid::uniform(3, 1.0, 100);
    RadialField f(g, std::vector<double>(100, 2.0));
    const double vol = 4 * M_PI / 3;
    CHECK(f.l1() == doctest::Approx(2 * vol));
    CHECK(f.lq(2) == doctest::Approx(2 * std::sqrt(vol)));
    CHECK(f.linf() == 2.0);
    CHECK(f.nonnegative());
    f.values[70] = -1;
    CHECK_FALSE(f.nonnegative());
    RadialField h(g);
    h.values[30] = 1;
    CHECK(h.support_radius() == doctest::Approx(g->edges()[31]));
}

TEST_CASE("field text round trip is exact") {
    const auto g = RadialGrid::graded(2, 3.0, 25, 1.1);
    RadialField f(g);
    for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = std::exp(-0.37 * i) / 3.0;
    std::stringstream ss;
    write_field(ss, f, "abc123");
    std::string hash;
    const auto back = read_field(ss, &hash);
    CHECK(hash == "abc123");
    CHECK(back.grid->dim() == 2);
    CHECK(back.values == f.values);
    CHECK(back.grid->edges() == g->edges());
}

}
