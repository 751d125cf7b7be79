#include "hhlab/regimes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhlab/errors.hpp"

namespace hh {

bool on_boundary(double p, double boundary) {
    return std::abs(p - boundary) <= kBoundarySnap * std::max(1.0, std::abs(boundary));
}

ExponentTriple validate(double m, double p, double sigma, double dim) {
    if (!(m > 1.0) || !std::isfinite(m)) throw OutOfRange("m");
    if (!(p > 1.0) || !std::isfinite(p)) throw OutOfRange("p");
    if (!(dim >= 1.0) || dim != std::floor(dim) || dim > 1e6) throw OutOfRange("dim");
    const double lower = std::max(-2.0, -dim);
    if (!(sigma > lower && sigma < 0.0)) throw OutOfRange("sigma");
    return ExponentTriple{m, p, sigma, static_cast<int>(dim)};
}

double unit_ball_volume(int dim) {
    const double n = dim;
    return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

DerivedConstants derive(const ExponentTriple& e) {
    const double m = e.m, p = e.p, s = e.sigma, n = e.dim;
    DerivedConstants d;
    d.p_g = 1.0 - s * (m - 1.0) / 2.0;
    d.p_f = m + (s + 2.0) / n;
    d.r0 = n * (p - m) / (s + 2.0) - 1.0;
    d.rc = std::max(d.r0, 0.0);
    if (!on_boundary(p, d.p_g)) {
        d.alpha = (s + 2.0) / (2.0 * (p - d.p_g));
        d.beta = (m - p) / (2.0 * (p - d.p_g));
        if (p < d.p_g) {
            d.alpha_star = -*d.alpha;
            d.beta_star = -*d.beta;
        }
    }
    if (e.dim >= 3) {
        d.uniq_threshold = d.p_g;
        d.uniq_strict = false;
    } else if (e.dim == 2) {
        d.uniq_threshold = d.p_g;
        d.uniq_strict = true;
    } else {
        d.uniq_threshold = 1.0 - s * (m - 1.0);
        d.uniq_strict = true;
    }
    d.omega_n = unit_ball_volume(e.dim);
    return d;
}

Regime classify(const ExponentTriple& e) {
    const DerivedConstants d = derive(e);
    Regime r{};
    if (e.p <= d.p_g || on_boundary(e.p, d.p_g))
        r.tag = RegimeTag::GlobalAllData;
    else if (e.p <= d.p_f || on_boundary(e.p, d.p_f))
        r.tag = RegimeTag::BlowUpAllData;
    else
        r.tag = RegimeTag::Conditional;

    const bool at = on_boundary(e.p, d.uniq_threshold);
    const bool above = e.p > d.uniq_threshold && !at;
    const bool ok = above || (at && !d.uniq_strict);
    r.comparison = ok ? ComparisonTag::Unconditional : ComparisonTag::NeedsPositivityNearOrigin;
    return r;
}

std::string to_string(RegimeTag t) {
    switch (t) {
        case RegimeTag::GlobalAllData: return "GlobalAllData";
        case RegimeTag::BlowUpAllData: return "BlowUpAllData";
        case RegimeTag::Conditional: return "Conditional";
    }
    return "?";
}

std::string to_string(ComparisonTag t) {
    return t == ComparisonTag::Unconditional ? "Unconditional" : "NeedsPositivityNearOrigin";
}

CknReport ckn_check(const CknParams& c, int dim) {
    const double n = dim;
    constexpr double tol = 1e-12;
    CknReport rep;
    rep.holds[0] = c.q1 > 0 && c.q2 >= 1 && c.q3 > 0 && c.a >= 0 && c.a <= 1;
    rep.holds[1] = 1 / c.q1 + c.gamma1 / n > 0 && 1 / c.q2 + c.gamma2 / n > 0 &&
                   1 / c.q3 + c.gamma3 / n > 0;

    const double lhs = 1 / c.q1 + c.gamma1 / n;
    const double rhs = c.a * (1 / c.q2 + (c.gamma2 - 1) / n) + (1 - c.a) * (1 / c.q3 + c.gamma3 / n);
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    rep.holds[2] = std::abs(lhs - rhs) <= tol * scale;

    const double wmix = c.a * c.gamma2 + (1 - c.a) * c.gamma3;
    rep.holds[3] = c.gamma1 <= wmix + tol * std::max(1.0, std::abs(wmix));

    if (c.a == 0.0 || c.a == 1.0) {
        const double mix = c.a / c.q2 + (1 - c.a) / c.q3;
        rep.holds[4] = 1 / c.q1 <= mix + tol * std::max(1.0, std::abs(mix));
    } else {
        rep.holds[4] = true;
    }
    return rep;
}

CknParams ckn_instantiation(const ExponentTriple& e, double r1, double r) {
    const Prop32Exponents x = prop32_exponents(e, r1, r);
    CknParams c;
    c.q1 = 2 * (e.p + r) / (e.m + r);
    c.q2 = 2;
    c.q3 = 2 * (r1 + 1) / (e.m + r);
    c.gamma1 = e.sigma * (e.m + r) / (2 * (e.p + r));
    c.gamma2 = 0;
    c.gamma3 = 0;
    c.a = x.a;
    return c;
}

Prop32Exponents prop32_exponents(const ExponentTriple& e, double r1, double r) {
    const DerivedConstants d = derive(e);
    const double m = e.m, p = e.p, s = e.sigma, n = e.dim;
    if (r1 < d.rc - 1e-12 * std::max(1.0, d.rc))
        throw IndexBelowCritical("r1=" + std::to_string(r1) + " below r_c=" + std::to_string(d.rc));
    if (r < r1) throw IndexBelowCritical("r must be >= r1");

    const double den = n * (m - 1) + 2 * (r1 + 1) + n * (r - r1);
    Prop32Exponents x;
    // 1 - omega is computed in factored form so that r1 == r0 gives exactly 1.
    const double one_minus_omega = (s + 2) * (r1 - d.r0) / den;
    x.omega_r = 1.0 - one_minus_omega;
    x.mu_r = ((n - 2) * (m - p) + (s + 2) * (m + r)) / den;
    if (one_minus_omega > 0) x.nu_r = x.mu_r / one_minus_omega;
    x.a = (m + r) / (p + r) * x.omega_r;
    x.one_minus_a = (r1 + 1) / (p + r) * x.mu_r;
    x.one_minus_nu_r1 = -2 * (p - d.p_g) / (n * (m - p) + (s + 2) * (r1 + 1));
    return x;
}

double one_minus_nu(const ExponentTriple& e, double r1, double r) {
    const DerivedConstants d = derive(e);
    const double n = e.dim, s = e.sigma;
    return -(2 * (e.p - d.p_g) + (s + 2) * (r - r1)) / (n * (e.m - e.p) + (s + 2) * (r1 + 1));
}

SubsolutionConstants subsolution_constants(const ExponentTriple& e, double amplitude) {
    const DerivedConstants d = derive(e);
    if (!(e.p > d.p_g) || on_boundary(e.p, d.p_g) || !(e.p < e.m) || on_boundary(e.p, e.m))
        throw WrongRegime("subsolution needs p_G < p < m");
    if (!(amplitude > 0)) throw OutOfRange("amplitude");
    const double m = e.m, p = e.p, s = e.sigma, n = e.dim;
    SubsolutionConstants c;
    c.alpha = *d.alpha;
    c.beta = *d.beta;
    c.amplitude = amplitude;
    c.a_sq = m * std::pow(amplitude, m - 1) / (c.beta * (m - 1));
    c.a = std::sqrt(c.a_sq);
    c.z0 = std::min(1.0 / (2 * (n * (m - 1) + 2)), c.beta);
    c.threshold_pow = std::pow(m / (c.beta * (m - 1)), -s / 2) * std::pow(1 - c.z0, -s / 2) /
                      ((m - 1) * std::pow(c.z0, (p - 1) / (m - 1))) *
                      (1 + 2 * (n * (m - 1) + 2) * c.beta);
    c.threshold = std::pow(c.threshold_pow, 1 / (p - d.p_g));
    c.satisfied = std::pow(amplitude, p - d.p_g) >= c.threshold_pow;
    return c;
}

double gn_theta(const ExponentTriple& e, double r) {
    const DerivedConstants d = derive(e);
    const double n = e.dim, m = e.m;
    const double den = n * (r - d.r0) + n * (m - 1) + 2 * (d.r0 + 1);
    return (r + m) / (r + 1) * n * (r - d.r0) / den;
}

double gn_one_minus_theta(const ExponentTriple& e, double r) {
    const DerivedConstants d = derive(e);
    const double n = e.dim, m = e.m;
    const double den = n * (r - d.r0) + n * (m - 1) + 2 * (d.r0 + 1);
    // carries a factor N; without it the complement only matches theta at N = 1
    return n * (e.p - m) / ((e.sigma + 2) * (r + 1)) * (n * (m - 1) + 2 * (r + 1)) / den;
}

double smallness_constant(const ExponentTriple& e, double lambda) {
    const DerivedConstants d = derive(e);
    const double r0 = d.r0, m = e.m;
    return std::pow(4 * m * r0 / (lambda * (r0 + 1) * (m + r0) * (m + r0)),
                    e.dim / (e.sigma + 2));
}

}  // namespace hh
