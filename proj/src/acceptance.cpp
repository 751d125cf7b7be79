#include "hhlab/acceptance.hpp"

#include <algorithm>
#include <boost/rational.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "hhlab/config.hpp"
#include "hhlab/diagnostics.hpp"
#include "hhlab/errors.hpp"
#include "hhlab/profiles.hpp"
#include "hhlab/solver.hpp"

namespace hh {

namespace {

using Rational = boost::rational<long long>;

double to_double(const Rational& r) { return double(r.numerator()) / double(r.denominator()); }

RadialField bump(const GridPtr& g, double amplitude, double radius) {
    RadialField u(g);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double z = 1 - std::pow(g->centers()[i] / radius, 2);
        u.values[i] = z > 0 ? amplitude * z * z : 0.0;
    }
    return u;
}

// Largest (lower - upper) / ||.||_inf over matching snapshots of ordered runs.
double order_violation(const SimulationRun& lower, const SimulationRun& upper) {
    double worst = -std::numeric_limits<double>::infinity();
    const std::size_t n = std::min(lower.snapshots.size(), upper.snapshots.size());
    for (std::size_t s = 0; s < n; ++s) {
        const auto& a = lower.snapshots[s].u.values;
        const auto& b = upper.snapshots[s].u.values;
        const double scale = std::max({lower.snapshots[s].u.linf(), upper.snapshots[s].u.linf(), 1e-300});
        for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]) / scale);
    }
    return worst;
}

constexpr double kOrderTol = 1e-8;

CriterionResult titled(int id, const char* name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    return r;
}

CriterionResult c1_exponents() {
    CriterionResult r = titled(1, "exponent-algebra");
    // m = 2, sigma = -1, N = 3
    const Rational m(2), s(-1), n(3);
    const Rational pg = Rational(1) - s * (m - 1) / 2;
    const Rational pf = m + (s + 2) / n;
    const Rational p3(3);
    const Rational r0 = n * (p3 - m) / (s + 2) - 1;
    const Rational p12(6, 5);
    const Rational astar = -((s + 2) / (2 * (p12 - pg)));
    const Rational bstar = -((m - p12) / (2 * (p12 - pg)));

    const auto d18 = derive(ExponentTriple{2, 1.8, -1, 3});
    const auto d3 = derive(ExponentTriple{2, 3, -1, 3});
    const auto d12 = derive(ExponentTriple{2, 1.2, -1, 3});
    const double e_pg = std::abs(d18.p_g - to_double(pg));
    const double e_pf = std::abs(d18.p_f - to_double(pf));
    const double e_r0 = std::abs(d3.r0 - to_double(r0));
    const double e_a = d12.alpha_star ? std::abs(*d12.alpha_star - to_double(astar)) : 1.0;
    const double e_b = d12.beta_star ? std::abs(*d12.beta_star - to_double(bstar)) : 1.0;
    const double worst = std::max({e_pg, e_pf, e_r0, e_a, e_b});
    r.passed = worst <= 1e-12 && pg == Rational(3, 2) && pf == Rational(7, 3) && r0 == Rational(2) &&
               astar == Rational(5, 3) && bstar == Rational(4, 3);
    r.detail = fmt::format("p_G={} p_F={} r0={} alpha*={} beta*={} max_abs_err={:.3e}", d18.p_g,
                           d18.p_f, d3.r0, d12.alpha_star.value_or(NAN),
                           d12.beta_star.value_or(NAN), worst);
    return r;
}

CriterionResult c2_ckn() {
    CriterionResult r = titled(2, "interpolation-map");
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::uniform_int_distribution<int> D(1, 5);
    int ok = 0, a_ok = 0, sum_ok = 0;
    const int samples = 1000;
    for (int i = 0; i < samples; ++i) {
        const int dim = D(rng);
        const double m = 1.05 + 2.95 * U(rng);
        const double lo = std::max(-2.0, -double(dim));
        const double sigma = lo + (0.98 * U(rng) + 0.01) * (0 - lo);
        const double p = 1.05 + 4.95 * U(rng);
        const ExponentTriple e = validate(m, p, sigma, dim);
        const double rc = derive(e).rc;
        const double r1 = rc + 3 * U(rng);
        const double rr = r1 + 3 * U(rng);
        const auto x = prop32_exponents(e, r1, rr);
        if (ckn_check(ckn_instantiation(e, r1, rr), dim).all()) ++ok;
        if (x.a > 0 && x.a < 1) ++a_ok;
        if (std::abs(x.a + x.one_minus_a - 1) <= 1e-12) ++sum_ok;
    }
    int omega_ok = 0;
    for (int i = 0; i < 100; ++i) {
        const int dim = D(rng);
        const double m = 1.05 + 2.95 * U(rng);
        const double lo = std::max(-2.0, -double(dim));
        const double sigma = lo + (0.98 * U(rng) + 0.01) * (0 - lo);
        const double pf = m + (sigma + 2) / dim;
        const ExponentTriple e = validate(m, pf + 0.01 + 3 * U(rng), sigma, dim);
        const double r0 = derive(e).r0;
        const auto x = prop32_exponents(e, r0, r0);
        if (x.omega_r == 1.0 && !x.nu_r) ++omega_ok;
    }
    r.passed = ok == samples && a_ok == samples && sum_ok == samples && omega_ok == 100;
    r.detail = fmt::format("conditions_hold={}/{} a_in_(0,1)={}/{} a_sum_1={}/{} omega_1_at_r0={}/100",
                           ok, samples, a_ok, samples, sum_ok, samples, omega_ok);
    return r;
}

CriterionResult c3_barenblatt() {
    CriterionResult r = titled(3, "pme-oracle");
    bool pass = true;
    std::string det;
    for (int dim : {1, 3}) {
        const double t0 = 1, t1 = 10;
        const auto B = Barenblatt::with_support(2, dim, 0.75 * std::pow(t0 / t1, 1.0 / (dim + 2)), t0);
        const auto grid = RadialGrid::uniform(dim, 1.0, 2000);
        RadialField u0(grid);
        for (std::size_t i = 0; i < u0.size(); ++i) u0.values[i] = B(t0, grid->centers()[i]);
        auto prob = make_problem(ExponentTriple{2, 3, -0.5, dim}, 0.0, u0);
        prob.reaction = false;
        RunOptions o;
        o.horizon = t1 - t0;
        o.rows = Cadence{0, 0, 0.01, 1.05, 0};
        o.snapshots = Cadence{0, 0, 0.01, std::pow(10.0, 0.1), 0};
        const auto run_ = run(prob, o);
        double worst = 0;
        for (const auto& s : run_.snapshots) {
            double mx = 0, d = 0;
            for (std::size_t i = 0; i < s.u.size(); ++i) {
                const double ex = B(s.t + t0, grid->centers()[i]);
                mx = std::max(mx, ex);
                d = std::max(d, std::abs(ex - s.u.values[i]));
            }
            worst = std::max(worst, d / mx);
        }
        std::vector<double> ts, ys;
        for (const auto& row : run_.series) {
            ts.push_back(row.t + t0);
            ys.push_back(row.linf);
        }
        const auto fit = rate_fit(ts, ys, FitModel::PowerLaw, t0, t1);
        const double target = -double(dim) / (dim * (2 - 1) + 2);
        const double rel = std::abs(fit.fitted - target) / std::abs(target);
        const bool ok = run_.verdict == Verdict::ReachedHorizon && worst < 0.02 && rel <= 0.03 &&
                        fit.conclusive();
        pass = pass && ok;
        det += fmt::format("N={}: max_rel_err={:.3e} exponent={:.5f} target={:.5f} r2={:.6f}; ", dim,
                           worst, fit.fitted, target, fit.r_squared);
    }
    r.passed = pass;
    r.detail = det;
    return r;
}

CriterionResult c4_eta_monotone() {
    CriterionResult r = titled(4, "eta-monotonicity");
    const auto grid = RadialGrid::uniform(3, 40, 800);
    RunOptions o;
    o.horizon = 5;
    o.snapshots = Cadence{0, 0.25, 0, 0, 0};
    const auto fam = eta_family(ExponentTriple{2, 1.8, -1, 3}, bump(grid, 1, 2), {0.2, 0.1, 0.05, 0.025}, o);
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < fam.size(); ++k) worst = std::max(worst, order_violation(fam[k], fam[k + 1]));
    const auto order = eta_convergence_order(fam);
    r.passed = worst <= kOrderTol;
    r.detail = fmt::format("max_violation={:.3e} tol={:.0e} snapshots={} observed_eta_order={}", worst,
                           kOrderTol, fam.front().snapshots.size(),
                           order ? fmt::format("{:.3f}", *order) : std::string("n/a"));
    return r;
}

CriterionResult c5_comparison() {
    CriterionResult r = titled(5, "discrete-comparison");
    const auto grid = RadialGrid::uniform(3, 40, 800);
    bool pass = true;
    std::string det;
    for (double p : {1.2, 1.8, 3.0}) {
        const ExponentTriple e{2, p, -1, 3};
        RunOptions o;
        o.horizon = p < 1.5 ? 20 : 5;
        o.snapshots = Cadence{0, 0.25, 0, 0, 0};
        const auto runs = run_lockstep({make_problem(e, 0, bump(grid, 0.5, 2)), make_problem(e, 0, bump(grid, 1.0, 3))}, o);
        const double v = order_violation(runs[0], runs[1]);
        pass = pass && v <= kOrderTol;
        det += fmt::format("{}: max_violation={:.3e} verdict={}; ", to_string(classify(e).tag), v,
                           to_string(runs[1].verdict));
    }
    r.passed = pass;
    r.detail = det;
    return r;
}

CriterionResult c6_blowup() {
    CriterionResult r = titled(6, "blowup-subcritical");
    bool pass = true;
    std::string det;
    // small bumps: amplitude 0.1, radius 10, graded grid reaching far enough
    // for the spreading that precedes blow-up when p < m
    const double ratio = ratio_for_first_cell(1000, 250, 0.1);
    const auto grid = RadialGrid::graded(3, 1000, 250, ratio);
    for (double p : {1.6, 1.8, 2.0, 7.0 / 3.0}) {
        const ExponentTriple e{2, p, -1, 3};
        const RadialField u0 = bump(grid, 0.1, 10);
        RunOptions o;
        o.horizon = 1e4;
        o.m_stop = 1e4 * u0.linf();
        const auto run_ = run(make_problem(e, 0, u0), o);
        const bool ok = run_.verdict == Verdict::BlowUpDetected && run_.t_end < 1e4;
        pass = pass && ok;
        det += fmt::format("p={:.4f}: verdict={} t_detect={:.5g}; ", p, to_string(run_.verdict), run_.t_end);
    }
    // negative-energy data: bound check on the m+1 norm
    struct Case { double p, amplitude, radius; };
    const auto g2 = RadialGrid::graded(3, 200, 400, 1.01);
    for (const Case c : {Case{2.0, 1, 10}, Case{7.0 / 3.0, 10, 4}}) {
        const ExponentTriple e{2, c.p, -1, 3};
        const RadialField u0 = bump(g2, c.amplitude, c.radius);
        const double E0 = energy(u0, e).total;
        RunOptions o;
        o.horizon = 1e4;
        o.m_stop = 1e4 * u0.linf();
        o.rows = Cadence{0, 0, 0, 0, 1.1};
        const auto run_ = run(make_problem(e, 0, u0), o);
        if (!(E0 < 0) || run_.verdict != Verdict::BlowUpDetected) {
            pass = false;
            det += fmt::format("p={:.4f}: E0={:.4g} verdict={}; ", c.p, E0, to_string(run_.verdict));
            continue;
        }
        const auto bc = blowup_bound_check(run_, e);
        pass = pass && bc.passed;
        det += fmt::format("p={:.4f}: E0={:.4g} K={:.4g} max_ratio={:.4f} margin={:.4f} t_hat={:.5g} "
                           "t_upper={:.5g} rows={}; ",
                           c.p, E0, bc.K, bc.max_ratio, 1 - bc.max_ratio, bc.t_hat, bc.t_upper, bc.rows);
    }
    r.passed = pass;
    r.detail = det;
    return r;
}

struct GrowUp {
    SimulationRun run;
    Profile prof;
    double horizon = 0;
};

// Shared by the grow-up and self-similarity checks.
const GrowUp& growup_run() {
    static const GrowUp g = [] {
        GrowUp out;
        const ExponentTriple e{2, 1.2, -1, 3};
        out.prof = shoot(ProfileKind::Forward, e);
        out.horizon = 1000;
        const double radius = 10;
        const double r_max = forecast_r_max(e, radius, 0, out.horizon, out.prof.support);
        const auto grid = RadialGrid::uniform(3, r_max, 1000);
        RunOptions o;
        o.horizon = out.horizon;
        o.rows = Cadence{0, 0, out.horizon * 1e-3, 1.02, 0};
        o.snapshots = Cadence{0, 0, out.horizon * 1e-2, std::pow(10.0, 0.125), 0};
        out.run = run(make_problem(e, 0, bump(grid, 0.2, radius)), o);
        return out;
    }();
    return g;
}

CriterionResult c7_growup() {
    CriterionResult r = titled(7, "growup-rates");
    const GrowUp& g = growup_run();
    std::vector<double> ts, ys;
    for (const auto& row : g.run.series) {
        ts.push_back(row.t);
        ys.push_back(row.linf);
    }
    const double T = g.horizon;
    const auto last = rate_fit(ts, ys, FitModel::PowerLaw, T / 10, T);
    const auto both = rate_fit(ts, ys, FitModel::PowerLaw, T / 100, T);
    const double target = 5.0 / 3.0;
    const bool power_ok = g.run.verdict == Verdict::ReachedHorizon && last.conclusive() &&
                          std::abs(last.fitted - target) <= 0.10 * target;

    // p = p_G: exponential growth against the profile rate
    const ExponentTriple eg{2, 1.5, -1, 3};
    const Profile ex = shoot(ProfileKind::Exponential, eg);
    const auto grid = RadialGrid::uniform(3, 5000, 1000);
    RunOptions o;
    o.horizon = 100;
    o.rows = Cadence{0, 0, 0.1, 1.02, 0};
    const auto run_ = run(make_problem(eg, 0, bump(grid, 1, 5)), o);
    std::vector<double> t2, y2;
    for (const auto& row : run_.series) {
        t2.push_back(row.t);
        y2.push_back(row.linf);
    }
    const auto rate = rate_fit(t2, y2, FitModel::Exponential, o.horizon / 10, o.horizon);
    const double rel = std::abs(rate.fitted - ex.coef.a) / ex.coef.a;
    const double slaved = std::abs(2 * ex.coef.b - (eg.m - 1) * ex.coef.a);
    const bool exp_ok = run_.verdict == Verdict::ReachedHorizon && rate.conclusive() && rel <= 0.15 &&
                        slaved <= 1e-12 * ex.coef.a;
    r.passed = power_ok && exp_ok;
    r.detail = fmt::format(
        "p=1.2: verdict={} exponent(last decade)={:.4f} r2={:.5f} target={:.4f} "
        "exponent(two decades, informational)={:.4f}; p=1.5: rate={:.5f} r2={:.5f} profile_rate={:.5f} "
        "rel_diff={:.4f} slaved_residual={:.1e}",
        to_string(g.run.verdict), last.fitted, last.r_squared, target, both.fitted, rate.fitted,
        rate.r_squared, ex.coef.a, rel, slaved);
    return r;
}

CriterionResult c8_selfsimilar() {
    CriterionResult r = titled(8, "selfsimilar-convergence");
    const GrowUp& g = growup_run();
    const auto series = selfsim_convergence(g.run, g.prof);
    const double T = g.horizon;
    std::vector<std::pair<double, double>> last;
    for (const auto& pt : series)
        if (pt.first >= T / 10 * (1 - 1e-9)) last.push_back(pt);
    if (last.size() < 2) {
        r.detail = "too few snapshots in the final decade";
        return r;
    }
    bool monotone = true;
    for (std::size_t i = 1; i < last.size(); ++i) monotone = monotone && last[i].second <= last[i - 1].second;
    const double factor = last.front().second / last.back().second;
    r.passed = factor >= 3 && monotone;
    r.detail = fmt::format("t={:.4g}: {:.4e} -> t={:.4g}: {:.4e} factor={:.3f} monotone={}", last.front().first,
                           last.front().second, last.back().first, last.back().second, factor, monotone);
    return r;
}

CriterionResult c9_subsolution() {
    CriterionResult r = titled(9, "subsolution-certificate");
    const ExponentTriple e{2, 1.8, -1, 3};
    const double A = 10 * subsolution_constants(e, 1.0).threshold;
    const auto k = subsolution_constants(e, A);
    const double T = 1, t = 0.5;
    const double extent = 1.5 * k.a * std::pow(T - t, -k.beta);
    const double dt_fd = 1e-6 * (T - t);
    const auto coarse = subsolution_residual(e, A, T, t, RadialGrid::uniform(3, extent, 4000), dt_fd);
    const auto fine = subsolution_residual(e, A, T, t, RadialGrid::uniform(3, extent, 8000), dt_fd);
    const bool a_ok = std::abs(k.a_sq - 6 * A) <= 1e-12 * 6 * A;
    r.passed = k.satisfied && a_ok && coarse.violation <= 1e-3 && fine.violation <= 0.5 * coarse.violation;
    r.detail = fmt::format(
        "A0={:.6g} A={:.6g} a^2={:.6g} violation(4000)={:.3e} violation(8000)={:.3e} "
        "max_residual_on_support/scale(4000)={:.3e}",
        k.threshold, A, k.a_sq, coarse.violation, fine.violation,
        coarse.support_max / coarse.dt_scale);
    return r;
}

CriterionResult c10_lemma35() {
    CriterionResult r = titled(10, "power-difference-ratio");
    const double ms[] = {1, 1.75, 2.5, 3.25, 4};
    const double taus[] = {0, 0.5, 1, 1.5, 2};
    double worst_change = 0, worst_scale = 0, worst_sum = 0, largest = 0;
    bool finite = true;
    std::uint64_t seed = 7;
    for (double m : ms)
        for (double p : ms)
            for (double tau : taus) {
                const double a = lemma35_test(m, p, tau, 100000, seed);
                const double b = lemma35_test(m, p, tau, 200000, seed);
                finite = finite && std::isfinite(a) && std::isfinite(b) && a > 0;
                worst_change = std::max(worst_change, std::abs(b - a) / a);
                worst_scale = std::max(worst_scale, lemma35_scale_deviation(m, p, tau, 2000, seed + 1));
                worst_sum = std::max(worst_sum, std::abs(lemma35_exponent_sum(m, p, tau)));
                largest = std::max(largest, b);
                ++seed;
            }
    r.passed = finite && worst_change < 0.05 && worst_scale <= 1e-12 && worst_sum <= 1e-12;
    r.detail = fmt::format("max_rel_change_on_doubling={:.3e} scale_deviation={:.3e} exponent_sum={:.1e} "
                           "largest_sup={:.4g}",
                           worst_change, worst_scale, worst_sum, largest);
    return r;
}

CriterionResult c11_threshold() {
    CriterionResult r = titled(11, "small-data-threshold");
    const ExponentTriple e{2, 3, -1, 3};
    const auto grid = RadialGrid::uniform(3, 10, 400);
    const DataFamily fam = [&](double A) { return bump(grid, A, 1); };
    double a_neg = 1;
    while (energy(fam(a_neg), e).total >= 0) a_neg *= 1.5;
    RunOptions o;
    o.horizon = 100;
    const auto th = smallness_threshold(e, fam, o, 1e-3, a_neg, 10);

    RunOptions below = o;
    below.rows = Cadence{1, 0, 0, 0, 0};
    const auto lo = run(make_problem(e, 0, fam(th.amp_lo)), below);
    bool nonincreasing = lo.verdict == Verdict::ReachedHorizon;
    for (std::size_t i = 1; i < lo.series.size(); ++i)
        nonincreasing = nonincreasing && *lo.series[i].lr0 <= *lo.series[i - 1].lr0;
    const double E_hi = energy(fam(a_neg), e).total;
    const auto hi = run(make_problem(e, 0, fam(a_neg)), o);
    const bool finite = std::isfinite(th.norm_lo) && th.norm_lo > 0 && th.norm_hi > th.norm_lo;
    r.passed = finite && nonincreasing && E_hi < 0 && hi.verdict == Verdict::BlowUpDetected;
    r.detail = fmt::format(
        "threshold_norm in [{:.5g}, {:.5g}] amplitude in [{:.5g}, {:.5g}] runs={}; below: "
        "verdict={} norm {:.4g} -> {:.4g} nonincreasing={}; above: amplitude={:.4g} E0={:.4g} verdict={}; "
        "C0(informational, lambda_lower={:.4g})={:.4g}",
        th.norm_lo, th.norm_hi, th.amp_lo, th.amp_hi, th.runs, to_string(lo.verdict),
        *lo.series.front().lr0, *lo.series.back().lr0, nonincreasing, a_neg, E_hi,
        to_string(hi.verdict), th.lambda_lower, th.c0_informational);
    return r;
}

CriterionResult c12_kaplan() {
    CriterionResult r = titled(12, "kaplan-monitor");
    const ExponentTriple e{2, 2, -1, 3};
    const Profile v = shoot(ProfileKind::Kaplan, e);
    const double res = ode_residual(v);
    const auto grid = RadialGrid::uniform(3, 2 * v.support, 400);
    RadialField u0(grid);
    for (std::size_t i = 0; i < u0.size(); ++i)
        u0.values[i] = std::sqrt(std::max(v.at(grid->centers()[i]), 0.0));
    RunOptions o;
    o.horizon = 100;
    o.rows = Cadence{0, 0, 0, 0, 1.1};
    o.snapshots = Cadence{0, 0, 0, 0, 1.1};
    const auto run_ = run(make_problem(e, 0, u0), o);
    const auto k = kaplan_monitor(run_, v);
    const bool nonneg = *std::min_element(v.f.begin(), v.f.end()) >= 0;
    r.passed = res < 1e-5 && nonneg && k.nondecreasing && k.dominates && k.consistent;
    r.detail = fmt::format(
        "v(0)={:.6g} support={:.5g} residual={:.3e} verdict={} t_detect={:.5g} t_bound={:.5g} "
        "ratio={:.3f} nondecreasing={} dominates={}",
        v.shoot_param, v.support, res, to_string(run_.verdict), k.t_detect, k.t_bound,
        k.t_bound / k.t_detect, k.nondecreasing, k.dominates);
    return r;
}

}  // namespace

double ratio_for_first_cell(double r_max, std::size_t cells, double h0) {
    if (!(h0 > 0 && h0 * cells < r_max)) throw OutOfRange("h0");
    auto first = [&](double q) { return r_max * (q - 1) / (std::pow(q, double(cells)) - 1); };
    double lo = 1 + 1e-12, hi = 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (first(mid) > h0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<int> criterion_ids() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}; }

CriterionResult run_criterion(int id) {
    using Fn = CriterionResult (*)();
    static const Fn table[] = {c1_exponents, c2_ckn,        c3_barenblatt, c4_eta_monotone,
                               c5_comparison, c6_blowup,    c7_growup,     c8_selfsimilar,
                               c9_subsolution, c10_lemma35, c11_threshold, c12_kaplan};
    static const char* names[] = {"exponent-algebra", "interpolation-map", "pme-oracle",
                                  "eta-monotonicity", "discrete-comparison", "blowup-subcritical",
                                  "growup-rates", "selfsimilar-convergence", "subsolution-certificate",
                                  "power-difference-ratio", "small-data-threshold", "kaplan-monitor"};
    CriterionResult r;
    r.id = id;
    const auto start = std::chrono::steady_clock::now();
    if (id < 1 || id > 12) {
        r.name = "unknown";
        r.detail = "no such criterion";
        return r;
    }
    try {
        r = table[id - 1]();
    } catch (const std::exception& e) {
        r.id = id;
        r.name = names[id - 1];
        r.passed = false;
        r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::string format_result(const CriterionResult& r) {
    return fmt::format("{} criterion {:>2} {}: {} ({:.1f}s)", r.passed ? "PASS" : "FAIL", r.id, r.name,
                       r.detail, r.seconds);
}

}  // namespace hh
