#include "hhlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hhlab/errors.hpp"

namespace hh {

EnergyReport energy(const RadialField& f, const ExponentTriple& e) {
    std::vector<double> g(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) g[i] = ipow(f.values[i], e.m);
    EnergyReport r;
    r.dirichlet = 0.5 * f.grid->grad_sq(g);
    r.potential = e.m / (e.m + e.p) * weighted_integral(f, e.m + e.p, e.sigma);
    r.total = r.dirichlet - r.potential;
    return r;
}

BlowUpFunctional blowup_functional(const RadialField& u, const ExponentTriple& e,
                                   const RadialField* vstar) {
    BlowUpFunctional b;
    b.I = std::pow(u.lq(e.m + 1), e.m + 1);
    b.E = energy(u, e).total;
    if (vstar) {
        double acc = 0;
        const auto& vol = u.grid->volumes();
        for (std::size_t i = 0; i < u.size(); ++i) acc += vol[i] * u.values[i] * vstar->values[i];
        b.kaplan = acc;
    }
    return b;
}

RateFit rate_fit(const std::vector<double>& t, const std::vector<double>& y, FitModel model,
                 double t_lo, double t_hi) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < t.size() && i < y.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi || !(y[i] > 0)) continue;
        if (model == FitModel::PowerLaw && !(t[i] > 0)) continue;
        xs.push_back(model == FitModel::PowerLaw ? std::log(t[i]) : t[i]);
        ys.push_back(std::log(y[i]));
    }
    if (xs.size() < 2) throw EmptyWindow("fewer than two points in the fit window");
    const double n = xs.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx <= 0) throw EmptyWindow("degenerate fit window");
    RateFit f;
    f.t_lo = t_lo;
    f.t_hi = t_hi;
    f.model = model;
    f.points = xs.size();
    f.fitted = sxy / sxx;
    f.intercept = my - f.fitted * mx;
    f.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
    return f;
}

BoundCheck blowup_bound_check(const SimulationRun& run, const ExponentTriple& e) {
    if (run.verdict != Verdict::BlowUpDetected)
        throw PreconditionViolated("run did not blow up");
    if (e.p < e.m && !on_boundary(e.p, e.m)) throw PreconditionViolated("needs p >= m");
    const RadialField& u0 = run.initial();
    const double E0 = energy(u0, e).total;
    if (!(E0 < 0)) throw PreconditionViolated("initial energy is not negative");
    const double m = e.m, p = e.p;
    const double n0 = u0.lq(m + 1);
    BoundCheck c;
    c.rate = -1.0 / (p - 1);
    c.K = std::pow(m * std::pow(n0, m + p) / ((p - 1) * (m + p) * std::abs(E0)), 1.0 / (p - 1));
    c.t_upper = m * std::pow(n0, m + 1) / ((p - 1) * (m + p) * std::abs(E0));
    c.t_hat = run.t_max_estimate.value_or(run.t_end);
    c.window_hi = run.t_end;
    c.window_lo = run.t_end / 10;
    for (const auto& row : run.series) {
        if (row.t < c.window_lo || row.t > c.window_hi) continue;
        const double gap = c.t_hat - row.t;
        if (gap <= 0) continue;
        c.max_ratio = std::max(c.max_ratio, row.lm1 * std::pow(gap, 1.0 / (p - 1)) / c.K);
        ++c.rows;
    }
    c.passed = c.rows > 0 && c.max_ratio <= 1.0 && c.t_hat <= c.t_upper;
    return c;
}

KaplanReport kaplan_monitor(const SimulationRun& run, const Profile& vstar, double scale) {
    if (vstar.kind != ProfileKind::Kaplan) throw RegimeMismatch("needs a Kaplan profile");
    if (!on_boundary(run.exps.p, run.exps.m)) throw RegimeMismatch("needs p = m");
    const double m = run.exps.m;
    const GridPtr grid = run.initial().grid;
    RadialField v(grid);
    for (std::size_t i = 0; i < v.size(); ++i) v.values[i] = scale * vstar.at(grid->centers()[i]);

    KaplanReport k;
    k.C = std::pow(v.l1(), 1 - m) / std::pow(v.linf(), (m - 1) / m);
    for (const auto& s : run.snapshots) {
        k.t.push_back(s.t);
        k.J.push_back(*blowup_functional(s.u, run.exps, &v).kaplan);
    }
    const double J0 = k.J.front();
    k.t_detect = run.t_end;
    k.t_bound = J0 > 0 ? std::pow(J0, 1 - m) / k.C : std::numeric_limits<double>::infinity();

    k.nondecreasing = true;
    k.dominates = true;
    for (std::size_t i = 0; i < k.t.size(); ++i) {
        if (i > 0 && k.J[i] < k.J[i - 1] * (1 - 1e-10)) k.nondecreasing = false;
        double lo = 0;
        if (J0 > 0 && k.t[i] < k.t_bound)
            lo = std::pow(std::pow(J0, 1 - m) - k.C * k.t[i], -1 / (m - 1));
        k.lower.push_back(lo);
        if (J0 > 0 && k.t[i] < k.t_bound && k.J[i] < lo * (1 - 1e-9)) k.dominates = false;
    }
    k.consistent = run.verdict == Verdict::BlowUpDetected && k.t_detect <= k.t_bound &&
                   k.t_bound <= 3 * k.t_detect;

    // least-squares slope of J^(1-m) against t
    double st = 0, sy = 0, stt = 0, sty = 0, n = 0;
    for (std::size_t i = 0; i < k.t.size(); ++i) {
        if (!(k.J[i] > 0)) continue;
        const double yv = std::pow(k.J[i], 1 - m);
        st += k.t[i];
        sy += yv;
        stt += k.t[i] * k.t[i];
        sty += k.t[i] * yv;
        n += 1;
    }
    if (n >= 2 && n * stt - st * st > 0) k.effective_rate = -(n * sty - st * sy) / (n * stt - st * st);
    return k;
}

std::vector<std::pair<double, double>> selfsim_convergence(const SimulationRun& run,
                                                           const Profile& prof) {
    if (prof.kind != ProfileKind::Forward) throw RegimeMismatch("needs a Forward profile");
    const DerivedConstants d = derive(run.exps);
    if (!d.alpha_star) throw RegimeMismatch("needs p < p_G");
    std::vector<std::pair<double, double>> out;
    for (const auto& s : run.snapshots) {
        if (!(s.t > 0)) continue;
        const RadialField U = evaluate_selfsimilar(prof, s.t, s.u.grid);
        double d_inf = 0;
        for (std::size_t i = 0; i < U.size(); ++i)
            d_inf = std::max(d_inf, std::abs(s.u.values[i] - U.values[i]));
        out.emplace_back(s.t, std::pow(s.t, -*d.alpha_star) * d_inf);
    }
    return out;
}

SubsolutionResidual subsolution_residual(const ExponentTriple& e, double amplitude, double T,
                                         double t, const GridPtr& grid, double dt_fd) {
    if (!(dt_fd > 0) || !(t - dt_fd >= 0) || !(t + dt_fd < T)) throw OutOfRange("dt_fd");
    const RadialField s = subsolution_field(e, amplitude, T, t, grid);
    const RadialField later = subsolution_field(e, amplitude, T, t + dt_fd, grid);
    const RadialField earlier = subsolution_field(e, amplitude, T, t - dt_fd, grid);
    const RadialField lap = laplacian_of_power(s, e.m);
    const auto w = grid->regularized_weights(e.sigma, 0.0);
    SubsolutionResidual out;
    out.max_residual = -std::numeric_limits<double>::infinity();
    out.support_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double dt = (later.values[i] - earlier.values[i]) / (2 * dt_fd);
        out.dt_scale = std::max(out.dt_scale, std::abs(dt));
        const double r = dt - lap.values[i] - w[i] * std::pow(s.values[i], e.p);
        out.max_residual = std::max(out.max_residual, r);
        if (s.values[i] > 0) out.support_max = std::max(out.support_max, r);
    }
    out.violation = out.dt_scale > 0 ? std::max(out.max_residual, 0.0) / out.dt_scale : 0.0;
    return out;
}

double lemma35_exponent_sum(double m, double p, double tau) {
    return 2 * p - (2 * (p - 1) - tau * (m - 1)) - tau * m - (2 - tau);
}

double lemma35_ratio(double m, double p, double tau, double X, double Y) {
    if (X < Y) std::swap(X, Y);
    if (X == Y) return 0.0;
    const double lx = std::log(X);
    // log(X^q - Y^q) = q log X + log(1 - (Y/X)^q), cancellation-free
    auto log_diff = [&](double q) {
        if (Y == 0) return q * lx;
        const double lz = std::log(Y / X);
        return q * lx + std::log(-std::expm1(q * lz));
    };
    const double e = 2 * (p - 1) - tau * (m - 1);
    double lrhs = e * lx + (2 - tau) * log_diff(1);
    if (tau != 0) lrhs += tau * log_diff(m);
    return std::exp(2 * log_diff(p) - lrhs);
}

namespace {

std::pair<double, double> sample_pair(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    while (true) {
        const double X = std::pow(10.0, u(rng)), Y = std::pow(10.0, u(rng));
        if (X != Y) return {X, Y};
    }
}

}  // namespace

double lemma35_test(double m, double p, double tau, std::size_t samples, std::uint64_t seed) {
    if (!(m >= 1 && p >= 1 && tau >= 0 && tau <= 2)) throw OutOfRange("m, p or tau");
    std::mt19937_64 rng(seed);
    double sup = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const auto [X, Y] = sample_pair(rng);
        sup = std::max(sup, lemma35_ratio(m, p, tau, X, Y));
    }
    return sup;
}

double lemma35_scale_deviation(double m, double p, double tau, std::size_t samples,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> kdist(-20, 20);
    double worst = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const auto [X, Y] = sample_pair(rng);
        const double lam = std::ldexp(1.0, kdist(rng));
        const double r0 = lemma35_ratio(m, p, tau, X, Y);
        const double r1 = lemma35_ratio(m, p, tau, lam * X, lam * Y);
        if (r0 > 0) worst = std::max(worst, std::abs(r1 - r0) / r0);
    }
    return worst;
}

double ckn_ratio(const CknParams& c, const RadialField& z) {
    const RadialGrid& g = *z.grid;
    if (!ckn_check(c, g.dim()).all()) throw ConditionsFail("interpolation conditions fail");
    const auto w1 = g.singular_weights(c.gamma1 * c.q1);
    const auto w3 = g.singular_weights(c.gamma3 * c.q3);
    double lhs = 0, z3 = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double a = std::abs(z.values[i]);
        lhs += w1[i] * std::pow(a, c.q1);
        z3 += w3[i] * std::pow(a, c.q3);
    }
    lhs = std::pow(lhs, 1 / c.q1);
    z3 = std::pow(z3, 1 / c.q3);
    if (lhs == 0) return 0.0;

    const double wn = unit_ball_volume(g.dim());
    const auto& e = g.edges();
    const auto& ctr = g.centers();
    double grad = 0;
    for (std::size_t i = 1; i < z.size(); ++i) {
        const double h = ctr[i] - ctr[i - 1];
        const double area = g.dim() * wn * std::pow(e[i], g.dim() - 1);
        const double slope = std::abs(z.values[i] - z.values[i - 1]) / h;
        grad += area * h * std::pow(e[i], c.gamma2 * c.q2) * std::pow(slope, c.q2);
    }
    grad = std::pow(grad, 1 / c.q2);
    const double rhs = std::pow(grad, c.a) * std::pow(z3, 1 - c.a);
    return rhs > 0 ? lhs / rhs : 0.0;
}

RadialField ckn_trial(const GridPtr& grid, double radius, int k) {
    RadialField z(grid);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double x = grid->centers()[i] / radius;
        z.values[i] = x < 1 ? std::pow(1 - x * x, k) : 0.0;
    }
    return z;
}

CknLowerBound ckn_lambda_lower(const CknParams& params, const GridPtr& grid, int radii) {
    CknLowerBound out;
    const double r_lo = 40 * grid->min_spacing(), r_hi = 0.9 * grid->r_max();
    for (int k = 1; k <= 6; ++k) {
        for (int j = 0; j < radii; ++j) {
            const double R = r_lo * std::pow(r_hi / r_lo, radii > 1 ? double(j) / (radii - 1) : 1.0);
            out.lambda_lower = std::max(out.lambda_lower, ckn_ratio(params, ckn_trial(grid, R, k)));
            ++out.trials;
        }
    }
    return out;
}

ThresholdResult smallness_threshold(const ExponentTriple& e, const DataFamily& family,
                                    const RunOptions& opts, double amp_lo, double amp_hi,
                                    int bisections) {
    const DerivedConstants d = derive(e);
    if (!(e.p > d.p_f) || on_boundary(e.p, d.p_f)) throw RegimeMismatch("needs p > p_F");
    ThresholdResult res;
    auto blows = [&](double amp) {
        const RadialField u0 = family(amp);
        ++res.runs;
        return run(make_problem(e, 0.0, u0), opts).verdict == Verdict::BlowUpDetected;
    };
    if (blows(amp_lo)) throw NoSignChange("lower amplitude already blows up");
    if (!blows(amp_hi)) throw NoSignChange("upper amplitude stays global");
    double lo = amp_lo, hi = amp_hi;
    for (int k = 0; k < bisections; ++k) {
        const double mid = std::sqrt(lo * hi);
        (blows(mid) ? hi : lo) = mid;
        res.widths.push_back(hi - lo);
    }
    res.amp_lo = lo;
    res.amp_hi = hi;
    res.norm_lo = family(lo).lq(d.r0 + 1);
    res.norm_hi = family(hi).lq(d.r0 + 1);

    // informational: the smallness constant evaluated with a numeric lower
    // bound of the interpolation constant, which can only overestimate it
    const CknParams ck = ckn_instantiation(e, d.r0, d.r0);
    const auto lb = ckn_lambda_lower(ck, family(1.0).grid);
    res.lambda_lower = std::pow(lb.lambda_lower, 2 * (e.p + d.r0) / (e.m + d.r0));
    res.c0_informational = smallness_constant(e, res.lambda_lower);
    return res;
}

}  // namespace hh
