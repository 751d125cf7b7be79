#include "hhlab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hhlab/diagnostics.hpp"
#include "hhlab/errors.hpp"

namespace hh {

std::string to_string(Verdict v) {
    return v == Verdict::ReachedHorizon ? "ReachedHorizon" : "BlowUpDetected";
}

RegularizedProblem make_problem(const ExponentTriple& e, double eta, const RadialField& u0) {
    if (!(eta >= 0.0 && eta < 1.0)) throw OutOfRange("eta");
    if (!u0.nonnegative()) throw OutOfRange("initial");
    RegularizedProblem prob;
    prob.exps = e;
    prob.eta = eta;
    prob.initial = u0;
    prob.truncation_noop = true;
    if (eta > 0) {
        const double cut = 1.0 / eta;
        const auto& c = u0.grid->centers();
        for (std::size_t i = 0; i < u0.size(); ++i) {
            if (c[i] > cut) {
                if (prob.initial.values[i] != 0.0) prob.truncation_noop = false;
                prob.initial.values[i] = 0.0;
            }
        }
    }
    return prob;
}

Integrator::Integrator(const RegularizedProblem& prob) : prob_(prob) {
    const RadialGrid& g = *prob.initial.grid;
    w_ = g.regularized_weights(prob.exps.sigma, prob.eta);
    w_max_ = *std::max_element(w_.begin(), w_.end());
    inv_v_.resize(g.size());
    const auto& vol = g.volumes();
    const auto& tr = g.transmissibility();
    for (std::size_t i = 0; i < g.size(); ++i) {
        inv_v_[i] = 1.0 / vol[i];
        const double t_in = i > 0 ? tr[i] : 0.0;
        const double t_out = i + 1 < g.size() ? tr[i + 1] : 0.0;
        coef_max_ = std::max(coef_max_, (t_in + t_out) * inv_v_[i]);
    }
    g_.assign(g.size(), 0.0);
    const double p = prob.exps.p;
    cp_ = p <= 2 ? 1.0 : p * p / (4 * (p - 1));
}

double Integrator::reaction_lipschitz(double umax) const {
    if (!prob_.reaction) return 0.0;
    const double p = prob_.exps.p;
    if (prob_.eta > 0) return w_max_ * cp_ / prob_.eta;
    return w_max_ * p * std::pow(umax, p - 1);
}

double Integrator::stability_limit(const std::vector<double>& u) const {
    const double umax = *std::max_element(u.begin(), u.end());
    const double m = prob_.exps.m;
    const int n = prob_.exps.dim;
    double lim = std::numeric_limits<double>::infinity();
    if (prob_.diffusion && umax > 0) {
        const double um = std::pow(umax, m - 1);
        const double h = prob_.initial.grid->min_spacing();
        lim = std::min(h * h / (2.0 * n * m * um), 1.0 / (coef_max_ * m * um));
    }
    const double L = reaction_lipschitz(umax);
    if (L > 0) lim = std::min(lim, 1.0 / L);
    return lim;
}

double Integrator::advance(std::vector<double>& u, double dt) {
    const RadialGrid& grid = *prob_.initial.grid;
    const auto& tr = grid.transmissibility();
    const std::size_t n = u.size();
    const double m = prob_.exps.m, p = prob_.exps.p, eta = prob_.eta;

    std::size_t last = n;
    while (last > 0 && u[last - 1] == 0.0) --last;
    if (last == 0) return 0.0;
    const std::size_t end = std::min(n, last + 1);  // support can grow by one cell

    if (prob_.diffusion)
        for (std::size_t i = 0; i < end; ++i) g_[i] = ipow(u[i], m);
    if (end < n) g_[end] = 0.0;

    double clipped = 0;
    double left = 0;
    for (std::size_t i = 0; i < end; ++i) {
        double rate = 0;
        if (prob_.diffusion) {
            const double right = i + 1 < n ? tr[i + 1] * (g_[i + 1] - g_[i]) : 0.0;
            rate = (right - left) * inv_v_[i];
            left = right;
        }
        const double ui = u[i];
        if (prob_.reaction && ui > 0) {
            const double up = ipow(ui, p);
            rate += eta > 0 ? w_[i] * up / (1 + eta * up / ui) : w_[i] * up;
        }
        double next = ui + dt * rate;
        if (next < 0) {
            clipped += -next;
            next = 0;
        }
        u[i] = next;
    }
    return clipped;
}

double stable_dt(const RadialField& state, const RegularizedProblem& prob, double safety) {
    if (!(safety > 0 && safety < 1)) throw OutOfRange("safety");
    Integrator integ(prob);
    return safety * integ.stability_limit(state.values);
}

StepResult step(const RadialField& state, const RegularizedProblem& prob, double dt) {
    Integrator integ(prob);
    const double lim = integ.stability_limit(state.values);
    if (dt > lim * (1 + 1e-12)) throw UnstableStep("dt exceeds the stability bound");
    StepResult r{state, 0};
    r.clipped = integ.advance(r.next.values, dt);
    return r;
}

namespace {

struct Trigger {
    Cadence c;
    std::size_t last_step = 0;
    double next_dt = 0, next_log = 0, last_linf = 0;

    void reset(double t, double linf) {
        last_step = 0;
        next_dt = c.every_dt > 0 ? t + c.every_dt : 0;
        next_log = (c.log_start > 0 && c.log_factor > 1) ? c.log_start : 0;
        last_linf = linf;
    }
    bool fire(std::size_t step, double t, double linf) {
        bool hit = false;
        if (c.every_steps > 0 && step - last_step >= c.every_steps) hit = true;
        if (next_dt > 0 && t >= next_dt) hit = true;
        if (next_log > 0 && t >= next_log) hit = true;
        if (c.growth > 1 && linf >= c.growth * last_linf && linf > 0) hit = true;
        if (hit) {
            last_step = step;
            while (next_dt > 0 && next_dt <= t) next_dt += c.every_dt;
            while (next_log > 0 && next_log <= t) next_log *= c.log_factor;
            last_linf = linf;
        }
        return hit;
    }
};

SeriesRow make_row(const RadialField& u, const ExponentTriple& e, double t, double dt) {
    SeriesRow row;
    row.t = t;
    row.l1 = u.l1();
    row.lm1 = u.lq(e.m + 1);
    const double r0 = derive(e).r0;
    if (r0 > -1) row.lr0 = u.lq(r0 + 1);
    row.linf = u.linf();
    row.energy = energy(u, e).total;
    row.dt = dt;
    return row;
}

}  // namespace

std::vector<SimulationRun> run_lockstep(const std::vector<RegularizedProblem>& probs,
                                        const RunOptions& opts) {
    if (probs.empty()) return {};
    if (!(opts.horizon > 0)) throw OutOfRange("horizon");
    if (!(opts.safety > 0 && opts.safety < 1)) throw OutOfRange("safety");
    const GridPtr grid = probs.front().initial.grid;
    for (const auto& p : probs)
        if (p.initial.grid->size() != grid->size() || p.initial.grid->r_max() != grid->r_max())
            throw OutOfRange("grid");

    const std::size_t k = probs.size();
    std::vector<Integrator> integ;
    std::vector<std::vector<double>> u(k);
    std::vector<SimulationRun> out(k);
    double linf_all = 0;
    for (std::size_t j = 0; j < k; ++j) {
        integ.emplace_back(probs[j]);
        u[j] = probs[j].initial.values;
        SimulationRun& r = out[j];
        r.exps = probs[j].exps;
        r.eta = probs[j].eta;
        r.truncation_noop = probs[j].truncation_noop;
        r.options = opts;
        const double u0 = probs[j].initial.linf();
        r.m_stop = opts.m_stop > 0 ? opts.m_stop : 1e6 * u0;
        linf_all = std::max(linf_all, u0);
    }

    Trigger rows{opts.rows}, snaps{opts.snapshots};
    rows.reset(0, linf_all);
    snaps.reset(0, linf_all);

    auto record = [&](bool row, bool snap, double t, double dt) {
        for (std::size_t j = 0; j < k; ++j) {
            RadialField f(grid, u[j]);
            if (row) out[j].series.push_back(make_row(f, probs[j].exps, t, dt));
            if (snap) out[j].snapshots.push_back(Snapshot{t, std::move(f)});
        }
    };
    record(true, true, 0.0, 0.0);

    double t = 0;
    std::size_t steps = 0;
    bool floors_set = false;
    std::optional<std::size_t> blown;
    double dt = 0;
    while (true) {
        if (opts.horizon - t <= 1e-14 * opts.horizon) break;
        double dt_stable = std::numeric_limits<double>::infinity();
        std::vector<double> member_dt(k);
        for (std::size_t j = 0; j < k; ++j) {
            member_dt[j] = opts.safety * integ[j].stability_limit(u[j]);
            dt_stable = std::min(dt_stable, member_dt[j]);
        }
        if (!floors_set) {
            for (std::size_t j = 0; j < k; ++j) {
                double base = std::min({member_dt[j], opts.dt_max, opts.horizon});
                out[j].dt_floor = opts.dt_floor > 0 ? opts.dt_floor : 1e-4 * base;
            }
            floors_set = true;
        }
        for (std::size_t j = 0; j < k && !blown; ++j) {
            const double ui = *std::max_element(u[j].begin(), u[j].end());
            if (ui >= out[j].m_stop && member_dt[j] <= out[j].dt_floor) blown = j;
        }
        if (blown) break;

        dt = std::min({dt_stable, opts.dt_max, opts.horizon - t});
        for (std::size_t j = 0; j < k; ++j) out[j].clipped += integ[j].advance(u[j], dt);
        t += dt;
        ++steps;
        if (steps > opts.max_steps) throw StepLimit("step limit exceeded at t=" + std::to_string(t));

        linf_all = 0;
        for (std::size_t j = 0; j < k; ++j) {
            const double ui = *std::max_element(u[j].begin(), u[j].end());
            linf_all = std::max(linf_all, ui);
            if (u[j].back() > opts.escape_tol * ui && u[j].back() > 0)
                throw DomainEscape(t, grid->r_max());
        }
        const bool row = rows.fire(steps, t, linf_all);
        const bool snap = snaps.fire(steps, t, linf_all);
        if (row || snap) record(row, snap, t, dt);
    }

    // closing record unless the last step already produced one
    const bool have_row = !out[0].series.empty() && out[0].series.back().t == t;
    const bool have_snap = !out[0].snapshots.empty() && out[0].snapshots.back().t == t;
    record(!have_row, !have_snap, t, dt);

    for (std::size_t j = 0; j < k; ++j) {
        out[j].t_end = t;
        out[j].steps = steps;
        out[j].verdict = (blown && *blown == j) ? Verdict::BlowUpDetected : Verdict::ReachedHorizon;
        if (out[j].verdict == Verdict::BlowUpDetected)
            out[j].t_max_estimate = extrapolate_blowup_time(out[j]);
    }
    return out;
}

SimulationRun run(const RegularizedProblem& prob, const RunOptions& opts) {
    return run_lockstep({prob}, opts).front();
}

std::vector<SimulationRun> eta_family(const ExponentTriple& e, const RadialField& u0,
                                      const std::vector<double>& etas, const RunOptions& opts) {
    if (etas.empty()) throw OutOfRange("etas");
    for (std::size_t i = 0; i < etas.size(); ++i) {
        if (!(etas[i] > 0 && etas[i] < 1)) throw OutOfRange("eta");
        if (i > 0 && !(etas[i] < etas[i - 1])) throw OutOfRange("etas");
    }
    std::vector<RegularizedProblem> probs;
    for (double eta : etas) probs.push_back(make_problem(e, eta, u0));
    return run_lockstep(probs, opts);
}

std::optional<double> eta_convergence_order(const std::vector<SimulationRun>& family) {
    if (family.size() < 3) return std::nullopt;
    const std::size_t k = family.size();
    auto diff = [&](std::size_t a, std::size_t b) {
        const auto& ua = family[a].final().values;
        const auto& ub = family[b].final().values;
        double d = 0;
        for (std::size_t i = 0; i < ua.size(); ++i) d = std::max(d, std::abs(ua[i] - ub[i]));
        return d;
    };
    const double d1 = diff(k - 3, k - 2), d2 = diff(k - 2, k - 1);
    const double ratio = family[k - 3].eta / family[k - 2].eta;
    if (!(d1 > 0 && d2 > 0 && ratio > 1)) return std::nullopt;
    return std::log(d1 / d2) / std::log(ratio);
}

std::optional<double> extrapolate_blowup_time(const SimulationRun& run) {
    if (run.verdict != Verdict::BlowUpDetected || run.series.size() < 3) return std::nullopt;
    const auto d = derive(run.exps);
    if (!d.alpha || *d.alpha <= 0) return std::nullopt;
    const double inv_alpha = 1.0 / *d.alpha;
    const double top = run.series.back().linf;
    std::vector<double> ts, ys;
    for (const auto& row : run.series)
        if (row.linf >= top / 10 && row.linf > 0) {
            ts.push_back(row.t);
            ys.push_back(std::pow(row.linf, -inv_alpha));
        }
    if (ts.size() < 3) return std::nullopt;
    // centered sums; the last decade can be a tiny interval far from t = 0
    const double n = ts.size();
    double tm = 0, ym = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        tm += ts[i] / n;
        ym += ys[i] / n;
    }
    double stt = 0, sty = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - tm) * (ts[i] - tm);
        sty += (ts[i] - tm) * (ys[i] - ym);
    }
    if (!(stt > 0)) return std::nullopt;
    const double slope = sty / stt;
    if (!(slope < 0)) return std::nullopt;
    return std::max(tm - ym / slope, run.t_end);
}

double forecast_r_max(const ExponentTriple& e, double support0, double mass0, double horizon,
                      std::optional<double> profile_support) {
    const auto d = derive(e);
    if (profile_support && d.beta_star)
        return 4.0 * std::max(support0, *profile_support * std::pow(horizon, *d.beta_star));
    // Barenblatt of mass M: R(t) = sqrt(C/k) t^b with C fixed by the mass.
    const double n = e.dim, m = e.m;
    const double a = n / (n * (m - 1) + 2), b = a / n, k = a * (m - 1) / (2 * m * n);
    const double gam = 1.0 / (m - 1);
    const double ball = std::pow(std::numbers::pi, n / 2) * std::tgamma(gam + 1) / std::tgamma(gam + 1 + n / 2);
    const double C = std::pow(mass0 * std::pow(k, n / 2) / ball, 1.0 / (gam + n / 2));
    const double spread = std::sqrt(C / k) * std::pow(horizon, b);
    return 4.0 * (support0 + spread);
}

}  // namespace hh
