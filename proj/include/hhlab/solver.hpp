#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hhlab/radial.hpp"
#include "hhlab/regimes.hpp"

namespace hh {

// Regularized Cauchy problem
//   u_t = Lap(u^m) + (|x|^2 + eta^2)^(sigma/2) u^p / (1 + eta u^(p-1)).
// eta = 0 selects the unregularized limit scheme (exact cell averages of
// |x|^sigma, plain u^p); every eta in (0,1) gives a globally Lipschitz source.
struct RegularizedProblem {
    ExponentTriple exps;
    double eta = 0.0;
    RadialField initial;
    bool diffusion = true;
    bool reaction = true;
    bool truncation_noop = true;  // 1/eta beyond r_max
};

// Builds the problem and zeroes u0 outside B(0, 1/eta).
RegularizedProblem make_problem(const ExponentTriple& e, double eta, const RadialField& u0);

// Reusable explicit Euler kernel for one problem.
class Integrator {
public:
    explicit Integrator(const RegularizedProblem& prob);

    // Largest dt keeping the update monotone (no safety factor applied).
    double stability_limit(const std::vector<double>& u) const;
    // Advances u in place; returns the total magnitude clipped at zero.
    double advance(std::vector<double>& u, double dt);

    const std::vector<double>& source_weights() const { return w_; }
    // Lipschitz bound of the source on [0, umax]
    double reaction_lipschitz(double umax) const;

private:
    RegularizedProblem prob_;
    std::vector<double> w_;      // cell averages of the potential
    std::vector<double> inv_v_;  // 1 / cell volume
    std::vector<double> g_;      // scratch for u^m
    double w_max_ = 0;
    double coef_max_ = 0;        // max (T_i + T_{i+1}) / V_i
    double cp_ = 1;              // sup of the saturated source derivative factor
};

double stable_dt(const RadialField& state, const RegularizedProblem& prob, double safety = 0.9);

struct StepResult {
    RadialField next;
    double clipped = 0;
};

StepResult step(const RadialField& state, const RegularizedProblem& prob, double dt);

// When to record a series row or a snapshot; any trigger that fires records.
struct Cadence {
    std::size_t every_steps = 0;  // 0 disables
    double every_dt = 0;          // 0 disables
    double log_start = 0;         // first log-spaced time (0 disables)
    double log_factor = 0;        // > 1 enables log spacing
    double growth = 0;            // > 1: record when ||u||_inf grew by this factor
};

struct RunOptions {
    double horizon = 1.0;
    double m_stop = 0;    // <= 0: 1e6 * ||u0||_inf
    double dt_floor = 0;  // <= 0: 1e-4 * first dt
    double safety = 0.9;
    double dt_max = std::numeric_limits<double>::infinity();
    double escape_tol = 1e-8;  // outer cell above escape_tol * ||u||_inf is an escape
    std::size_t max_steps = 200'000'000;
    Cadence rows{0, 0, 0, 0, 1.25};
    Cadence snapshots{0, 0, 0, 0, 0};
};

enum class Verdict { ReachedHorizon, BlowUpDetected };
std::string to_string(Verdict v);

struct SeriesRow {
    double t = 0;
    double l1 = 0;
    double lm1 = 0;                 // ||u||_{m+1}
    std::optional<double> lr0;      // ||u||_{r0+1}, only when r0 > -1
    double linf = 0;
    double energy = 0;
    double dt = 0;
};

struct Snapshot {
    double t = 0;
    RadialField u;
};

struct SimulationRun {
    ExponentTriple exps;
    double eta = 0;
    bool truncation_noop = true;
    RunOptions options;
    std::vector<Snapshot> snapshots;
    std::vector<SeriesRow> series;
    Verdict verdict = Verdict::ReachedHorizon;
    double t_end = 0;                    // horizon or detection time
    std::optional<double> t_max_estimate;  // extrapolated blow-up time
    double m_stop = 0;
    double dt_floor = 0;
    double clipped = 0;
    std::size_t steps = 0;

    const RadialField& initial() const { return snapshots.front().u; }
    const RadialField& final() const { return snapshots.back().u; }
};

SimulationRun run(const RegularizedProblem& prob, const RunOptions& opts);

// Advances several problems on one grid with a shared dt sequence (the
// minimum of their stable steps), so discrete ordering is preserved exactly.
// All runs stop together at the horizon or when any member blows up.
std::vector<SimulationRun> run_lockstep(const std::vector<RegularizedProblem>& probs,
                                        const RunOptions& opts);

std::vector<SimulationRun> eta_family(const ExponentTriple& e, const RadialField& u0,
                                      const std::vector<double>& etas, const RunOptions& opts);

// Observed convergence order of snapshots at the shared final time, from
// consecutive differences of an eta-family with constant ratio.
std::optional<double> eta_convergence_order(const std::vector<SimulationRun>& family);

// Extrapolated blow-up time from the last decade of ||u||_inf growth, using the
// backward self-similar law ||u||_inf ~ (T - t)^(-alpha).
std::optional<double> extrapolate_blowup_time(const SimulationRun& run);

// Default truncation radius: 4x the forecast support at the horizon. The
// forecast follows the forward self-similar spread rho * t^beta_star when a
// profile support rho is supplied (p < p_G), else the porous-medium spread of
// a Barenblatt solution carrying the initial mass.
double forecast_r_max(const ExponentTriple& e, double support0, double mass0, double horizon,
                      std::optional<double> profile_support = std::nullopt);

}  // namespace hh
