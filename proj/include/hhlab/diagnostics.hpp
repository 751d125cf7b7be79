#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hhlab/profiles.hpp"
#include "hhlab/radial.hpp"
#include "hhlab/regimes.hpp"
#include "hhlab/solver.hpp"

namespace hh {

struct EnergyReport {
    double dirichlet = 0;  // ||grad v^m||^2 / 2
    double potential = 0;  // m/(m+p) int |x|^sigma v^(m+p)
    double total = 0;
};

EnergyReport energy(const RadialField& f, const ExponentTriple& e);

struct BlowUpFunctional {
    double I = 0;  // ||u||_{m+1}^{m+1}
    double E = 0;
    std::optional<double> kaplan;  // int u v*
};

BlowUpFunctional blowup_functional(const RadialField& u, const ExponentTriple& e,
                                   const RadialField* vstar = nullptr);

enum class FitModel { PowerLaw, Exponential };

struct RateFit {
    double t_lo = 0, t_hi = 0;
    FitModel model = FitModel::PowerLaw;
    double fitted = 0;     // exponent or rate
    double intercept = 0;  // log-prefactor
    double r_squared = 0;
    std::size_t points = 0;
    // fits below this goodness are reported but carry no verdict
    bool conclusive() const { return r_squared >= 0.99; }
};

RateFit rate_fit(const std::vector<double>& t, const std::vector<double>& y, FitModel model,
                 double t_lo, double t_hi);

struct BoundCheck {
    double K = 0;
    double t_hat = 0;
    double rate = 0;        // -1/(p-1)
    double t_upper = 0;     // blow-up time bound implied at t = 0
    double window_lo = 0, window_hi = 0;
    double max_ratio = 0;   // max of ||u||_{m+1} (t_hat - t)^{1/(p-1)} / K over the window
    std::size_t rows = 0;
    bool passed = false;
};

BoundCheck blowup_bound_check(const SimulationRun& run, const ExponentTriple& e);

struct KaplanReport {
    std::vector<double> t, J, lower;
    double C = 0;           // constant of the differential inequality, before 1/(m-1)
    double t_bound = 0;     // divergence time of the lower bound
    double t_detect = 0;
    double effective_rate = 0;  // -d/dt J^(1-m), least squares over the run
    bool nondecreasing = false;
    bool dominates = false;     // J >= lower wherever the bound is finite
    bool consistent = false;    // t_detect <= t_bound <= 3 t_detect
};

KaplanReport kaplan_monitor(const SimulationRun& run, const Profile& vstar, double scale = 1.0);

// t^(-a) ||u(t) - U(t)||_inf at every snapshot with t > 0.
std::vector<std::pair<double, double>> selfsim_convergence(const SimulationRun& run,
                                                           const Profile& prof);

struct SubsolutionResidual {
    double max_residual = 0;  // max over cells of dS/dt - Lap S^m - |x|^sigma S^p
    double dt_scale = 0;      // ||dS/dt||_inf
    double violation = 0;     // max(max_residual, 0) / dt_scale
    double support_max = 0;   // max_residual restricted to cells where S > 0
};

// Discrete residual of the backward subsolution at time t on `grid`: central
// difference in time with step `dt_fd`, module Laplacian, exact cell averages
// of the potential.
SubsolutionResidual subsolution_residual(const ExponentTriple& e, double amplitude, double T,
                                         double t, const GridPtr& grid, double dt_fd);

double lemma35_ratio(double m, double p, double tau, double X, double Y);
double lemma35_test(double m, double p, double tau, std::size_t samples, std::uint64_t seed);
// Largest relative change of the ratio under exact binary dilations (X,Y) -> (2^k X, 2^k Y).
double lemma35_scale_deviation(double m, double p, double tau, std::size_t samples,
                               std::uint64_t seed);
double lemma35_exponent_sum(double m, double p, double tau);

// LHS / RHS of the weighted interpolation inequality with C = 1.
double ckn_ratio(const CknParams& params, const RadialField& trial);
RadialField ckn_trial(const GridPtr& grid, double radius, int k);

struct CknLowerBound {
    double lambda_lower = 0;
    std::size_t trials = 0;
};

CknLowerBound ckn_lambda_lower(const CknParams& params, const GridPtr& grid, int radii = 12);

struct ThresholdResult {
    double amp_lo = 0, amp_hi = 0;    // global-so-far / blow-up amplitudes
    double norm_lo = 0, norm_hi = 0;  // matching ||u0||_{r0+1}
    std::vector<double> widths;       // bracket width after each bisection
    double lambda_lower = 0;
    double c0_informational = 0;      // smallness constant with lambda_lower
    std::size_t runs = 0;
};

using DataFamily = std::function<RadialField(double amplitude)>;

ThresholdResult smallness_threshold(const ExponentTriple& e, const DataFamily& family,
                                    const RunOptions& opts, double amp_lo, double amp_hi,
                                    int bisections);

}  // namespace hh
