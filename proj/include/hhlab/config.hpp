#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hhlab/radial.hpp"
#include "hhlab/regimes.hpp"
#include "hhlab/solver.hpp"

namespace hh {

struct GridSpec {
    double r_max = 10;
    std::size_t cells = 400;
    double ratio = 1.0;  // 1 = uniform

    bool operator==(const GridSpec&) const = default;
};

// Named initial-data families.
//   bump        amplitude * (1 - (r/radius)^2)_+^2
//   indicator   amplitude on r < radius
//   barenblatt  porous-medium source solution at `time`, support `radius`
//   profile     self-similar or Kaplan profile of the current exponents
struct InitialSpec {
    std::string family = "bump";
    double amplitude = 1.0;
    double radius = 1.0;
    double time = 1.0;

    bool operator==(const InitialSpec&) const = default;
};

struct SolverSpec {
    double eta = 0.0;
    double horizon = 1.0;
    double m_stop = 0.0;
    double dt_floor = 0.0;
    double safety = 0.9;
    std::size_t max_steps = 200'000'000;
    double row_growth = 1.25;       // record a row when ||u||_inf grew by this factor
    double row_log_factor = 1.1;    // and on a log-spaced time grid
    double snapshot_every = 0.0;    // snapshot spacing in time, 0 = first and last only

    bool operator==(const SolverSpec&) const = default;
};

struct ExperimentConfig {
    std::string command = "simulate";
    ExponentTriple exps;
    GridSpec grid;
    InitialSpec initial;
    SolverSpec solver;
    std::vector<double> sweep_p;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int workers = 1;

    bool operator==(const ExperimentConfig&) const = default;
};

// key = value text with [sections]; unknown keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
// Canonical form: fixed key order, shortest round-trip doubles.
std::string serialize(const ExperimentConfig& c);
// SHA-256 of the canonical form without out_dir and workers, lowercase hex.
std::string config_hash(const ExperimentConfig& c);

GridPtr make_grid(const ExperimentConfig& c);
RadialField make_initial(const ExperimentConfig& c, const GridPtr& grid);
RunOptions make_run_options(const ExperimentConfig& c);

// Porous-medium source solution t^-a (C - k r^2 t^-2b)_+^(1/(m-1)), with C
// chosen so that the support at time t0 has radius R.
struct Barenblatt {
    double m = 2;
    int dim = 3;
    double C = 1;
    double a = 0, b = 0, k = 0;
    static Barenblatt with_support(double m, int dim, double R, double t0);
    double operator()(double t, double r) const;
    double support(double t) const;
};

}  // namespace hh
