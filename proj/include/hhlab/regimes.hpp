#pragma once

#include <array>
#include <optional>
#include <string>

namespace hh {

// Parameters of  u_t = Lap(u^m) + |x|^sigma u^p  in dimension dim.
struct ExponentTriple {
    double m = 2.0;
    double p = 2.0;
    double sigma = -1.0;
    int dim = 3;

    bool operator==(const ExponentTriple&) const = default;
};

// Values closer than this (relative) to a regime boundary are snapped onto it,
// so that 7.0/3 and 2 + 1/3.0 classify identically.
inline constexpr double kBoundarySnap = 1e-13;

bool on_boundary(double p, double boundary);

ExponentTriple validate(double m, double p, double sigma, double dim);

struct DerivedConstants {
    double p_g = 0;
    double p_f = 0;
    double r0 = 0;
    double rc = 0;
    // backward exponents, undefined at p = p_g
    std::optional<double> alpha;
    std::optional<double> beta;
    // forward exponents, only for p < p_g
    std::optional<double> alpha_star;
    std::optional<double> beta_star;
    // comparison holds unconditionally for p above (or at, if !strict) this value
    double uniq_threshold = 0;
    bool uniq_strict = false;
    double omega_n = 0;  // volume of the unit ball
};

DerivedConstants derive(const ExponentTriple& e);

enum class RegimeTag { GlobalAllData, BlowUpAllData, Conditional };
enum class ComparisonTag { Unconditional, NeedsPositivityNearOrigin };

struct Regime {
    RegimeTag tag;
    ComparisonTag comparison;
};

Regime classify(const ExponentTriple& e);
std::string to_string(RegimeTag t);
std::string to_string(ComparisonTag t);

double unit_ball_volume(int dim);

// Weighted interpolation inequality parameters:
//   || |x|^g1 z ||_q1 <= C || |x|^g2 grad z ||_q2^a  || |x|^g3 z ||_q3^(1-a)
struct CknParams {
    double q1 = 2, q2 = 2, q3 = 2;
    double gamma1 = 0, gamma2 = 0, gamma3 = 0;
    double a = 0.5;
};

struct CknReport {
    // admissibility, integrability, dimensional balance, weight order, endpoint
    std::array<bool, 5> holds{};
    bool all() const { return holds[0] && holds[1] && holds[2] && holds[3] && holds[4]; }
};

inline constexpr std::array<const char*, 5> kCknConditionNames = {
    "admissible", "integrable", "balance", "weights", "endpoint"};

CknReport ckn_check(const CknParams& c, int dim);

// Parameter map that bounds  int |x|^sigma w^(p+r)  by the gradient of
// w^((m+r)/2) and the L^(r1+1) norm.
CknParams ckn_instantiation(const ExponentTriple& e, double r1, double r);

struct Prop32Exponents {
    double omega_r = 0;
    double mu_r = 0;
    std::optional<double> nu_r;  // absent when omega_r == 1
    double a = 0;                // from omega_r
    double one_minus_a = 0;      // from mu_r, independently
    double one_minus_nu_r1 = 0;  // closed form at r = r1
};

Prop32Exponents prop32_exponents(const ExponentTriple& e, double r1, double r);

// Closed form of 1 - nu_r for general r >= r1.
double one_minus_nu(const ExponentTriple& e, double r1, double r);

struct SubsolutionConstants {
    double alpha = 0;
    double beta = 0;
    double amplitude = 0;
    double a = 0;          // support radius of the profile
    double a_sq = 0;
    double z0 = 0;
    double threshold_pow = 0;  // right side of A^(p-p_g) >= A0^(p-p_g)
    double threshold = 0;      // A0 itself
    bool satisfied = false;
};

SubsolutionConstants subsolution_constants(const ExponentTriple& e, double amplitude);

// Exponent in the interpolation  ||w||_{r+1} <= C ||grad w^((m+r)/2)||^(2 Theta/(r+m)) ...
double gn_theta(const ExponentTriple& e, double r);
double gn_one_minus_theta(const ExponentTriple& e, double r);

// Critical-norm smallness constant for a given interpolation constant lambda.
double smallness_constant(const ExponentTriple& e, double lambda);

}  // namespace hh
