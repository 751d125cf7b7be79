#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "hhlab/radial.hpp"
#include "hhlab/regimes.hpp"

namespace hh {

enum class ProfileKind { Forward, Backward, Exponential, Kaplan };
std::string to_string(ProfileKind k);

// Coefficients of the  -a f + b y f'  terms in the profile equation.
struct ProfileExponents {
    double a = 0;
    double b = 0;
};

struct Profile {
    ProfileKind kind = ProfileKind::Forward;
    ExponentTriple exps;
    ProfileExponents coef;
    // uniform samples on [0, support]; `flux` is (f^m)' (v' for Kaplan)
    std::vector<double> y, f, flux;
    double support = 0;
    double shoot_param = 0;  // f(0), or the growth rate for Exponential
    double residual = 0;     // contact defect at the support edge
    std::array<double, 2> bracket{};

    double at(double yy) const;  // linear interpolation, 0 beyond the support
    double max() const;
};

// Derivatives (g', flux') of the first-order system in g = f^m (v for Kaplan)
// at y > 0.
std::array<double, 2> profile_ode_rhs(ProfileKind kind, const ExponentTriple& e,
                                      const ProfileExponents& c, double y, double f, double flux);

struct ShootOptions {
    double scan_lo = 1e-4;
    double scan_hi = 1e4;
    int scan_per_decade = 6;
    int max_bisections = 200;
    double rel_tol = 1e-11;
    std::size_t samples = 4001;
};

Profile shoot(ProfileKind kind, const ExponentTriple& e, const ShootOptions& opt = {});

// Max |residual| of the profile equation on y in [lo, hi] * support, using
// finite differences of the stored samples (independent of the integrator).
double ode_residual(const Profile& prof, double lo = 0.05, double hi = 0.95);

// Forward: t^a f(r t^-b).  Exponential: e^(a t) f(r e^(-b t)).
RadialField evaluate_selfsimilar(const Profile& prof, double t, const GridPtr& grid);

// (T-t)^-alpha A (1 - y^2/a^2)_+^(1/(m-1)),  y = r (T-t)^beta.
RadialField subsolution_field(const ExponentTriple& e, double amplitude, double T, double t,
                              const GridPtr& grid);
double subsolution_value(const ExponentTriple& e, double amplitude, double T, double t, double r);

void write_profile(std::ostream& os, const Profile& prof, const std::string& config_hash);

}  // namespace hh
