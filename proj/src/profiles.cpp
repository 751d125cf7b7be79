#include "hhlab/profiles.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <optional>
#include <ostream>

#include <fmt/format.h>

#include "hhlab/errors.hpp"

namespace hh {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

std::string to_string(ProfileKind k) {
    switch (k) {
        case ProfileKind::Forward: return "Forward";
        case ProfileKind::Backward: return "Backward";
        case ProfileKind::Exponential: return "Exponential";
        case ProfileKind::Kaplan: return "Kaplan";
    }
    return "?";
}

std::array<double, 2> profile_ode_rhs(ProfileKind kind, const ExponentTriple& e,
                                      const ProfileExponents& c, double y, double f, double flux) {
    const double n = e.dim, m = e.m, p = e.p, s = e.sigma;
    const double ys = std::pow(y, s);
    if (kind == ProfileKind::Kaplan) {
        const double v = std::max(f, 0.0);
        const double d2 = -(n - 1) * flux / y + std::pow(v, 1 / m) / (m - 1) - ys * v;
        return {flux, d2};
    }
    const double ff = std::max(f, 0.0);
    const double fprime = ff > 0 ? flux / (m * std::pow(ff, m - 1)) : 0.0;
    const double d2 = -(n - 1) * flux / y - ys * std::pow(ff, p) + c.a * ff - c.b * y * fprime;
    return {flux, d2};
}

namespace {

ProfileExponents exponents_for(ProfileKind kind, const ExponentTriple& e, double param) {
    const DerivedConstants d = derive(e);
    switch (kind) {
        case ProfileKind::Forward: return {*d.alpha_star, *d.beta_star};
        case ProfileKind::Backward: return {*d.alpha, *d.beta};
        case ProfileKind::Exponential: return {param, (e.m - 1) * param / 2};
        case ProfileKind::Kaplan: return {0, 0};
    }
    return {};
}

void check_regime(ProfileKind kind, const ExponentTriple& e) {
    const DerivedConstants d = derive(e);
    const bool at_pg = on_boundary(e.p, d.p_g);
    const bool at_m = on_boundary(e.p, e.m);
    bool ok = false;
    switch (kind) {
        case ProfileKind::Forward: ok = e.p < d.p_g && !at_pg; break;
        case ProfileKind::Exponential: ok = at_pg; break;
        case ProfileKind::Backward: ok = e.p > d.p_g && !at_pg && e.p < e.m && !at_m; break;
        case ProfileKind::Kaplan: ok = at_m; break;
    }
    if (!ok) throw RegimeMismatch(to_string(kind) + " profile not admissible at p=" + std::to_string(e.p));
}

enum class Outcome { Crossed, Turned };

// g / g(0) below this counts as reaching zero; near-tangent trajectories
// otherwise creep along at rounding level.
constexpr double kContact = 1e-11;

struct Trajectory {
    Outcome outcome;
    double end;       // crossing point or turning point
    double defect;    // |flux| * end / g0 at a crossing, g_min / g0 at a turn
};

// Integrates one trajectory in scaled variables (y = L s, g = g0 G) and
// classifies it. `sink`, if set, receives dense samples on [0, end].
class Shooter {
public:
    Shooter(ProfileKind kind, const ExponentTriple& e) : kind_(kind), e_(e) {}

    Trajectory integrate(double param, const std::vector<double>* sample_y = nullptr,
                         std::vector<State>* sample_out = nullptr) const {
        const double m = e_.m, p = e_.p, s = e_.sigma, n = e_.dim;
        const ProfileExponents c = exponents_for(kind_, e_, param);
        const double f0 = kind_ == ProfileKind::Exponential ? 1.0 : param;
        const double g0 = kind_ == ProfileKind::Kaplan ? f0 : std::pow(f0, m);
        // length scale balancing diffusion and the singular source
        double L;
        if (kind_ == ProfileKind::Kaplan)
            L = 1.0;
        else
            L = std::pow(f0, (m - p) / (s + 2));
        if (!std::isfinite(L) || L <= 0) L = 1.0;

        auto rhs = [&](const State& x, State& dx, double ss) {
            const double y = L * ss;
            const double g = g0 * x[0];
            const double flux = g0 / L * x[1];
            const double f = kind_ == ProfileKind::Kaplan ? g : (g > 0 ? std::pow(g, 1 / m) : 0.0);
            const auto d = profile_ode_rhs(kind_, e_, c, y, f, flux);
            dx[0] = x[1];
            dx[1] = d[1] * L * L / g0;
        };

        // series start near the origin
        const double y0 = 1e-6 * L;
        double c1, c2;
        if (kind_ == ProfileKind::Kaplan) {
            c1 = -f0 / ((s + 2) * (n + s));
            c2 = std::pow(f0, 1 / m) / (2 * n * (m - 1));
        } else {
            c1 = -std::pow(f0, p) / ((s + 2) * (n + s));
            c2 = c.a * f0 / (2 * n);
        }
        State x{(g0 + c1 * std::pow(y0, s + 2) + c2 * y0 * y0) / g0,
                ((s + 2) * c1 * std::pow(y0, s + 1) + 2 * c2 * y0) * L / g0};
        double ss = y0 / L;

        auto stepper = odeint::make_dense_output(1e-13, 1e-11, odeint::runge_kutta_dopri5<State>());
        stepper.initialize(x, ss, 1e-3 * ss + 1e-8);

        std::size_t next_sample = 0;
        auto emit = [&](double upto) {
            if (!sample_y) return;
            while (next_sample < sample_y->size() && (*sample_y)[next_sample] / L <= upto) {
                const double sy = (*sample_y)[next_sample] / L;
                State st;
                if (sy <= y0 / L) {
                    const double yy = (*sample_y)[next_sample];
                    st = {g0 + c1 * std::pow(std::max(yy, y0), s + 2) + c2 * yy * yy,
                          (s + 2) * c1 * std::pow(std::max(yy, y0), s + 1) + 2 * c2 * yy};
                } else {
                    stepper.calc_state(sy, st);
                    st = {g0 * st[0], g0 / L * st[1]};
                }
                sample_out->push_back(st);
                ++next_sample;
            }
        };

        const double s_max = 1e7;
        double g_min = x[0];
        for (int it = 0; it < 400'000; ++it) {
            const auto [t0, t1] = stepper.do_step(rhs);
            const State& cur = stepper.current_state();
            if (!std::isfinite(cur[0]) || !std::isfinite(cur[1]))
                return {Outcome::Turned, t1 * L, 1.0};
            if (cur[0] <= kContact) {
                // locate the zero of g inside [t0, t1] on the dense interpolant
                double a = t0, b = t1;
                State st;
                for (int k = 0; k < 80; ++k) {
                    const double mid = 0.5 * (a + b);
                    stepper.calc_state(mid, st);
                    (st[0] > kContact ? a : b) = mid;
                }
                stepper.calc_state(a, st);
                emit(a);
                return {Outcome::Crossed, a * L, std::abs(st[1]) * a};
            }
            if (cur[1] >= 0) {
                // turning point: flux changes sign with g still positive
                double a = t0, b = t1;
                State st;
                for (int k = 0; k < 80; ++k) {
                    const double mid = 0.5 * (a + b);
                    stepper.calc_state(mid, st);
                    (st[1] < 0 ? a : b) = mid;
                }
                stepper.calc_state(a, st);
                emit(a);
                return {Outcome::Turned, a * L, std::max(st[0], 0.0)};
            }
            g_min = std::min(g_min, cur[0]);
            emit(t1);
            if (t1 > s_max) return {Outcome::Turned, t1 * L, g_min};
        }
        return {Outcome::Turned, s_max * L, g_min};
    }

private:
    ProfileKind kind_;
    ExponentTriple e_;
};

}  // namespace

double Profile::at(double yy) const {
    if (y.empty() || yy < 0 || yy >= support) return 0.0;
    const double h = y[1] - y[0];
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(yy / h), y.size() - 2);
    const double w = (yy - y[i]) / h;
    return std::max(0.0, (1 - w) * f[i] + w * f[i + 1]);
}

double Profile::max() const { return f.empty() ? 0.0 : *std::max_element(f.begin(), f.end()); }

Profile shoot(ProfileKind kind, const ExponentTriple& e, const ShootOptions& opt) {
    check_regime(kind, e);
    Shooter sh(kind, e);

    // coarse logarithmic scan for a change of outcome
    const double dec = std::log10(opt.scan_hi / opt.scan_lo);
    const int npts = std::max(2, static_cast<int>(std::ceil(dec * opt.scan_per_decade)) + 1);
    std::optional<double> lo, hi;
    Outcome lo_out{};
    double prev = opt.scan_lo;
    Outcome prev_out = sh.integrate(prev).outcome;
    for (int i = 1; i < npts; ++i) {
        const double x = opt.scan_lo * std::pow(10.0, dec * i / (npts - 1));
        const Outcome o = sh.integrate(x).outcome;
        if (o != prev_out) {
            lo = prev;
            hi = x;
            lo_out = prev_out;
            break;
        }
        prev = x;
        prev_out = o;
    }
    if (!lo)
        throw NoSignChange(to_string(kind) + ": no change of shooting outcome in [" +
                           std::to_string(opt.scan_lo) + ", " + std::to_string(opt.scan_hi) + "]");

    double a = *lo, b = *hi;
    for (int k = 0; k < opt.max_bisections && (b - a) > 4e-16 * b; ++k) {
        const double mid = std::sqrt(a * b);
        const double mid2 = (mid > a && mid < b) ? mid : 0.5 * (a + b);
        if (sh.integrate(mid2).outcome == lo_out)
            a = mid2;
        else
            b = mid2;
    }
    const Trajectory ta = sh.integrate(a), tb = sh.integrate(b);
    const Trajectory& crossed = ta.outcome == Outcome::Crossed ? ta : tb;
    const double param = ta.outcome == Outcome::Crossed ? a : b;

    Profile prof;
    prof.kind = kind;
    prof.exps = e;
    prof.coef = exponents_for(kind, e, param);
    prof.shoot_param = param;
    prof.bracket = {*lo, *hi};
    prof.support = crossed.end;
    prof.residual = std::max(ta.defect, tb.defect);

    prof.y.resize(opt.samples);
    for (std::size_t i = 0; i < opt.samples; ++i)
        prof.y[i] = prof.support * double(i) / double(opt.samples - 1);
    prof.y.back() = prof.support * (1 - 1e-12);
    std::vector<State> st;
    sh.integrate(param, &prof.y, &st);
    prof.y.back() = prof.support;
    st.resize(opt.samples, State{0, 0});
    prof.f.resize(opt.samples);
    prof.flux.resize(opt.samples);
    for (std::size_t i = 0; i < opt.samples; ++i) {
        const double g = std::max(st[i][0], 0.0);
        prof.f[i] = kind == ProfileKind::Kaplan ? g : std::pow(g, 1 / e.m);
        prof.flux[i] = st[i][1];
    }
    prof.f.back() = 0.0;
    return prof;
}

double ode_residual(const Profile& prof, double lo, double hi) {
    const auto& y = prof.y;
    if (y.size() < 9) return 0;
    const double h = y[1] - y[0];
    const double m = prof.exps.m;
    const bool kap = prof.kind == ProfileKind::Kaplan;
    std::vector<double> g(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) g[i] = kap ? prof.f[i] : std::pow(prof.f[i], m);
    double worst = 0;
    for (std::size_t i = 2; i + 2 < y.size(); ++i) {
        if (y[i] < lo * prof.support || y[i] > hi * prof.support) continue;
        const double d1 = (-g[i + 2] + 8 * g[i + 1] - 8 * g[i - 1] + g[i - 2]) / (12 * h);
        const double d2 =
            (-g[i + 2] + 16 * g[i + 1] - 30 * g[i] + 16 * g[i - 1] - g[i - 2]) / (12 * h * h);
        const auto r = profile_ode_rhs(prof.kind, prof.exps, prof.coef, y[i], prof.f[i], d1);
        worst = std::max(worst, std::abs(d2 - r[1]));
    }
    return worst;
}

RadialField evaluate_selfsimilar(const Profile& prof, double t, const GridPtr& grid) {
    double amp, shrink;
    if (prof.kind == ProfileKind::Forward) {
        if (!(t > 0)) throw OutOfRange("t");
        amp = std::pow(t, prof.coef.a);
        shrink = std::pow(t, -prof.coef.b);
    } else if (prof.kind == ProfileKind::Exponential) {
        amp = std::exp(prof.coef.a * t);
        shrink = std::exp(-prof.coef.b * t);
    } else {
        throw RegimeMismatch("evaluate_selfsimilar needs a Forward or Exponential profile");
    }
    RadialField out(grid);
    const auto& c = grid->centers();
    for (std::size_t i = 0; i < out.size(); ++i) out.values[i] = amp * prof.at(c[i] * shrink);
    return out;
}

double subsolution_value(const ExponentTriple& e, double amplitude, double T, double t, double r) {
    const SubsolutionConstants k = subsolution_constants(e, amplitude);
    const double tau = T - t;
    const double y = r * std::pow(tau, k.beta);
    const double z = 1 - y * y / k.a_sq;
    if (z <= 0) return 0.0;
    return std::pow(tau, -k.alpha) * amplitude * std::pow(z, 1 / (e.m - 1));
}

RadialField subsolution_field(const ExponentTriple& e, double amplitude, double T, double t,
                              const GridPtr& grid) {
    if (!(t >= 0 && t < T)) throw OutOfRange("t");
    const SubsolutionConstants k = subsolution_constants(e, amplitude);
    RadialField out(grid);
    const double tau = T - t;
    const double scale = std::pow(tau, -k.alpha) * amplitude;
    const double shrink = std::pow(tau, k.beta);
    const auto& c = grid->centers();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double y = c[i] * shrink;
        const double z = 1 - y * y / k.a_sq;
        out.values[i] = z > 0 ? scale * std::pow(z, 1 / (e.m - 1)) : 0.0;
    }
    return out;
}

void write_profile(std::ostream& os, const Profile& prof, const std::string& config_hash) {
    os << fmt::format(
        "# profile kind={} m={:.17g} p={:.17g} sigma={:.17g} dim={} a={:.17g} b={:.17g} "
        "shoot_param={:.17g} support={:.17g} residual={:.6e} config_hash={}\n",
        to_string(prof.kind), prof.exps.m, prof.exps.p, prof.exps.sigma, prof.exps.dim, prof.coef.a,
        prof.coef.b, prof.shoot_param, prof.support, prof.residual, config_hash);
    os << "y,f,flux\n";
    for (std::size_t i = 0; i < prof.y.size(); ++i)
        os << fmt::format("{:.17g},{:.17g},{:.17g}\n", prof.y[i], prof.f[i], prof.flux[i]);
}

}  // namespace hh
