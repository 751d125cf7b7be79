#include "hhlab/config.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hhlab/errors.hpp"
#include "hhlab/profiles.hpp"

namespace hh {

namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(key, "not a number: '" + raw + "'");
    return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& raw) {
    const std::string s = trim(raw);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw ConfigError(key, "not a non-negative integer: '" + raw + "'");
    return v;
}

// Reads the keys of one section, flagging anything unexpected.
class Section {
public:
    Section(const pt::ptree& root, std::string name, std::set<std::string> allowed)
        : name_(std::move(name)) {
        if (auto child = root.get_child_optional(name_)) {
            node_ = &*child;
            for (const auto& [k, v] : *child)
                if (!allowed.count(k)) throw ConfigError(k, "unknown key in [" + name_ + "]");
        }
    }
    std::optional<std::string> raw(const std::string& key) const {
        if (!node_) return std::nullopt;
        if (auto v = node_->get_optional<std::string>(key)) return trim(*v);
        return std::nullopt;
    }
    double num(const std::string& key, double def) const {
        auto r = raw(key);
        return r ? to_double(key, *r) : def;
    }
    double required(const std::string& key) const {
        auto r = raw(key);
        if (!r) throw ConfigError(key, "missing in [" + name_ + "]");
        return to_double(key, *r);
    }
    std::string str(const std::string& key, const std::string& def) const {
        auto r = raw(key);
        return r ? *r : def;
    }

private:
    std::string name_;
    const pt::ptree* node_ = nullptr;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    pt::ptree root;
    std::istringstream is(text);
    try {
        pt::read_ini(is, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("syntax", e.message() + " at line " + std::to_string(e.line()));
    }
    const std::set<std::string> sections{"run", "exponents", "grid", "initial", "solver", "sweep"};
    for (const auto& [k, v] : root)
        if (!sections.count(k)) throw ConfigError(k, "unknown section or key outside a section");

    ExperimentConfig c;
    Section run(root, "run", {"command", "out", "seed", "workers"});
    c.command = run.str("command", c.command);
    static const std::set<std::string> commands{"classify", "simulate", "profile", "sweep",
                                                "verify"};
    if (!commands.count(c.command)) throw ConfigError("command", "unknown command " + c.command);
    c.out_dir = run.str("out", c.out_dir);
    if (auto s = run.raw("seed")) c.seed = to_uint("seed", *s);
    if (auto w = run.raw("workers")) {
        const auto v = to_uint("workers", *w);
        if (v < 1 || v > 1024) throw ConfigError("workers", "must be in [1, 1024]");
        c.workers = static_cast<int>(v);
    }

    Section ex(root, "exponents", {"m", "p", "sigma", "dim"});
    const double m = ex.required("m");
    const double p = ex.required("p");
    const double sigma = ex.required("sigma");
    const double dim = ex.required("dim");
    try {
        c.exps = validate(m, p, sigma, dim);
    } catch (const OutOfRange& e) {
        throw ConfigError(e.field(), "out of range");
    }

    Section grid(root, "grid", {"r_max", "cells", "ratio"});
    c.grid.r_max = grid.num("r_max", c.grid.r_max);
    if (auto s = grid.raw("cells")) c.grid.cells = to_uint("cells", *s);
    c.grid.ratio = grid.num("ratio", c.grid.ratio);
    if (!(c.grid.r_max > 0)) throw ConfigError("r_max", "must be positive");
    if (c.grid.cells < 2) throw ConfigError("cells", "need at least 2");
    if (!(c.grid.ratio >= 1)) throw ConfigError("ratio", "must be >= 1");

    Section init(root, "initial", {"family", "amplitude", "radius", "time"});
    c.initial.family = init.str("family", c.initial.family);
    static const std::set<std::string> families{"bump", "indicator", "barenblatt", "profile"};
    if (!families.count(c.initial.family))
        throw ConfigError("family", "unknown family " + c.initial.family);
    c.initial.amplitude = init.num("amplitude", c.initial.amplitude);
    c.initial.radius = init.num("radius", c.initial.radius);
    c.initial.time = init.num("time", c.initial.time);
    if (!(c.initial.amplitude > 0)) throw ConfigError("amplitude", "must be positive");
    if (!(c.initial.radius > 0)) throw ConfigError("radius", "must be positive");
    if (!(c.initial.time > 0)) throw ConfigError("time", "must be positive");

    Section sol(root, "solver", {"eta", "horizon", "m_stop", "dt_floor", "safety", "max_steps",
                                 "row_growth", "row_log_factor", "snapshot_every"});
    auto& s = c.solver;
    s.eta = sol.num("eta", s.eta);
    s.horizon = sol.num("horizon", s.horizon);
    s.m_stop = sol.num("m_stop", s.m_stop);
    s.dt_floor = sol.num("dt_floor", s.dt_floor);
    s.safety = sol.num("safety", s.safety);
    if (auto v = sol.raw("max_steps")) s.max_steps = to_uint("max_steps", *v);
    s.row_growth = sol.num("row_growth", s.row_growth);
    s.row_log_factor = sol.num("row_log_factor", s.row_log_factor);
    s.snapshot_every = sol.num("snapshot_every", s.snapshot_every);
    if (!(s.eta >= 0 && s.eta < 1)) throw ConfigError("eta", "must be in [0, 1)");
    if (!(s.horizon > 0)) throw ConfigError("horizon", "must be positive");
    if (!(s.safety > 0 && s.safety < 1)) throw ConfigError("safety", "must be in (0, 1)");
    if (!(s.snapshot_every >= 0)) throw ConfigError("snapshot_every", "must be >= 0");

    Section sw(root, "sweep", {"p"});
    if (auto list = sw.raw("p")) {
        std::stringstream ss(*list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const double v = to_double("p", item);
            if (!(v > 1)) throw ConfigError("p", "sweep values must exceed 1");
            c.sweep_p.push_back(v);
        }
        if (c.sweep_p.empty()) throw ConfigError("p", "empty sweep list");
    }
    if (c.command == "sweep" && c.sweep_p.empty()) throw ConfigError("p", "sweep needs [sweep] p");
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize(const ExperimentConfig& c) {
    std::string out;
    auto line = [&](const std::string& k, const std::string& v) { out += k + " = " + v + "\n"; };
    auto num = [](double v) { return fmt::format("{}", v); };
    out += "[run]\n";
    line("command", c.command);
    line("out", c.out_dir);
    line("seed", std::to_string(c.seed));
    line("workers", std::to_string(c.workers));
    out += "[exponents]\n";
    line("m", num(c.exps.m));
    line("p", num(c.exps.p));
    line("sigma", num(c.exps.sigma));
    line("dim", std::to_string(c.exps.dim));
    out += "[grid]\n";
    line("r_max", num(c.grid.r_max));
    line("cells", std::to_string(c.grid.cells));
    line("ratio", num(c.grid.ratio));
    out += "[initial]\n";
    line("family", c.initial.family);
    line("amplitude", num(c.initial.amplitude));
    line("radius", num(c.initial.radius));
    line("time", num(c.initial.time));
    out += "[solver]\n";
    line("eta", num(c.solver.eta));
    line("horizon", num(c.solver.horizon));
    line("m_stop", num(c.solver.m_stop));
    line("dt_floor", num(c.solver.dt_floor));
    line("safety", num(c.solver.safety));
    line("max_steps", std::to_string(c.solver.max_steps));
    line("row_growth", num(c.solver.row_growth));
    line("row_log_factor", num(c.solver.row_log_factor));
    line("snapshot_every", num(c.solver.snapshot_every));
    if (!c.sweep_p.empty()) {
        out += "[sweep]\n";
        std::string list;
        for (std::size_t i = 0; i < c.sweep_p.size(); ++i)
            list += (i ? ", " : "") + num(c.sweep_p[i]);
        line("p", list);
    }
    return out;
}

std::string config_hash(const ExperimentConfig& c) {
    // where results go and how many threads produce them does not change them
    ExperimentConfig k = c;
    k.out_dir = "";
    k.workers = 1;
    const std::string text = serialize(k);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256 failed");
    std::string hex;
    for (unsigned i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
    return hex;
}

GridPtr make_grid(const ExperimentConfig& c) {
    return RadialGrid::graded(c.exps.dim, c.grid.r_max, c.grid.cells, c.grid.ratio);
}

Barenblatt Barenblatt::with_support(double m, int dim, double R, double t0) {
    Barenblatt b;
    b.m = m;
    b.dim = dim;
    b.a = dim / (dim * (m - 1) + 2.0);
    b.b = b.a / dim;
    b.k = b.a * (m - 1) / (2 * m * dim);
    b.C = b.k * R * R * std::pow(t0, -2 * b.b);
    return b;
}

double Barenblatt::operator()(double t, double r) const {
    const double z = C - k * r * r * std::pow(t, -2 * b);
    return z > 0 ? std::pow(t, -a) * std::pow(z, 1 / (m - 1)) : 0.0;
}

double Barenblatt::support(double t) const { return std::sqrt(C / k) * std::pow(t, b); }

RadialField make_initial(const ExperimentConfig& c, const GridPtr& grid) {
    const auto& in = c.initial;
    const auto& r = grid->centers();
    RadialField u(grid);
    if (in.family == "bump") {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double z = 1 - (r[i] / in.radius) * (r[i] / in.radius);
            u.values[i] = z > 0 ? in.amplitude * z * z : 0.0;
        }
    } else if (in.family == "indicator") {
        for (std::size_t i = 0; i < u.size(); ++i) u.values[i] = r[i] < in.radius ? in.amplitude : 0.0;
    } else if (in.family == "barenblatt") {
        const auto b = Barenblatt::with_support(c.exps.m, c.exps.dim, in.radius, in.time);
        for (std::size_t i = 0; i < u.size(); ++i) u.values[i] = b(in.time, r[i]);
    } else if (in.family == "profile") {
        const ExponentTriple& e = c.exps;
        const DerivedConstants d = derive(e);
        if (on_boundary(e.p, e.m)) {
            // separable blow-up solution, blows up at t = 1/amplitude
            const Profile v = shoot(ProfileKind::Kaplan, e);
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] = in.amplitude * std::pow(std::max(v.at(r[i]), 0.0), 1 / e.m);
        } else if (on_boundary(e.p, d.p_g)) {
            return evaluate_selfsimilar(shoot(ProfileKind::Exponential, e), in.time, grid);
        } else if (e.p < d.p_g) {
            return evaluate_selfsimilar(shoot(ProfileKind::Forward, e), in.time, grid);
        } else if (e.p < e.m) {
            // backward profile at t = 0 for blow-up time `time`
            const Profile f = shoot(ProfileKind::Backward, e);
            const double T = in.time;
            for (std::size_t i = 0; i < u.size(); ++i)
                u.values[i] = std::pow(T, -*d.alpha) * f.at(r[i] * std::pow(T, *d.beta));
        } else {
            throw ConfigError("family", "no profile for p > m unless p = m");
        }
    } else {
        throw ConfigError("family", "unknown family " + in.family);
    }
    return u;
}

RunOptions make_run_options(const ExperimentConfig& c) {
    RunOptions o;
    const auto& s = c.solver;
    o.horizon = s.horizon;
    o.m_stop = s.m_stop;
    o.dt_floor = s.dt_floor;
    o.safety = s.safety;
    o.max_steps = s.max_steps;
    o.rows = Cadence{0, 0, s.horizon * 1e-4, s.row_log_factor, s.row_growth};
    o.snapshots = Cadence{0, s.snapshot_every, 0, 0, 0};
    return o;
}

}  // namespace hh
