#include "hhlab/cli.hpp"

#include <CLI11.hpp>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "hhlab/acceptance.hpp"
#include "hhlab/errors.hpp"
#include "hhlab/profiles.hpp"

namespace fs = std::filesystem;

namespace hh {

void write_series_csv(std::ostream& os, const SimulationRun& run, const std::string& hash) {
    os << fmt::format("# series verdict={} t_end={:.17g} steps={} config_hash={}\n", to_string(run.verdict),
                      run.t_end, run.steps, hash);
    os << "t,l1,lm1,lr0,linf,energy,dt\n";
    for (const auto& r : run.series)
        os << fmt::format("{:.17g},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g}\n", r.t, r.l1, r.lm1,
                          r.lr0 ? fmt::format("{:.17g}", *r.lr0) : std::string(""), r.linf, r.energy, r.dt);
}

std::string classify_report(const ExponentTriple& e) {
    const DerivedConstants d = derive(e);
    const Regime g = classify(e);
    auto opt = [](const std::optional<double>& v) {
        return v ? fmt::format("{:.17g}", *v) : std::string("undefined");
    };
    std::string s;
    s += fmt::format("m={}\np={}\nsigma={}\ndim={}\n", e.m, e.p, e.sigma, e.dim);
    s += fmt::format("p_G={:.17g}\np_F={:.17g}\nr0={:.17g}\nr_c={:.17g}\n", d.p_g, d.p_f, d.r0, d.rc);
    s += fmt::format("alpha={}\nbeta={}\nalpha_star={}\nbeta_star={}\n", opt(d.alpha), opt(d.beta),
                     opt(d.alpha_star), opt(d.beta_star));
    s += fmt::format("regime={}\ncomparison={}\n", to_string(g.tag), to_string(g.comparison));
    return s;
}

std::string artifact_hash(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("compare", "cannot open " + path);
    std::string first;
    std::getline(in, first);
    const auto pos = first.find("config_hash=");
    if (pos == std::string::npos) return "";
    std::string h = first.substr(pos + 12);
    const auto end = h.find_first_of(" \t\r");
    return end == std::string::npos ? h : h.substr(0, end);
}

namespace {

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

struct PointResult {
    double p = 0;
    std::string regime, verdict;
    double t_end = 0, linf = 0;
    std::string hash;
};

PointResult simulate_point(ExperimentConfig c, const fs::path& dir) {
    c.command = "simulate";
    PointResult r;
    r.p = c.exps.p;
    r.regime = to_string(classify(c.exps).tag);
    r.hash = config_hash(c);
    const auto grid = make_grid(c);
    try {
        const auto run_ = run(make_problem(c.exps, c.solver.eta, make_initial(c, grid)), make_run_options(c));
        r.verdict = to_string(run_.verdict);
        r.t_end = run_.t_end;
        r.linf = run_.final().linf();
        std::ostringstream os;
        write_series_csv(os, run_, r.hash);
        write_text(dir / fmt::format("series_p{:.6f}.csv", c.exps.p), os.str());
    } catch (const DomainEscape& e) {
        r.verdict = "DomainEscape";
        r.t_end = e.time;
    }
    return r;
}

int cmd_classify(const ExperimentConfig& c, const fs::path& out) {
    const std::string rep = classify_report(c.exps) + "config_hash=" + config_hash(c) + "\n";
    std::cout << rep;
    fs::create_directories(out);
    write_text(out / "classify.txt", rep);
    return kExitOk;
}

int cmd_simulate(const ExperimentConfig& c, const fs::path& out) {
    const std::string hash = config_hash(c);
    const auto grid = make_grid(c);
    const auto prob = make_problem(c.exps, c.solver.eta, make_initial(c, grid));
    SimulationRun run_;
    try {
        run_ = run(prob, make_run_options(c));
    } catch (const DomainEscape& e) {
        std::cerr << e.what() << "\n";
        return kExitEscape;
    }
    fs::create_directories(out);
    write_text(out / "config.ini", "; config_hash=" + hash + "\n" + serialize(c));
    std::ostringstream series;
    write_series_csv(series, run_, hash);
    write_text(out / "series.csv", series.str());
    for (std::size_t i = 0; i < run_.snapshots.size(); ++i) {
        std::ostringstream f;
        f << fmt::format("# snapshot t={:.17g} config_hash={}\n", run_.snapshots[i].t, hash);
        write_field(f, run_.snapshots[i].u, hash);
        write_text(out / fmt::format("snapshot_{:04d}.field", i), f.str());
    }
    std::string summary = fmt::format("verdict={}\nt_end={:.17g}\nsteps={}\nclipped={:.6e}\n", to_string(run_.verdict),
                                      run_.t_end, run_.steps, run_.clipped);
    if (run_.t_max_estimate) summary += fmt::format("t_max_estimate={:.17g}\n", *run_.t_max_estimate);
    summary += fmt::format("truncation_noop={}\nconfig_hash={}\n", run_.truncation_noop, hash);
    std::cout << summary;
    write_text(out / "summary.txt", summary);
    return kExitOk;
}

int cmd_profile(const ExperimentConfig& c, const fs::path& out, const std::string& kind_name) {
    const DerivedConstants d = derive(c.exps);
    ProfileKind kind;
    if (!kind_name.empty()) {
        if (kind_name == "forward") kind = ProfileKind::Forward;
        else if (kind_name == "backward") kind = ProfileKind::Backward;
        else if (kind_name == "exponential") kind = ProfileKind::Exponential;
        else if (kind_name == "kaplan") kind = ProfileKind::Kaplan;
        else throw ConfigError("kind", "unknown profile kind " + kind_name);
    } else if (on_boundary(c.exps.p, c.exps.m)) {
        kind = ProfileKind::Kaplan;
    } else if (on_boundary(c.exps.p, d.p_g)) {
        kind = ProfileKind::Exponential;
    } else if (c.exps.p < d.p_g) {
        kind = ProfileKind::Forward;
    } else if (c.exps.p < c.exps.m) {
        kind = ProfileKind::Backward;
    } else {
        throw ConfigError("p", "no profile for p > m");
    }
    const Profile prof = shoot(kind, c.exps);
    const std::string hash = config_hash(c);
    fs::create_directories(out);
    std::ostringstream os;
    write_profile(os, prof, hash);
    write_text(out / "profile.csv", os.str());
    std::cout << fmt::format("kind={}\nshoot_param={:.17g}\nsupport={:.17g}\nresidual={:.6e}\node_residual={:.6e}\n"
                             "config_hash={}\n",
                             to_string(prof.kind), prof.shoot_param, prof.support, prof.residual,
                             ode_residual(prof), hash);
    return kExitOk;
}

int cmd_sweep(const ExperimentConfig& c, const fs::path& out) {
    fs::create_directories(out);
    std::vector<PointResult> results(c.sweep_p.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < c.sweep_p.size();) {
            try {
                ExperimentConfig pc = c;
                pc.exps = validate(c.exps.m, c.sweep_p[i], c.exps.sigma, c.exps.dim);
                pc.sweep_p.clear();
                results[i] = simulate_point(pc, out);
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    const int n = std::max(1, std::min<int>(c.workers, int(c.sweep_p.size())));
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);

    std::string table = fmt::format("# sweep config_hash={}\n", config_hash(c));
    table += "p,regime,verdict,t_end,linf_end,point_hash\n";
    for (const auto& r : results)
        table += fmt::format("{:.17g},{},{},{:.17g},{:.17g},{}\n", r.p, r.regime, r.verdict, r.t_end, r.linf, r.hash);
    write_text(out / "sweep.csv", table);
    std::cout << table;
    return kExitOk;
}

int cmd_verify(const std::vector<int>& ids, const std::vector<std::string>& compare) {
    if (!compare.empty()) {
        if (compare.size() != 2) throw ConfigError("compare", "needs exactly two artifacts");
        const std::string ha = artifact_hash(compare[0]), hb = artifact_hash(compare[1]);
        if (ha.empty() || hb.empty() || ha != hb) {
            std::cout << fmt::format("FAIL compare: config hashes differ ({} vs {})\n", ha.empty() ? "none" : ha,
                                     hb.empty() ? "none" : hb);
            return kExitVerify;
        }
        std::ifstream a(compare[0], std::ios::binary), b(compare[1], std::ios::binary);
        std::stringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        const bool same = sa.str() == sb.str();
        std::cout << fmt::format("{} compare: config_hash={} identical={}\n", same ? "PASS" : "FAIL", ha, same);
        return same ? kExitOk : kExitVerify;
    }
    bool all = true;
    for (int id : ids.empty() ? criterion_ids() : ids) {
        const auto r = run_criterion(id);
        std::cout << format_result(r) << std::endl;
        all = all && r.passed;
    }
    return all ? kExitOk : kExitVerify;
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Hardy-Henon porous-medium laboratory"};
    app.require_subcommand(1);
    std::string config_path, out_dir, kind;
    int workers = 0;
    long long seed = -1;
    double m = NAN, p = NAN, sigma = NAN, dim = NAN;
    std::vector<int> criteria;
    std::vector<std::string> compare;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config file");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--workers", workers, "worker threads")->check(CLI::Range(1, 1024));
        sub->add_option("--seed", seed, "random seed")->check(CLI::NonNegativeNumber);
    };
    auto* classify_cmd = app.add_subcommand("classify", "regime report for one exponent set");
    add_common(classify_cmd);
    classify_cmd->add_option("--m", m);
    classify_cmd->add_option("--p", p);
    classify_cmd->add_option("--sigma", sigma);
    classify_cmd->add_option("--dim", dim);
    auto* simulate_cmd = app.add_subcommand("simulate", "one solver run");
    add_common(simulate_cmd);
    auto* profile_cmd = app.add_subcommand("profile", "shoot a self-similar profile");
    add_common(profile_cmd);
    profile_cmd->add_option("--kind", kind, "forward|backward|exponential|kaplan");
    auto* sweep_cmd = app.add_subcommand("sweep", "phase-diagram table over p");
    add_common(sweep_cmd);
    auto* verify_cmd = app.add_subcommand("verify", "acceptance checks or artifact comparison");
    add_common(verify_cmd);
    verify_cmd->add_option("--criteria", criteria, "subset of criteria to run")->delimiter(',');
    verify_cmd->add_option("--compare", compare, "two artifacts to compare")->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "verify") return cmd_verify(criteria, compare);

        ExperimentConfig c;
        if (!config_path.empty()) {
            c = load_config(config_path);
        } else if (name == "classify") {
            if (std::isnan(m)) throw ConfigError("m", "missing");
            if (std::isnan(p)) throw ConfigError("p", "missing");
            if (std::isnan(sigma)) throw ConfigError("sigma", "missing");
            if (std::isnan(dim)) throw ConfigError("dim", "missing");
            try {
                c.exps = validate(m, p, sigma, dim);
            } catch (const OutOfRange& e) {
                throw ConfigError(e.field(), "out of range");
            }
        } else {
            throw ConfigError("config", "--config is required for " + name);
        }
        c.command = name;
        if (workers > 0) c.workers = workers;
        if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
        if (!out_dir.empty()) c.out_dir = out_dir;
        if (name == "sweep" && c.sweep_p.empty()) throw ConfigError("p", "sweep needs [sweep] p");
        const fs::path out(c.out_dir);
        if (name == "classify") return cmd_classify(c, out);
        if (name == "simulate") return cmd_simulate(c, out);
        if (name == "profile") return cmd_profile(c, out, kind);
        return cmd_sweep(c, out);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainEscape& e) {
        std::cerr << e.what() << "\n";
        return kExitEscape;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace hh
