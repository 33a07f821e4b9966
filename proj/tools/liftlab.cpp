// liftlab: consensus-optimization operator toolbox
//
// Subcommands: verify, rate, tune, sweep, simulate, mix, export-matrices.
// Exit codes: 0 success, 1 domain/verification failure, 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "liftlab/dynamics.hpp"
#include "liftlab/experiments.hpp"
#include "liftlab/graph.hpp"
#include "liftlab/io.hpp"
#include "liftlab/lifting.hpp"
#include "liftlab/operators.hpp"
#include "liftlab/spectral.hpp"
#include "liftlab/tuning.hpp"

using json = nlohmann::json;
using namespace liftlab;

namespace {

int g_exit = 0;

std::string fmt6(double v) {
    std::ostringstream o;
    o << std::setprecision(6) << v;
    return o.str();
}

uint64_t env_seed() {
    if (const char* s = std::getenv("LIFTLAB_SEED")) {
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid-input: LIFTLAB_SEED must be an integer");
        }
    }
    return 20260813ull;
}

void emit(const std::string& cmd, const json& inputs, const json& outputs) {
    json line;
    line["cmd"] = cmd;
    line["inputs"] = inputs;
    line["outputs"] = outputs;
    std::cout << line.dump() << '\n';
}

json spectrum_pairs(const SpectrumReport& rep, size_t cap) {
    json arr = json::array();
    for (size_t i = 0; i < rep.eigenvalues.size() && i < cap; ++i)
        arr.push_back({rep.eigenvalues[i].real(), rep.eigenvalues[i].imag()});
    return arr;
}

struct VerifyCmd {
    std::string graph;
    double gamma = 1.0, rho = 1.0, tol = 1e-10;
    bool as_json = false;

    void run() const {
        Graph g = parse_graph_spec(graph);
        FactorGraph fg = factor_graph(g);
        AdmmParams params = uniform_params(fg, gamma, rho);
        LiftingCertificate cert = verify_lifting(fg, g.q, params);
        bool pass = cert.residual_vec <= tol && cert.residual_mat <= tol;
        json out = {{"graph", graph},
                    {"n", g.n},
                    {"gamma", cert.gamma_used},
                    {"rho", rho},
                    {"alpha", cert.alpha_used},
                    {"residual_vec", cert.residual_vec},
                    {"residual_mat", cert.residual_mat},
                    {"min_entry", cert.min_entry_MA},
                    {"min_entry_index", {cert.min_entry_row, cert.min_entry_col}},
                    {"is_markov_lifting", cert.is_markov_lifting},
                    {"pass", pass}};
        if (as_json) {
            emit("verify", {{"graph", graph}, {"gamma", gamma}, {"rho", rho}, {"tol", tol}},
                 out);
        } else {
            std::cout << "graph " << graph << " (n=" << g.n << ", |Ehat|=" << fg.m2() << ")\n"
                      << "alpha = " << fmt6(cert.alpha_used) << " (gamma " << fmt6(gamma)
                      << ", rho " << fmt6(rho) << ")\n"
                      << "residual_vec = " << fmt6(cert.residual_vec) << "\n"
                      << "residual_mat = " << fmt6(cert.residual_mat) << "\n"
                      << "min entry of M_A = " << fmt6(cert.min_entry_MA) << " at ("
                      << cert.min_entry_row << "," << cert.min_entry_col << ")\n"
                      << "is_markov_lifting = " << (cert.is_markov_lifting ? "true" : "false")
                      << "\n"
                      << "verify: " << (pass ? "PASS" : "FAIL") << " (tol " << fmt6(tol) << ")\n";
        }
        if (!pass) g_exit = 1;
    }
};

struct RateCmd {
    std::string graph, alg;
    double alpha = -1.0, gamma = 1.0, rho = 1.0, unit_tol = 1e-9, C = 1.0;
    bool as_json = false, csv = false;

    void run() const {
        Graph g = parse_graph_spec(graph);
        FactorGraph fg = factor_graph(g);
        Mat T;
        if (alg == "gd") {
            if (alpha <= 0.0)
                throw std::invalid_argument("invalid-input: rate --alg gd needs --alpha > 0");
            T = build_T_G(fg, g.q, alpha);
        } else if (alg == "admm") {
            T = build_T_A(fg, g.q, uniform_params(fg, gamma, rho));
        } else {
            throw std::invalid_argument("invalid-input: --alg must be gd or admm");
        }
        SpectrumReport rep = convergence_rate(T, unit_tol);

        json inputs = {{"graph", graph}, {"alg", alg}, {"unit_tol", unit_tol}, {"C", C}};
        if (alg == "gd") inputs["alpha"] = alpha;
        else {
            inputs["gamma"] = gamma;
            inputs["rho"] = rho;
        }
        if (rep.status == RateStatus::diverged) {
            if (as_json)
                emit("rate", inputs,
                     {{"status", "diverged"}, {"unit_count", rep.unit_count},
                      {"eigenvalues", spectrum_pairs(rep, 16)}});
            else
                std::cout << "rate: diverged (spectral radius exceeds 1)\n";
            g_exit = 1;
            return;
        }
        if (rep.status == RateStatus::degenerate) {
            if (as_json)
                emit("rate", inputs,
                     {{"status", "degenerate-spectrum"}, {"unit_count", rep.unit_count}});
            else
                std::cout << "rate: degenerate-spectrum (no convergent eigenvalue)\n";
            g_exit = 1;
            return;
        }

        // structural unit eigenvalues expected: one consensus mode for gd;
        // for admm, the zero modes of K = (I - T_A)/gamma
        int expected_unit = 1;
        if (alg == "admm") {
            expected_unit = 0;
            for (const auto& lam : rep.eigenvalues)
                if (std::abs(1.0 - lam) <= gamma * 1e-8) ++expected_unit;
        }
        if (rep.unit_count > expected_unit)
            std::cerr << "warning: unit_count=" << rep.unit_count
                      << " exceeds expected consensus dimension " << expected_unit << "\n";

        ConvergenceTime ct = convergence_time(rep.tau, C);
        if (as_json) {
            emit("rate", inputs,
                 {{"status", "ok"},
                  {"tau", rep.tau},
                  {"R", ct.R},
                  {"C_assumed", C},
                  {"t_exact", ct.t_exact},
                  {"t_approx", ct.t_approx},
                  {"unit_count", rep.unit_count},
                  {"eigenvalues", spectrum_pairs(rep, rep.eigenvalues.size())}});
        } else if (csv) {
            std::cout << "graph,alg,alpha,gamma,rho,tau,R,C_assumed,t_exact,t_approx\n"
                      << graph << ',' << alg << ','
                      << (alg == "gd" ? fmt_double(alpha) : "") << ','
                      << (alg == "admm" ? fmt_double(gamma) : "") << ','
                      << (alg == "admm" ? fmt_double(rho) : "") << ','
                      << fmt_double(rep.tau) << ',' << fmt_double(ct.R) << ','
                      << fmt_double(C) << ',' << fmt_double(ct.t_exact) << ','
                      << fmt_double(ct.t_approx) << '\n';
        } else {
            std::cout << "tau = " << fmt6(rep.tau) << "\nR = " << fmt6(ct.R)
                      << "\ntime exact = " << fmt6(ct.t_exact)
                      << " approx = " << fmt6(ct.t_approx) << " (C_assumed " << fmt6(C)
                      << ")\nunit_count = " << rep.unit_count << "\ntop eigenvalues:";
            for (size_t i = 0; i < rep.eigenvalues.size() && i < 6; ++i)
                std::cout << " (" << fmt6(rep.eigenvalues[i].real()) << ","
                          << fmt6(rep.eigenvalues[i].imag()) << ")";
            std::cout << "\n";
        }
    }
};

struct SpecFlags {
    double gamma_min = -1, gamma_max = -1, rho_min = -1, rho_max = -1, refine_tol = -1;
    int gamma_points = -1, rho_points = -1, refine_budget = -1;
    std::string config;

    void add_to(CLI::App* sub) {
        sub->add_option("--config", config, "key=value search_spec file");
        sub->add_option("--gamma_min,--gamma-min", gamma_min);
        sub->add_option("--gamma_max,--gamma-max", gamma_max);
        sub->add_option("--gamma_points,--gamma-points", gamma_points);
        sub->add_option("--rho_min,--rho-min", rho_min);
        sub->add_option("--rho_max,--rho-max", rho_max);
        sub->add_option("--rho_points,--rho-points", rho_points);
        sub->add_option("--refine_tol,--refine-tol", refine_tol);
        sub->add_option("--refine_budget,--refine-budget", refine_budget);
    }

    SearchSpec resolve() const {
        SearchSpec spec;
        if (!config.empty()) spec = parse_search_spec_file(config, spec);
        if (gamma_min > 0) spec.gamma_min = gamma_min;
        if (gamma_max > 0) spec.gamma_max = gamma_max;
        if (gamma_points > 0) spec.gamma_points = gamma_points;
        if (rho_min > 0) spec.rho_min = rho_min;
        if (rho_max > 0) spec.rho_max = rho_max;
        if (rho_points > 0) spec.rho_points = rho_points;
        if (refine_tol > 0) spec.refine_tol = refine_tol;
        if (refine_budget > 0) spec.refine_budget = refine_budget;
        return spec;
    }

    json echo() const {
        const SearchSpec s = resolve();
        return {{"gamma_min", s.gamma_min},     {"gamma_max", s.gamma_max},
                {"gamma_points", s.gamma_points}, {"rho_min", s.rho_min},
                {"rho_max", s.rho_max},         {"rho_points", s.rho_points},
                {"refine_tol", s.refine_tol},   {"refine_budget", s.refine_budget}};
    }
};

struct TuneCmd {
    std::string graph, alg = "both";
    SpecFlags spec_flags;
    bool as_json = false;

    void run() const {
        Graph g = parse_graph_spec(graph);
        FactorGraph fg = factor_graph(g);
        json outputs;
        std::ostringstream human;
        if (alg == "gd" || alg == "both") {
            GdTuneResult closed = tune_gd(fg, g.q);
            GdTuneResult searched = tune_gd_search(fg, g.q);
            double R = 1.0 / (1.0 - closed.tau_star);
            outputs["gd"] = {{"alpha_star", closed.alpha_star},
                             {"tau_star", closed.tau_star},
                             {"R", R},
                             {"search_alpha", searched.alpha_star},
                             {"search_tau", searched.tau_star}};
            human << "gd: alpha_star = " << fmt6(closed.alpha_star)
                  << " tau_star = " << fmt6(closed.tau_star) << " R = " << fmt6(R)
                  << " (search agrees to "
                  << fmt6(std::abs(searched.tau_star - closed.tau_star)) << ")\n";
        }
        if (alg == "admm" || alg == "both") {
            AdmmTuneResult res = tune_admm(fg, g.q, spec_flags.resolve());
            double R = res.status == "failed" ? 0.0 : 1.0 / (1.0 - res.tau_star);
            outputs["admm"] = {{"gamma_star", res.gamma_star}, {"rho_star", res.rho_star},
                               {"tau_star", res.tau_star},     {"R", R},
                               {"status", res.status},         {"evals", res.evals}};
            human << "admm: gamma_star = " << fmt6(res.gamma_star)
                  << " rho_star = " << fmt6(res.rho_star)
                  << " tau_star = " << fmt6(res.tau_star) << " R = " << fmt6(R)
                  << " status = " << res.status << " evals = " << res.evals << "\n";
            if (res.status == "failed") g_exit = 1;
        }
        if (alg != "gd" && alg != "admm" && alg != "both")
            throw std::invalid_argument("invalid-input: --alg must be gd, admm or both");
        if (as_json)
            emit("tune", {{"graph", graph}, {"alg", alg}, {"search_spec", spec_flags.echo()}},
                 outputs);
        else
            std::cout << human.str();
    }
};

struct SweepCmd {
    std::string family, out;
    int from = -1, to = -1, step = -1, jobs = 0;
    bool parity = false, as_json = false;
    SpecFlags spec_flags;

    void run() const {
        int f = from, t = to, s = step;
        if (family == "cycle") {
            if (f < 0) f = 8;
            if (t < 0) t = 128;
            if (s < 0) s = 8;
        } else {
            if (f < 0) f = 3;
            if (t < 0) t = family == "torus" ? 10 : 12;
            if (s < 0) s = 1;
        }
        std::vector<int> indices = family_indices(family, f, t, s);
        SweepOptions opts;
        opts.spec = spec_flags.resolve();
        opts.parity = parity;
        opts.jobs = jobs > 0 ? jobs
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        std::vector<SweepRecord> records = run_sweep(family, indices, opts);

        if (!out.empty()) {
            std::ofstream of(out);
            if (!of) throw std::runtime_error("cannot write CSV to '" + out + "'");
            write_csv(records, of);
        } else if (!as_json) {
            write_csv(records, std::cout);
        }
        SweepSummary summary = summarize(records);
        bool any_failed = false;
        for (const SweepRecord& r : records)
            if (r.failed) {
                any_failed = true;
                std::cerr << "record " << family << ":" << r.index << " failed: " << r.error
                          << "\n";
            }
        if (as_json) {
            json inputs = {{"family", family}, {"from", f},   {"to", t},
                           {"step", s},        {"parity", parity}, {"jobs", opts.jobs},
                           {"out", out},       {"search_spec", spec_flags.echo()}};
            emit("sweep", inputs, json::parse(summary_json(summary)));
        } else {
            std::cout << summary_json(summary) << "\n";
        }
        if (any_failed) g_exit = 1;
    }
};

struct SimulateCmd {
    std::string graph, alg = "admm", z0_mode = "random", out;
    double gamma = 1.0, rho = 1.0, alpha = -1.0;
    int steps = 50;
    bool check_linear = false, full_state = false, as_json = false;

    void run() const {
        Graph g = parse_graph_spec(graph);
        FactorGraph fg = factor_graph(g);
        Vec z0;
        if (z0_mode == "random") {
            std::mt19937_64 rng(env_seed());
            std::uniform_real_distribution<double> dist(-1.0, 1.0);
            z0 = Vec::NullaryExpr(g.n, [&](Eigen::Index) { return dist(rng); });
        } else if (z0_mode == "ones") {
            z0 = Vec::Ones(g.n);
        } else if (z0_mode == "unit") {
            z0 = Vec::Zero(g.n);
            z0[0] = 1.0;
        } else {
            throw std::invalid_argument("invalid-input: --z0 must be random, ones or unit");
        }

        json inputs = {{"graph", graph}, {"alg", alg},   {"steps", steps},
                       {"z0", z0_mode},  {"gamma", gamma}, {"rho", rho}};
        json outputs;
        std::vector<double> residuals;
        bool diverged = false;

        if (alg == "admm") {
            AdmmParams params = uniform_params(fg, gamma, rho);
            AdmmTrace tr = run_admm(fg, g.q, params, z0, steps);
            for (const Vec& nvec : tr.n_hist) residuals.push_back(fixed_point_residual(nvec));
            diverged = tr.diverged;
            outputs = {{"steps", steps},
                       {"final_residual", residuals.back()},
                       {"max_linear_dev", tr.max_linear_dev},
                       {"max_rel_residual", tr.max_rel_residual},
                       {"diverged", tr.diverged}};
            if (check_linear) {
                bool ok = tr.max_linear_dev < 1e-9;
                std::cout << "check-linear max deviation " << fmt6(tr.max_linear_dev)
                          << (ok ? " < 1e-09: PASS" : " >= 1e-09: FAIL") << "\n";
                if (!ok) g_exit = 1;
            }
        } else if (alg == "gd") {
            if (alpha <= 0.0)
                throw std::invalid_argument("invalid-input: simulate --alg gd needs --alpha > 0");
            inputs["alpha"] = alpha;
            GdTrace tr = run_gd(fg, g.q, alpha, z0, steps);
            for (const Vec& x : tr.x_hist) residuals.push_back(fixed_point_residual(x));
            diverged = tr.diverged;
            outputs = {{"steps", steps},
                       {"final_residual", residuals.back()},
                       {"mean_drift", tr.mean_drift},
                       {"diverged", tr.diverged}};
        } else {
            throw std::invalid_argument("invalid-input: --alg must be gd or admm");
        }

        if (!out.empty()) {
            std::ofstream of(out);
            if (!of) throw std::runtime_error("cannot write trajectory to '" + out + "'");
            of << "t,residual\n";
            for (size_t t = 0; t < residuals.size(); ++t)
                of << t << ',' << fmt_double(residuals[t]) << '\n';
        }
        if (as_json) emit("simulate", inputs, outputs);
        else if (!check_linear)
            std::cout << "final residual = " << fmt6(residuals.back())
                      << (diverged ? " (diverged)" : "") << "\n";
        if (diverged) g_exit = 1;
    }
};

struct MixCmd {
    std::string chain;
    double switch_p = -1.0, stay = 0.5, eps = 0.25;
    int tmax = 100000;
    bool collapse = false, lazy = false, as_json = false;

    void run() const {
        auto colon = chain.find(':');
        std::string kind = chain.substr(0, colon);
        int n = 0;
        try {
            n = std::stoi(chain.substr(colon + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid-input: bad chain spec '" + chain + "'");
        }
        Chain c;
        if (kind == "lifted-cycle") {
            if (switch_p < 0)
                throw std::invalid_argument("invalid-input: lifted-cycle needs --switch");
            LiftedCycle lc = lift_cycle_chain(n, switch_p);
            c = collapse ? collapse_chain(lc.chain, lc.S) : lc.chain;
        } else if (kind == "cycle") {
            if (collapse)
                throw std::invalid_argument("invalid-input: --collapse applies to lifted-cycle");
            c = cycle_chain(n, stay);
        } else {
            throw std::invalid_argument("invalid-input: unknown chain spec '" + chain + "'");
        }
        if (lazy) c = lazy_chain(c);

        std::optional<int> H = mixing_time(c, eps, tmax);
        json inputs = {{"chain", chain},       {"switch", switch_p}, {"stay", stay},
                       {"collapse", collapse}, {"lazy", lazy},       {"eps", eps},
                       {"tmax", tmax}};
        if (as_json) {
            emit("mix", inputs,
                 {{"mixed", H.has_value()},
                  {"mixing_time", H ? json(*H) : json(nullptr)},
                  {"states", static_cast<int>(c.P.rows())}});
        } else if (H) {
            std::cout << "mixing time = " << *H << "\n";
        } else {
            std::cout << "not-mixed (t_max=" << tmax << ")\n";
        }
        if (!H) g_exit = 1;
    }
};

struct ExportCmd {
    std::string graph, outdir;
    double gamma = 1.0, rho = 1.0;
    bool as_json = false;

    void run() const {
        Graph g = parse_graph_spec(graph);
        FactorGraph fg = factor_graph(g);
        AdmmParams params = uniform_params(fg, gamma, rho);
        LiftingPair pair = make_lifting_pair(fg, g.q, params);
        Mat Q = build_Q(fg, g.q);
        Mat A = build_A(fg, g.q, params);
        Mat B = build_B(fg, params.rho);

        namespace fs = std::filesystem;
        fs::create_directories(outdir);
        auto put_mat = [&](const std::string& name, const Mat& M) {
            std::ofstream f(fs::path(outdir) / (name + ".csv"));
            write_matrix_csv(M, f);
        };
        auto put_vec = [&](const std::string& name, const Vec& v) {
            std::ofstream f(fs::path(outdir) / (name + ".csv"));
            write_vector_csv(v, f);
        };
        put_mat("S", fg.S);
        put_mat("Q", Q);
        put_mat("A", A);
        put_mat("B", B);
        put_mat("T_G", pair.T_G);
        put_mat("T_A", pair.T_A);
        put_mat("M_G", pair.M_G);
        put_mat("M_A", pair.M_A);
        put_vec("D_A", pair.D_A);
        put_vec("D_G", pair.D_G);
        put_vec("v_G", pair.v_G);
        put_vec("v_A", pair.v_A);

        json files;
        for (const char* name : {"S", "Q", "A", "B", "T_G", "T_A", "M_G", "M_A", "D_A", "D_G",
                                 "v_G", "v_A"})
            files[name] = std::string(name) + ".csv";
        json doc = {{"graph", graph},
                    {"dimensions", {{"n", g.n}, {"edges", g.m()}, {"ehat", fg.m2()}}},
                    {"params", {{"gamma", gamma}, {"rho", rho}, {"alpha", pair.alpha}}},
                    {"files", files}};
        std::ofstream jf(fs::path(outdir) / "pair.json");
        jf << doc.dump(2) << "\n";

        if (as_json)
            emit("export-matrices",
                 {{"graph", graph}, {"gamma", gamma}, {"rho", rho}, {"outdir", outdir}}, doc);
        else
            std::cout << "wrote 12 matrices + pair.json to " << outdir << "\n";
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"liftlab: distributed ADMM / gradient-descent consensus operator toolbox"};
    app.require_subcommand(1);

    VerifyCmd verify_cmd;
    auto* verify = app.add_subcommand("verify", "check the ADMM-lifts-GD operator identity");
    verify->add_option("--graph", verify_cmd.graph, "cycle:N|torus:K|barbell:K|k4minus|file:PATH")
        ->required();
    verify->add_option("--gamma", verify_cmd.gamma, "relaxation in (0,2)");
    verify->add_option("--rho", verify_cmd.rho, "uniform penalty > 0");
    verify->add_option("--tol", verify_cmd.tol, "residual tolerance");
    verify->add_flag("--json", verify_cmd.as_json, "machine-readable output");
    verify->callback([&] { verify_cmd.run(); });

    RateCmd rate_cmd;
    auto* rate = app.add_subcommand("rate", "spectral convergence rate of one operator");
    rate->add_option("--graph", rate_cmd.graph)->required();
    rate->add_option("--alg", rate_cmd.alg, "gd|admm")->required();
    rate->add_option("--alpha", rate_cmd.alpha, "gd step size");
    rate->add_option("--gamma", rate_cmd.gamma);
    rate->add_option("--rho", rate_cmd.rho);
    rate->add_option("--unit-tol", rate_cmd.unit_tol);
    rate->add_option("--C", rate_cmd.C, "constant of the convergence-time estimate");
    rate->add_flag("--csv", rate_cmd.csv, "print a single CSV row");
    rate->add_flag("--json", rate_cmd.as_json);
    rate->callback([&] { rate_cmd.run(); });

    TuneCmd tune_cmd;
    auto* tune = app.add_subcommand("tune", "optimize step size / (gamma, rho)");
    tune->add_option("--graph", tune_cmd.graph)->required();
    tune->add_option("--alg", tune_cmd.alg, "gd|admm|both");
    tune_cmd.spec_flags.add_to(tune);
    tune->add_flag("--json", tune_cmd.as_json);
    tune->callback([&] { tune_cmd.run(); });

    SweepCmd sweep_cmd;
    auto* sweep = app.add_subcommand("sweep", "tune both algorithms across a graph family");
    sweep->add_option("--family", sweep_cmd.family, "cycle|torus|barbell")->required();
    sweep->add_option("--from", sweep_cmd.from);
    sweep->add_option("--to", sweep_cmd.to);
    sweep->add_option("--step", sweep_cmd.step);
    sweep->add_option("--out", sweep_cmd.out, "CSV output path");
    sweep->add_flag("--parity", sweep_cmd.parity, "difference beta2 between same-parity indices");
    sweep->add_option("--jobs", sweep_cmd.jobs, "parallel workers (default: cores)");
    sweep_cmd.spec_flags.add_to(sweep);
    sweep->add_flag("--json", sweep_cmd.as_json);
    sweep->callback([&] { sweep_cmd.run(); });

    SimulateCmd sim_cmd;
    auto* sim = app.add_subcommand("simulate", "run the five-variable ADMM or GD recursion");
    sim->add_option("--graph", sim_cmd.graph)->required();
    sim->add_option("--alg", sim_cmd.alg, "admm|gd");
    sim->add_option("--gamma", sim_cmd.gamma);
    sim->add_option("--rho", sim_cmd.rho);
    sim->add_option("--alpha", sim_cmd.alpha, "gd step size");
    sim->add_option("--steps", sim_cmd.steps);
    sim->add_option("--z0", sim_cmd.z0_mode, "random|ones|unit");
    sim->add_flag("--check-linear", sim_cmd.check_linear,
                  "compare the recursion against matrix powers");
    sim->add_option("--out", sim_cmd.out, "trajectory CSV path");
    sim->add_flag("--json", sim_cmd.as_json);
    sim->callback([&] { sim_cmd.run(); });

    MixCmd mix_cmd;
    auto* mix = app.add_subcommand("mix", "mixing time of a finite chain");
    mix->add_option("--chain", mix_cmd.chain, "lifted-cycle:N|cycle:N")->required();
    mix->add_option("--switch", mix_cmd.switch_p, "direction-switch probability");
    mix->add_option("--stay", mix_cmd.stay, "self-loop probability for cycle:N");
    mix->add_option("--eps", mix_cmd.eps);
    mix->add_option("--tmax", mix_cmd.tmax);
    mix->add_flag("--collapse", mix_cmd.collapse, "measure the collapsed chain instead");
    mix->add_flag("--lazy", mix_cmd.lazy, "half-lazy transform (I+P)/2");
    mix->add_flag("--json", mix_cmd.as_json);
    mix->callback([&] { mix_cmd.run(); });

    ExportCmd export_cmd;
    auto* exp = app.add_subcommand("export-matrices", "dump all operators as CSV + JSON");
    exp->add_option("--graph", export_cmd.graph)->required();
    exp->add_option("--gamma", export_cmd.gamma);
    exp->add_option("--rho", export_cmd.rho);
    exp->add_option("--outdir", export_cmd.outdir)->required();
    exp->add_flag("--json", export_cmd.as_json);
    exp->callback([&] { export_cmd.run(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return g_exit;
}
