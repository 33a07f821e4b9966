#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "liftlab/graph.hpp"
#include "liftlab/operators.hpp"
#include "liftlab/tuning.hpp"

using namespace liftlab;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::string write_temp_spec(const std::string& body) {
    std::string path = "tuning_spec_tmp.cfg";
    std::ofstream os(path);
    os << body;
    return path;
}

}  // namespace

TEST_SUITE("tuning") {

TEST_CASE("gd closed form on the 4-cycle") {
    Graph g = build_cycle(4);
    FactorGraph fg = factor_graph(g);
    GdTuneResult r = tune_gd(fg, g.q);
    CHECK(r.lambda_max == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(r.lambda_2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.alpha_star == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r.tau_star == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("gd search agrees with the closed form") {
    std::vector<Graph> graphs = {build_cycle(4),  build_cycle(16),  build_cycle(32),
                                 build_torus(3),  build_torus(4),   build_barbell(3),
                                 build_barbell(5)};
    for (const Graph& g : graphs) {
        FactorGraph fg = factor_graph(g);
        GdTuneResult closed = tune_gd(fg, g.q);
        GdTuneResult searched = tune_gd_search(fg, g.q);
        CHECK(std::abs(searched.alpha_star - closed.alpha_star) <= 1e-6);
        CHECK(std::abs(searched.tau_star - closed.tau_star) <= 1e-6);
    }
}

TEST_CASE("gd search handles nonuniform weights") {
    Graph g = build_cycle(6);
    g.q << 0.5, 1.0, 1.5, 2.0, 2.5, 3.0;
    FactorGraph fg = factor_graph(g);
    GdTuneResult closed = tune_gd(fg, g.q);
    GdTuneResult searched = tune_gd_search(fg, g.q);
    CHECK(std::abs(searched.alpha_star - closed.alpha_star) <= 1e-6);
    CHECK(std::abs(searched.tau_star - closed.tau_star) <= 1e-6);
}

TEST_CASE("disconnected graphs are rejected") {
    Graph g;  // two disjoint edges
    g.n = 4;
    g.edges = {{0, 1}, {2, 3}};
    g.q = Vec::Ones(2);
    FactorGraph fg = factor_graph(g);
    CHECK_THROWS_AS(tune_gd(fg, g.q), std::runtime_error);
    AdmmTuneResult r = tune_admm(fg, g.q);
    CHECK(r.status == "failed");
}

TEST_CASE("admm tuning: 8-cycle reference") {
    Graph g = build_cycle(8);
    FactorGraph fg = factor_graph(g);
    AdmmTuneResult r = tune_admm(fg, g.q);
    CHECK(r.status == "converged");
    CHECK(std::abs(r.gamma_star - 1.5469181606870948) <= 1e-6);
    CHECK(std::abs(r.tau_star - 0.5469181606870954) <= 1e-6);
    CHECK(std::abs(r.rho_star - 1.414213562321345) / 1.414213562321345 <= 1e-6);
    CHECK(r.evals >= 42);
    CHECK(r.evals <= 200);
}

TEST_CASE("admm tuning: 32-cycle reference") {
    Graph g = build_cycle(32);
    FactorGraph fg = factor_graph(g);
    AdmmTuneResult r = tune_admm(fg, g.q);
    CHECK(r.status == "converged");
    CHECK(std::abs(r.gamma_star - 1.8354338879363177) <= 1e-5);
    CHECK(std::abs(r.tau_star - 0.8354338879363216) <= 1e-6);
    CHECK(std::abs(r.rho_star - 0.390180644017363) / 0.390180644017363 <= 1e-5);
}

TEST_CASE("admm tuning: 4-cycle attains the over-relaxation floor") {
    Graph g = build_cycle(4);
    FactorGraph fg = factor_graph(g);
    AdmmTuneResult r = tune_admm(fg, g.q);
    CHECK(std::abs(r.tau_star - 1.0 / 3.0) <= 1e-9);
    CHECK(std::abs(r.gamma_star - 4.0 / 3.0) <= 1e-5);
    CHECK(std::abs(r.rho_star - 2.0) <= 1e-4);
    // the two active eigenvalue branches coalesce exactly at (4/3, 2), so the
    // computed pair carries sqrt(eps)-level error there
    CHECK(admm_tau(fg, g.q, 4.0 / 3.0, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));
}

TEST_CASE("rate never beats the over-relaxation floor") {
    Graph g = build_cycle(4);
    FactorGraph fg = factor_graph(g);
    for (double gamma : {1.5, 0.6})
        for (double rho : {0.5, 2.0, 10.0}) {
            double t = admm_tau(fg, g.q, gamma, rho);
            CHECK(t >= std::abs(1.0 - gamma) - 1e-12);
        }
}

TEST_CASE("tuned point is a local minimum") {
    Graph g = build_cycle(8);
    FactorGraph fg = factor_graph(g);
    AdmmTuneResult r = tune_admm(fg, g.q);
    for (double dg : {-0.01, 0.01})
        for (double dr : {-0.01, 0.01}) {
            double t = admm_tau(fg, g.q, r.gamma_star * (1.0 + dg), r.rho_star * (1.0 + dr));
            CHECK(t >= r.tau_star - 1e-6);
        }
}

TEST_CASE("tuning is deterministic") {
    Graph g = build_cycle(8);
    FactorGraph fg = factor_graph(g);
    AdmmTuneResult a = tune_admm(fg, g.q);
    AdmmTuneResult b = tune_admm(fg, g.q);
    CHECK(a.gamma_star == b.gamma_star);
    CHECK(a.rho_star == b.rho_star);
    CHECK(a.tau_star == b.tau_star);
    CHECK(a.evals == b.evals);
    CHECK(a.status == b.status);
}

TEST_CASE("single edge tunes to exact one-step convergence") {
    Graph g = build_single_edge(1.0);
    FactorGraph fg = factor_graph(g);
    AdmmTuneResult r = tune_admm(fg, g.q);
    CHECK(r.tau_star <= 1e-9);
    CHECK(r.status != "failed");
    CHECK(r.evals <= 200);
    // tau = 0 along the curve rho = 2(gamma - 1); the optimizer lands on it
    CHECK(std::abs(r.rho_star - 2.0 * (r.gamma_star - 1.0)) <= 1e-6);

    Graph w = build_single_edge(0.7);
    FactorGraph fw = factor_graph(w);
    GdTuneResult gd = tune_gd(fw, w.q);
    CHECK(gd.alpha_star == doctest::Approx(1.0 / 1.4).epsilon(1e-12));
    CHECK(gd.tau_star == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("tau_from_mu scoring") {
    auto mu = [](std::initializer_list<double> vals) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(vals.size()));
        Eigen::Index i = 0;
        for (double x : vals) v[i++] = x;
        return v;
    };
    CHECK(tau_from_mu(mu({0.0, 0.5}), 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(tau_from_mu(mu({0.0, 0.5}), 2.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tau_from_mu(mu({0.0, -0.1}), 1.0) == kInf);  // lambda = 1.1 diverges
    CHECK(tau_from_mu(mu({0.0, 0.0}), 1.0) == kInf);   // two unit eigenvalues
    CHECK(tau_from_mu(mu({0.0}), 1.0) == kInf);        // nothing convergent
    CHECK(tau_from_mu(mu({0.0, 2.0}), 1.0) == kInf);   // lambda = -1 sits on the circle
}

TEST_CASE("search spec file parsing") {
    std::string path = write_temp_spec(
        "# comment line\n"
        "\n"
        "gamma_min = 0.1\n"
        "gamma_max=1.9\n"
        "  gamma_points = 11\n"
        "rho_min = 0.01\n"
        "rho_max = 100\n"
        "rho_points = 21\n"
        "refine_tol = 1e-7\n"
        "refine_budget = 150\n");
    SearchSpec spec = parse_search_spec_file(path);
    CHECK(spec.gamma_min == 0.1);
    CHECK(spec.gamma_max == 1.9);
    CHECK(spec.gamma_points == 11);
    CHECK(spec.rho_min == 0.01);
    CHECK(spec.rho_max == 100.0);
    CHECK(spec.rho_points == 21);
    CHECK(spec.refine_tol == 1e-7);
    CHECK(spec.refine_budget == 150);
    std::remove(path.c_str());

    SearchSpec defaults;
    CHECK(defaults.gamma_min == 0.05);
    CHECK(defaults.gamma_max == 1.95);
    CHECK(defaults.gamma_points == 25);
    CHECK(defaults.rho_min == 1e-3);
    CHECK(defaults.rho_max == 1e3);
    CHECK(defaults.rho_points == 41);
    CHECK(defaults.refine_tol == 1e-8);
    CHECK(defaults.refine_budget == 200);
}

TEST_CASE("search spec rejections") {
    SearchSpec spec;
    CHECK_THROWS_AS(apply_search_spec_kv(spec, "nope", "1"), std::invalid_argument);
    CHECK_THROWS_AS(apply_search_spec_kv(spec, "gamma_min", "abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_search_spec_file("no_such_spec_file.cfg"), std::invalid_argument);

    Graph g = build_cycle(4);
    FactorGraph fg = factor_graph(g);
    SearchSpec bad;
    bad.gamma_min = 0.0;  // must stay inside (0,2)
    CHECK_THROWS_AS(tune_admm(fg, g.q, bad), std::invalid_argument);
    bad = SearchSpec{};
    bad.rho_min = 10.0;
    bad.rho_max = 1.0;
    CHECK_THROWS_AS(tune_admm(fg, g.q, bad), std::invalid_argument);
    bad = SearchSpec{};
    bad.gamma_points = 1;
    CHECK_THROWS_AS(tune_admm(fg, g.q, bad), std::invalid_argument);
}

TEST_CASE("clamped window reports a boundary") {
    Graph g = build_cycle(4);
    FactorGraph fg = factor_graph(g);
    SearchSpec spec;
    spec.gamma_max = 0.9;  // optimum sits at gamma = 4/3, outside the window
    AdmmTuneResult r = tune_admm(fg, g.q, spec);
    CHECK(r.status == "boundary");
    CHECK(std::abs(r.gamma_star - 0.9) <= 1e-5);
}

}  // TEST_SUITE
