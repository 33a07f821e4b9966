#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "liftlab/graph.hpp"
#include "liftlab/lifting.hpp"
#include "liftlab/operators.hpp"

using namespace liftlab;

TEST_SUITE("lifting") {

TEST_CASE("certificate holds across the parameter grid") {
    std::vector<Graph> graphs = {build_cycle(4), build_cycle(8), build_torus(3),
                                 build_barbell(3), build_complete_minus_edge(4)};
    for (const Graph& g : graphs) {
        FactorGraph fg = factor_graph(g);
        for (double gamma : {0.5, 1.5})
            for (double rho : {0.1, 10.0}) {
                LiftingCertificate cert = verify_lifting(fg, g.q, uniform_params(fg, gamma, rho));
                CHECK(cert.residual_vec <= 1e-10);
                CHECK(cert.residual_mat <= 1e-10);
                CHECK(cert.gamma_used == gamma);
                CHECK(cert.rho_min == rho);
                CHECK(cert.rho_max == rho);
            }
    }
}

TEST_CASE("certificate detects a broken identity") {
    Graph g = build_cycle(8);
    FactorGraph fg = factor_graph(g);
    AdmmParams params = uniform_params(fg, 1.0, 1.0);
    LiftingPair pair = make_lifting_pair(fg, g.q, params);
    pair.T_G = build_T_G(fg, g.q, pair.alpha * 1.1);  // wrong step size
    pair.M_G = build_M(pair.T_G, pair.D_G);
    LiftingCertificate cert = certificate_for(pair, fg);
    CHECK(cert.residual_mat > 1e-3);

    FactorGraph other = factor_graph(build_cycle(6));
    CHECK_THROWS_AS(certificate_for(pair, other), std::invalid_argument);
}

TEST_CASE("k4minus never yields a markov lifting") {
    Graph g = build_complete_minus_edge(4);
    FactorGraph fg = factor_graph(g);
    LiftingCertificate cert = verify_lifting(fg, g.q, uniform_params(fg, 1.0, 1.0));
    CHECK(cert.min_entry_MA < -1e-12);
    CHECK_FALSE(cert.is_markov_lifting);
    CHECK(cert.min_entry_row >= 0);
    CHECK(cert.min_entry_col >= 0);
    CHECK(cert.min_entry_MA ==
          cert.min_entry_MA);  // well-defined even when negative
}

TEST_CASE("C4 at small step size is a markov lifting") {
    Graph g = build_cycle(4);
    FactorGraph fg = factor_graph(g);
    // gamma*rho <= 1/4 keeps the diagonal 1 - 4*gamma*rho nonnegative
    LiftingCertificate cert = verify_lifting(fg, g.q, uniform_params(fg, 0.25, 1.0));
    CHECK(cert.min_entry_MA >= -1e-12);
    CHECK(cert.is_markov_lifting);
}

TEST_CASE("sign witness: uniform penalties") {
    SignWitness w = opposite_signs_witness(Vec::Ones(10), 1.0);
    CHECK(w.t21 == 0.0);  // r12 == r22 kills both corner entries
    CHECK(w.t34 == 0.0);
    CHECK(w.t24 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(w.t31 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("sign witness: random penalties keep the pattern") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> dist(0.3, 3.0);
    for (double gamma : {0.7, 1.3})
        for (int draw = 0; draw < 6; ++draw) {
            Vec rho = Vec::NullaryExpr(10, [&](Eigen::Index) { return dist(rng); });
            // no-throw certifies the closed forms track build_T_A to 1e-12
            SignWitness w = opposite_signs_witness(rho, gamma);
            CHECK(w.t24 > 0.0);
            CHECK(w.t31 > 0.0);
            CHECK(w.t21 * w.t34 <= 0.0);
            if (std::abs(rho[1] - rho[6]) > 1e-9) CHECK(w.t21 * w.t34 < 0.0);
        }
    CHECK_THROWS_AS(opposite_signs_witness(Vec::Ones(9), 1.0), std::invalid_argument);
}

TEST_CASE("collapse of the lifted cycle is the lazy cycle walk") {
    for (int n : {8, 16}) {
        double p = 1.0 / n;
        LiftedCycle lc = lift_cycle_chain(n, p);
        Chain collapsed = collapse_chain(lc.chain, lc.S);
        Chain base = cycle_chain(n, p);
        CHECK((collapsed.P - base.P).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((collapsed.pi - base.pi).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((collapsed.P * Vec::Ones(n) - Vec::Ones(n)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("collapse validation") {
    LiftedCycle lc = lift_cycle_chain(4, 0.25);
    Mat S_bad = Mat::Zero(8, 4);  // a zero column gives an empty collapsed state
    S_bad.col(0).setOnes();
    CHECK_THROWS_AS(collapse_chain(lc.chain, S_bad), std::runtime_error);
    CHECK_THROWS_AS(collapse_chain(lc.chain, Mat::Zero(6, 3)), std::invalid_argument);
}

TEST_CASE("lifted cycle structure") {
    int n = 5;
    double p = 0.2;
    LiftedCycle lc = lift_cycle_chain(n, p);
    REQUIRE(lc.chain.P.rows() == 2 * n);
    for (int i = 0; i < n; ++i) {
        CHECK(lc.chain.P(i, (i + 1) % n) == 1.0 - p);
        CHECK(lc.chain.P(i, n + i) == p);
        CHECK(lc.chain.P(n + i, n + (i - 1 + n) % n) == 1.0 - p);
        CHECK(lc.chain.P(n + i, i) == p);
        CHECK(lc.chain.P.row(i).sum() == 1.0);
        CHECK(lc.chain.P.row(n + i).sum() == 1.0);
        CHECK(lc.S.col(i).sum() == 2.0);
    }
    CHECK(lc.chain.pi.sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(lift_cycle_chain(2, 0.25), std::invalid_argument);
    CHECK_THROWS_AS(lift_cycle_chain(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(lift_cycle_chain(8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cycle_chain(8, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cycle_chain(8, -0.1), std::invalid_argument);
}

TEST_CASE("lazy transform preserves the stationary vector") {
    Chain c = cycle_chain(7, 0.0);
    Chain l = lazy_chain(c);
    CHECK((l.P * Vec::Ones(7) - Vec::Ones(7)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((l.P.transpose() * l.pi - l.pi).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(l.P(0, 0) == 0.5);
}

TEST_CASE("mixing time reference values") {
    CHECK(mixing_time(lift_cycle_chain(16, 1.0 / 16).chain).value() == 22);
    CHECK(mixing_time(lift_cycle_chain(32, 1.0 / 32).chain).value() == 44);

    LiftedCycle lc16 = lift_cycle_chain(16, 1.0 / 16);
    Chain col16 = collapse_chain(lc16.chain, lc16.S);
    CHECK(mixing_time(col16).value() == 4);
    CHECK(mixing_time(lazy_chain(col16)).value() == 4);

    LiftedCycle lc32 = lift_cycle_chain(32, 1.0 / 32);
    CHECK(mixing_time(collapse_chain(lc32.chain, lc32.S)).value() == 5);

    // lazy walk on C8, two equivalent constructions
    CHECK(mixing_time(lazy_chain(cycle_chain(8, 0.0))).value() == 3);
    CHECK(mixing_time(cycle_chain(8, 0.5)).value() == 3);
}

TEST_CASE("periodic chains never mix") {
    CHECK_FALSE(mixing_time(cycle_chain(4, 0.0), 0.25, 2000).has_value());
}

TEST_CASE("mixing time is monotone in the threshold") {
    Chain c = cycle_chain(9, 0.2);
    int tight = mixing_time(c, 0.25).value();
    int loose = mixing_time(c, 0.75).value();
    CHECK(loose <= tight);
}

}  // TEST_SUITE
