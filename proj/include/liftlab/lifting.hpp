#pragma once

#include "liftlab/graph.hpp"
#include "liftlab/operators.hpp"

#include <optional>
#include <string>

namespace liftlab {

struct LiftingCertificate {
    double residual_vec = 0.0;   // ||v_G - S^T v_A||_inf
    double residual_mat = 0.0;   // ||D_{v_G} M_G - S^T D_{v_A} M_A S||_inf
    double alpha_used = 0.0;
    double gamma_used = 0.0;
    double rho_min = 0.0, rho_max = 0.0, rho_mean = 0.0;
    double min_entry_MA = 0.0;
    int min_entry_row = -1, min_entry_col = -1;
    bool is_markov_lifting = false;  // min_entry_MA >= -1e-12
};

LiftingCertificate verify_lifting(const FactorGraph& fg, const Vec& q, const AdmmParams& params);
LiftingCertificate certificate_for(const LiftingPair& pair, const FactorGraph& fg);

// Entries (2,1), (2,4), (3,1), (3,4) of T_A on K4 minus the edge (2,4)
// (1-based labels): t21 and t34 carry opposite signs while t24, t31 stay
// positive, so T_A escapes any similarity rescaling to a stochastic matrix.
struct SignWitness {
    double t21, t24, t31, t34;
};
SignWitness opposite_signs_witness(const Vec& rho, double gamma);

// Row-stochastic chain with stationary distribution attached.
struct Chain {
    Mat P;
    Vec pi;
};

// Collapse P = D_pi^-1 S^T D_pihat Phat S; requires pi = S^T pihat > 0.
Chain collapse_chain(const Chain& lifted, const Mat& S);

// Directed two-track cycle walker: states 0..n-1 move clockwise, n..2n-1
// counterclockwise; each step keeps direction (and advances) with probability
// 1-switch_p or reverses in place with switch_p. S merges the two copies of
// each site.
struct LiftedCycle {
    Chain chain;
    Mat S;
};
LiftedCycle lift_cycle_chain(int n, double switch_p);
Chain cycle_chain(int n, double stay = 0.0);  // plain (optionally lazy) cycle walk
Chain lazy_chain(const Chain& c);             // (I + P)/2

// Smallest t with max_{i,j} |(P^t)_{ij} - pi_j| < eps, scanning delta starts.
std::optional<int> mixing_time(const Chain& chain, double eps = 0.25, int t_max = 100000);

}  // namespace liftlab
