#pragma once

#include "liftlab/graph.hpp"

namespace liftlab {

struct AdmmParams {
    double gamma = 1.0;
    Vec rho;  // per-Ehat positive penalties
};

// Uniform rho broadcast over Ehat.
AdmmParams uniform_params(const FactorGraph& fg, double gamma, double rho);

// Block-diagonal quadratic coupling: per edge q_e * [[1,-1],[-1,1]].
Mat build_Q(const FactorGraph& fg, const Vec& q);

// Prox map A = (I + D_rho^-1 Q)^-1 assembled from closed-form 2x2 blocks
// A = I - F Q with F^e = diag(rho_ej, rho_ei) / (rho_ei rho_ej + q_e (rho_ei + rho_ej)).
Mat build_A(const FactorGraph& fg, const Vec& q, const AdmmParams& params);

// rho-weighted averaging projection B = S (S^T D_rho S)^-1 S^T D_rho.
Mat build_B(const FactorGraph& fg, const Vec& rho);

// T_G = I - alpha S^T Q S.
Mat build_T_G(const FactorGraph& fg, const Vec& q, double alpha);

// T_A = I - gamma (A + B - 2BA).
Mat build_T_A(const FactorGraph& fg, const Vec& q, const AdmmParams& params);

// Gauge choice making v_A uniform: (D_A)_e = 1 - 1/(rho_e |Ehat|).
Vec default_DA(const FactorGraph& fg, const Vec& rho);

// D_G = I - S^T D_rho (I - D_A) S (diagonal).
Vec solve_DG(const FactorGraph& fg, const Vec& rho, const Vec& DA);

// M = (I - D)^-1 (T - D), D diagonal with entries != 1.
Mat build_M(const Mat& T, const Vec& D);

// Step size induced on edge e by (gamma, rho); the lifting identity holds
// only when this value is shared by every edge.
double alpha_from_edge(double gamma, double rho_ei, double rho_ej, double q_e);

// Returns the common alpha or throws (inconsistent-alpha) listing the spread.
double check_alpha_consistency(const FactorGraph& fg, const Vec& q, const AdmmParams& params);

// Largest alpha keeping M_G entrywise nonnegative:
// min_b (1 - (D_G)_bb) / sum_{e in I_b} Q_ee.
double max_alpha_nonneg(const FactorGraph& fg, const Vec& q, const Vec& DG);

struct LiftingPair {
    Mat T_G, T_A, M_G, M_A;
    Vec D_G, D_A;   // diagonals
    Vec v_G, v_A;
    double alpha = 0.0;
    double gamma = 0.0;
    Vec rho;
};

// Assembles the full operator pair with default D_A and the induced D_G;
// alpha comes from check_alpha_consistency.
LiftingPair make_lifting_pair(const FactorGraph& fg, const Vec& q, const AdmmParams& params);

}  // namespace liftlab
