#pragma once

#include "liftlab/graph.hpp"
#include "liftlab/operators.hpp"

#include <vector>

namespace liftlab {

struct AdmmState {
    Vec x, m, s, u, n;
};

// s0 = S z0, everything else zero except n0 = s0 - u0 = s0.
AdmmState admm_init(const FactorGraph& fg, const Vec& z0);

// One sweep of the five-variable recursion, in update order x, m, s, u, n.
void admm_step(AdmmState& st, const Mat& A, const Mat& B, double gamma);

struct AdmmTrace {
    std::vector<Vec> n_hist;      // n^0 .. n^T
    double max_linear_dev = 0.0;  // max_t ||n^t - T_A^t n^0||_inf
    double max_rel_residual = 0.0;
    bool diverged = false;
};

// Runs T steps, checking n against the closed-form power iteration and the
// invariants Bn = s, Bu = 0 along the way.
AdmmTrace run_admm(const FactorGraph& fg, const Vec& q, const AdmmParams& params,
                   const Vec& z0, int steps);

struct GdTrace {
    std::vector<Vec> x_hist;
    double mean_drift = 0.0;  // max_t |mean(x^t) - mean(x^0)|
    bool diverged = false;
};

GdTrace run_gd(const FactorGraph& fg, const Vec& q, double alpha, const Vec& x0, int steps);

// Distance to consensus: ||v - (mean v) 1||_inf.
double fixed_point_residual(const Vec& v);

}  // namespace liftlab
