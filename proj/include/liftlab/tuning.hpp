#pragma once

#include "liftlab/graph.hpp"

#include <string>

namespace liftlab {

struct GdTuneResult {
    double alpha_star = 0.0;
    double tau_star = 0.0;
    double lambda_max = 0.0;  // of L = S^T Q S
    double lambda_2 = 0.0;    // smallest nonzero eigenvalue
};

// Closed form: alpha* = 2/(l_max + l_2), tau* = (l_max - l_2)/(l_max + l_2).
GdTuneResult tune_gd(const FactorGraph& fg, const Vec& q);

// Golden-section search over alpha in (0, 2/l_max); agrees with the closed
// form to ~1e-6 and exists to cross-check it.
GdTuneResult tune_gd_search(const FactorGraph& fg, const Vec& q, double tol = 1e-9);

struct SearchSpec {
    double gamma_min = 0.05;
    double gamma_max = 1.95;
    int gamma_points = 25;
    double rho_min = 1e-3;     // log-spaced grid
    double rho_max = 1e3;
    int rho_points = 41;
    double refine_tol = 1e-8;
    int refine_budget = 200;   // eigensolve evaluations in the refinement stage
};

// Parse "key=value" lines (flags use the same keys). Unknown keys throw.
SearchSpec parse_search_spec_file(const std::string& path, SearchSpec base = {});
void apply_search_spec_kv(SearchSpec& spec, const std::string& key, const std::string& value);

struct AdmmTuneResult {
    double gamma_star = 0.0;
    double rho_star = 0.0;   // uniform rho
    double tau_star = 0.0;
    std::string status;      // converged | boundary | failed
    int evals = 0;           // eigensolves of K(rho)
};

// Uniform-rho tuning of tau(T_A): coarse grid, then coordinate descent with
// an exact inner golden section over gamma (one eigensolve of
// K = A + B - 2BA per rho serves every gamma) and golden steps in log10 rho.
AdmmTuneResult tune_admm(const FactorGraph& fg, const Vec& q, const SearchSpec& spec = {});

// K = A + B - 2BA at uniform penalty rho; T_A = I - gamma K.
Mat admm_K(const FactorGraph& fg, const Vec& q, double rho);

// Rate of T_A(gamma, rho) given the eigenvalues mu of K: lambda = 1 - gamma mu.
// Returns +inf when the map diverges or more than one unit eigenvalue remains.
double tau_from_mu(const Eigen::VectorXcd& mu, double gamma);

// tau of T_A at explicit (gamma, rho), scored like tau_from_mu.
double admm_tau(const FactorGraph& fg, const Vec& q, double gamma, double rho);

}  // namespace liftlab
