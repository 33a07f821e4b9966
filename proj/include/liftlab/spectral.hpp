#pragma once

#include "liftlab/graph.hpp"

#include <complex>
#include <string>
#include <vector>

namespace liftlab {

enum class RateStatus { ok, diverged, degenerate };

struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;  // sorted by |.| descending
    double tau = 0.0;           // largest modulus strictly inside the unit circle
    int unit_count = 0;         // eigenvalues with |lambda| in [1 - tol, 1 + tol]
    RateStatus status = RateStatus::ok;
};

SpectrumReport convergence_rate(const Mat& M, double unit_tol = 1e-9);

struct ConvergenceTime {
    double t_exact = 0.0;   // C / log(1/tau)
    double t_approx = 0.0;  // C / (1 - tau)
    double R = 0.0;         // 1 / (1 - tau)
};

ConvergenceTime convergence_time(double tau, double C = 1.0);

}  // namespace liftlab
