#include "liftlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace liftlab {

SpectrumReport convergence_rate(const Mat& M, double unit_tol) {
    if (M.rows() != M.cols())
        throw std::invalid_argument("invalid-input: matrix must be square");
    Eigen::EigenSolver<Mat> solver(M, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("numerical-failure: eigensolver did not converge");
    SpectrumReport rep;
    rep.eigenvalues.resize(M.rows());
    for (Eigen::Index i = 0; i < M.rows(); ++i) rep.eigenvalues[i] = solver.eigenvalues()[i];
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
              [](const std::complex<double>& a, const std::complex<double>& b) {
                  double ma = std::abs(a), mb = std::abs(b);
                  if (ma != mb) return ma > mb;
                  if (a.real() != b.real()) return a.real() > b.real();
                  return a.imag() > b.imag();
              });
    bool diverged = false;
    double tau = 0.0;
    bool any_convergent = false;
    for (const auto& lam : rep.eigenvalues) {
        double mod = std::abs(lam);
        if (mod > 1.0 + unit_tol) diverged = true;
        else if (mod >= 1.0 - unit_tol) rep.unit_count += 1;
        else {
            any_convergent = true;
            tau = std::max(tau, mod);
        }
    }
    rep.tau = tau;
    if (diverged) rep.status = RateStatus::diverged;
    else if (!any_convergent) rep.status = RateStatus::degenerate;
    else rep.status = RateStatus::ok;
    return rep;
}

ConvergenceTime convergence_time(double tau, double C) {
    if (!(tau >= 0.0 && tau < 1.0))
        throw std::runtime_error("not-convergent: tau must lie in [0,1)");
    ConvergenceTime ct;
    ct.t_exact = tau == 0.0 ? 0.0 : C / std::log(1.0 / tau);
    ct.t_approx = C / (1.0 - tau);
    ct.R = 1.0 / (1.0 - tau);
    return ct;
}

}  // namespace liftlab
