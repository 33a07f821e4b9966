#include "liftlab/operators.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "liftlab/io.hpp"

namespace liftlab {

namespace {

void validate(const FactorGraph& fg, const Vec& q) {
    if (q.size() != fg.base.m())
        throw std::invalid_argument("invalid-input: weight vector size mismatch");
    if ((q.array() <= 0.0).any())
        throw std::invalid_argument("invalid-parameter: edge weights must be positive");
}

void validate(const FactorGraph& fg, const AdmmParams& p) {
    if (!(p.gamma > 0.0 && p.gamma < 2.0))
        throw std::invalid_argument("invalid-parameter: gamma must lie in (0,2)");
    if (p.rho.size() != fg.m2())
        throw std::invalid_argument("invalid-input: rho vector size mismatch");
    if ((p.rho.array() <= 0.0).any())
        throw std::invalid_argument("invalid-parameter: rho entries must be positive");
}

}  // namespace

AdmmParams uniform_params(const FactorGraph& fg, double gamma, double rho) {
    AdmmParams p;
    p.gamma = gamma;
    p.rho = Vec::Constant(fg.m2(), rho);
    validate(fg, p);
    return p;
}

Mat build_Q(const FactorGraph& fg, const Vec& q) {
    validate(fg, q);
    Mat Q = Mat::Zero(fg.m2(), fg.m2());
    for (int e = 0; e < fg.base.m(); ++e) {
        Q(2 * e, 2 * e) = Q(2 * e + 1, 2 * e + 1) = q[e];
        Q(2 * e, 2 * e + 1) = Q(2 * e + 1, 2 * e) = -q[e];
    }
    return Q;
}

Mat build_A(const FactorGraph& fg, const Vec& q, const AdmmParams& params) {
    validate(fg, q);
    validate(fg, params);
    Mat A = Mat::Identity(fg.m2(), fg.m2());
    for (int e = 0; e < fg.base.m(); ++e) {
        int b = 2 * e, c = 2 * e + 1;
        double rb = params.rho[b], rc = params.rho[c];
        double den = rb * rc + q[e] * (rb + rc);
        A(b, b) = 1.0 - q[e] * rc / den;
        A(b, c) = q[e] * rc / den;
        A(c, b) = q[e] * rb / den;
        A(c, c) = 1.0 - q[e] * rb / den;
    }
    return A;
}

Mat build_B(const FactorGraph& fg, const Vec& rho) {
    if (rho.size() != fg.m2() || (rho.array() <= 0.0).any())
        throw std::invalid_argument("invalid-parameter: rho entries must be positive");
    Vec d = fg.S.transpose() * rho;  // S^T D_rho S is diagonal with these entries
    Mat B = Mat::Zero(fg.m2(), fg.m2());
    std::vector<std::vector<int>> copies(fg.n());
    for (int p = 0; p < fg.m2(); ++p) copies[fg.ehat[p].second].push_back(p);
    for (int v = 0; v < fg.n(); ++v)
        for (int r : copies[v])
            for (int c : copies[v]) B(r, c) = rho[c] / d[v];
    return B;
}

Mat build_T_G(const FactorGraph& fg, const Vec& q, double alpha) {
    Mat Q = build_Q(fg, q);
    Mat L = fg.S.transpose() * Q * fg.S;
    return Mat::Identity(fg.n(), fg.n()) - alpha * L;
}

Mat build_T_A(const FactorGraph& fg, const Vec& q, const AdmmParams& params) {
    Mat A = build_A(fg, q, params);
    Mat B = build_B(fg, params.rho);
    Mat K = A + B - 2.0 * B * A;
    return Mat::Identity(fg.m2(), fg.m2()) - params.gamma * K;
}

Vec default_DA(const FactorGraph& fg, const Vec& rho) {
    if (rho.size() != fg.m2() || (rho.array() <= 0.0).any())
        throw std::invalid_argument("invalid-parameter: rho entries must be positive");
    double m2 = static_cast<double>(fg.m2());
    return Vec::Ones(fg.m2()) - (rho * m2).cwiseInverse();
}

Vec solve_DG(const FactorGraph& fg, const Vec& rho, const Vec& DA) {
    if (DA.size() != fg.m2())
        throw std::invalid_argument("invalid-input: D_A size mismatch");
    Vec DG = Vec::Ones(fg.n());
    for (int p = 0; p < fg.m2(); ++p)
        DG[fg.ehat[p].second] -= rho[p] * (1.0 - DA[p]);
    for (int b = 0; b < fg.n(); ++b)
        if (DG[b] >= 1.0)
            throw std::runtime_error("infeasible-coupling: (D_G)_" + std::to_string(b) +
                                     " = " + fmt_double(DG[b]) + " >= 1");
    return DG;
}

Mat build_M(const Mat& T, const Vec& D) {
    if (T.rows() != T.cols() || D.size() != T.rows())
        throw std::invalid_argument("invalid-input: dimension mismatch");
    Mat M(T.rows(), T.cols());
    for (Eigen::Index i = 0; i < T.rows(); ++i) {
        double den = 1.0 - D[i];
        if (den == 0.0)
            throw std::runtime_error("singular-normalization: diagonal entry " +
                                     std::to_string(i) + " equals 1");
        for (Eigen::Index j = 0; j < T.cols(); ++j)
            M(i, j) = (T(i, j) - (i == j ? D[i] : 0.0)) / den;
    }
    return M;
}

double alpha_from_edge(double gamma, double rho_ei, double rho_ej, double q_e) {
    return gamma * rho_ei * rho_ej / (rho_ei * rho_ej + q_e * (rho_ei + rho_ej));
}

double check_alpha_consistency(const FactorGraph& fg, const Vec& q, const AdmmParams& params) {
    validate(fg, q);
    validate(fg, params);
    const int m = fg.base.m();
    Vec alphas(m);
    for (int e = 0; e < m; ++e)
        alphas[e] = alpha_from_edge(params.gamma, params.rho[2 * e], params.rho[2 * e + 1], q[e]);
    double lo = alphas.minCoeff(), hi = alphas.maxCoeff();
    double spread = hi - lo;
    if (spread > 1e-12 * std::max(1.0, std::abs(hi))) {
        std::ostringstream msg;
        msg << "inconsistent-alpha: max spread " << fmt_double(spread) << "; offending edges:";
        for (int e = 0; e < m; ++e)
            if (std::abs(alphas[e] - alphas[0]) > 1e-12 * std::max(1.0, std::abs(alphas[0])))
                msg << " (" << fg.base.edges[e].first << "," << fg.base.edges[e].second
                    << ")->" << fmt_double(alphas[e]);
        throw std::runtime_error(msg.str());
    }
    return alphas[0];
}

double max_alpha_nonneg(const FactorGraph& fg, const Vec& q, const Vec& DG) {
    validate(fg, q);
    if (DG.size() != fg.n())
        throw std::invalid_argument("invalid-input: D_G size mismatch");
    Vec qsum = Vec::Zero(fg.n());  // per-vertex sum of incident Q_ee
    for (int p = 0; p < fg.m2(); ++p) qsum[fg.ehat[p].second] += q[fg.ehat[p].first];
    double bound = std::numeric_limits<double>::infinity();
    for (int b = 0; b < fg.n(); ++b) bound = std::min(bound, (1.0 - DG[b]) / qsum[b]);
    return bound;
}

LiftingPair make_lifting_pair(const FactorGraph& fg, const Vec& q, const AdmmParams& params) {
    LiftingPair pair;
    pair.alpha = check_alpha_consistency(fg, q, params);
    pair.gamma = params.gamma;
    pair.rho = params.rho;
    pair.D_A = default_DA(fg, params.rho);
    pair.D_G = solve_DG(fg, params.rho, pair.D_A);
    pair.T_G = build_T_G(fg, q, pair.alpha);
    pair.T_A = build_T_A(fg, q, params);
    pair.M_G = build_M(pair.T_G, pair.D_G);
    pair.M_A = build_M(pair.T_A, pair.D_A);
    pair.v_G = Vec::Ones(fg.n()) - pair.D_G;
    pair.v_A = (Vec::Ones(fg.m2()) - pair.D_A).cwiseProduct(params.rho);
    return pair;
}

}  // namespace liftlab
