#include "liftlab/lifting.hpp"

#include <cmath>
#include <stdexcept>

#include "liftlab/io.hpp"

namespace liftlab {

LiftingCertificate certificate_for(const LiftingPair& pair, const FactorGraph& fg) {
    if (pair.T_G.rows() != fg.n() || pair.T_A.rows() != fg.m2() ||
        pair.v_G.size() != fg.n() || pair.v_A.size() != fg.m2())
        throw std::invalid_argument("invalid-input: pair/graph dimension mismatch");
    LiftingCertificate cert;
    cert.alpha_used = pair.alpha;
    cert.gamma_used = pair.gamma;
    cert.rho_min = pair.rho.minCoeff();
    cert.rho_max = pair.rho.maxCoeff();
    cert.rho_mean = pair.rho.mean();
    cert.residual_vec = (pair.v_G - fg.S.transpose() * pair.v_A).cwiseAbs().maxCoeff();
    Mat lhs = pair.v_G.asDiagonal() * pair.M_G;
    Mat rhs = fg.S.transpose() * pair.v_A.asDiagonal() * pair.M_A * fg.S;
    cert.residual_mat = (lhs - rhs).cwiseAbs().maxCoeff();
    Eigen::Index r, c;
    cert.min_entry_MA = pair.M_A.minCoeff(&r, &c);
    cert.min_entry_row = static_cast<int>(r);
    cert.min_entry_col = static_cast<int>(c);
    cert.is_markov_lifting = cert.min_entry_MA >= -1e-12;
    return cert;
}

LiftingCertificate verify_lifting(const FactorGraph& fg, const Vec& q, const AdmmParams& params) {
    return certificate_for(make_lifting_pair(fg, q, params), fg);
}

SignWitness opposite_signs_witness(const Vec& rho, double gamma) {
    if (rho.size() != 10)
        throw std::invalid_argument(
            "invalid-input: witness graph has |Ehat| = 10; rho must match");
    // Complete graph on {0,1,2,3} minus the edge (1,3): the labeling under
    // which the four closed forms below address fixed entries of T_A.
    Graph g;
    g.n = 4;
    g.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}};
    g.q = Vec::Ones(5);
    FactorGraph fg = factor_graph(g);
    AdmmParams params;
    params.gamma = gamma;
    params.rho = rho;
    Mat TA = build_T_A(fg, g.q, params);

    double r11 = rho[0], r12 = rho[1], r22 = rho[6], r23 = rho[7];
    SignWitness w;
    w.t21 = gamma * r11 * (r12 - r22) / ((r12 + r22) * (r11 + r12 + r11 * r12));
    w.t24 = 2.0 * gamma / ((r12 + r22) * (1.0 + 1.0 / r22 + 1.0 / r23));
    w.t31 = 2.0 * gamma / ((r12 + r22) * (1.0 + 1.0 / r11 + 1.0 / r12));
    w.t34 = -gamma * r23 * (r12 - r22) / ((r12 + r22) * (r22 + r23 + r22 * r23));

    double mismatch = std::max(
        std::max(std::abs(w.t21 - TA(1, 0)), std::abs(w.t24 - TA(1, 7))),
        std::max(std::abs(w.t31 - TA(6, 0)), std::abs(w.t34 - TA(6, 7))));
    if (mismatch > 1e-12)
        throw std::runtime_error("numerical-failure: witness closed forms drifted from T_A by " +
                                 fmt_double(mismatch));
    if (!(w.t21 * w.t34 <= 0.0) || !(w.t24 > 0.0) || !(w.t31 > 0.0))
        throw std::runtime_error("numerical-failure: witness sign pattern violated");
    return w;
}

Chain collapse_chain(const Chain& lifted, const Mat& S) {
    if (S.rows() != lifted.P.rows() || lifted.pi.size() != lifted.P.rows())
        throw std::invalid_argument("invalid-input: collapse dimension mismatch");
    Vec pi = S.transpose() * lifted.pi;
    for (Eigen::Index i = 0; i < pi.size(); ++i)
        if (pi[i] <= 0.0)
            throw std::runtime_error("degenerate-collapse: collapsed state " +
                                     std::to_string(i) + " has zero mass");
    Chain out;
    out.pi = pi;
    out.P = pi.cwiseInverse().asDiagonal() *
            (S.transpose() * lifted.pi.asDiagonal() * lifted.P * S);
    return out;
}

LiftedCycle lift_cycle_chain(int n, double switch_p) {
    if (n < 3) throw std::invalid_argument("invalid-size: lifted cycle needs n >= 3");
    if (!(switch_p > 0.0 && switch_p < 1.0))
        throw std::invalid_argument("invalid-parameter: switch probability must lie in (0,1)");
    LiftedCycle lc;
    lc.chain.P = Mat::Zero(2 * n, 2 * n);
    lc.S = Mat::Zero(2 * n, n);
    for (int i = 0; i < n; ++i) {
        lc.chain.P(i, (i + 1) % n) = 1.0 - switch_p;
        lc.chain.P(i, n + i) = switch_p;
        lc.chain.P(n + i, n + (i - 1 + n) % n) = 1.0 - switch_p;
        lc.chain.P(n + i, i) = switch_p;
        lc.S(i, i) = 1.0;
        lc.S(n + i, i) = 1.0;
    }
    lc.chain.pi = Vec::Constant(2 * n, 1.0 / (2 * n));
    return lc;
}

Chain cycle_chain(int n, double stay) {
    if (n < 3) throw std::invalid_argument("invalid-size: cycle chain needs n >= 3");
    if (stay < 0.0 || stay >= 1.0)
        throw std::invalid_argument("invalid-parameter: stay probability must lie in [0,1)");
    Chain c;
    c.P = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        c.P(i, i) = stay;
        c.P(i, (i + 1) % n) = (1.0 - stay) / 2.0;
        c.P(i, (i - 1 + n) % n) += (1.0 - stay) / 2.0;
    }
    c.pi = Vec::Constant(n, 1.0 / n);
    return c;
}

Chain lazy_chain(const Chain& c) {
    Chain out;
    out.P = 0.5 * (Mat::Identity(c.P.rows(), c.P.cols()) + c.P);
    out.pi = c.pi;
    return out;
}

std::optional<int> mixing_time(const Chain& chain, double eps, int t_max) {
    const Eigen::Index n = chain.P.rows();
    Mat M = Mat::Identity(n, n);  // row i = distribution after t steps from delta_i
    for (int t = 0; t <= t_max; ++t) {
        double worst = (M.rowwise() - chain.pi.transpose()).cwiseAbs().maxCoeff();
        if (worst < eps) return t;
        M = M * chain.P;
    }
    return std::nullopt;
}

}  // namespace liftlab
