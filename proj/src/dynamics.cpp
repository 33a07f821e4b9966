#include "liftlab/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace liftlab {

AdmmState admm_init(const FactorGraph& fg, const Vec& z0) {
    if (z0.size() != fg.n())
        throw std::invalid_argument("invalid-input: z0 size mismatch");
    AdmmState st;
    st.x = Vec::Zero(fg.m2());
    st.m = Vec::Zero(fg.m2());
    st.s = fg.S * z0;
    st.u = Vec::Zero(fg.m2());
    st.n = st.s - st.u;
    return st;
}

void admm_step(AdmmState& st, const Mat& A, const Mat& B, double gamma) {
    Vec x = A * st.n;
    Vec m = gamma * x + st.u;
    Vec s = (1.0 - gamma) * st.s + B * m;
    Vec u = st.u + gamma * x + (1.0 - gamma) * st.s - s;
    st.x = std::move(x);
    st.m = std::move(m);
    st.s = std::move(s);
    st.u = std::move(u);
    st.n = st.s - st.u;
}

AdmmTrace run_admm(const FactorGraph& fg, const Vec& q, const AdmmParams& params,
                   const Vec& z0, int steps) {
    if (steps < 0) throw std::invalid_argument("invalid-parameter: steps must be >= 0");
    Mat A = build_A(fg, q, params);
    Mat B = build_B(fg, params.rho);
    Mat TA = build_T_A(fg, q, params);
    AdmmTrace tr;
    AdmmState st = admm_init(fg, z0);
    Vec w = st.n;  // closed-form track w^t = T_A^t n^0
    tr.n_hist.push_back(st.n);
    for (int t = 0; t < steps; ++t) {
        admm_step(st, A, B, params.gamma);
        w = TA * w;
        tr.n_hist.push_back(st.n);
        tr.max_linear_dev = std::max(tr.max_linear_dev, (st.n - w).cwiseAbs().maxCoeff());
        Vec Bn = B * st.n;
        double rel = (Bn - st.s).cwiseAbs().maxCoeff();
        rel = std::max(rel, (B * st.u).cwiseAbs().maxCoeff());
        rel = std::max(rel, (B * st.s - st.s).cwiseAbs().maxCoeff());
        rel = std::max(rel, ((st.n - Bn) + st.u).cwiseAbs().maxCoeff());
        // reconstruction from n alone: s = Bn, u = -(I-B)n
        rel = std::max(rel, (st.u + (st.n - Bn)).cwiseAbs().maxCoeff());
        tr.max_rel_residual = std::max(tr.max_rel_residual, rel);
        if (st.n.cwiseAbs().maxCoeff() > 1e12) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

GdTrace run_gd(const FactorGraph& fg, const Vec& q, double alpha, const Vec& x0, int steps) {
    if (steps < 0) throw std::invalid_argument("invalid-parameter: steps must be >= 0");
    if (x0.size() != fg.n())
        throw std::invalid_argument("invalid-input: x0 size mismatch");
    Mat TG = build_T_G(fg, q, alpha);
    GdTrace tr;
    Vec x = x0;
    double mean0 = x0.mean();
    tr.x_hist.push_back(x);
    for (int t = 0; t < steps; ++t) {
        x = TG * x;
        tr.x_hist.push_back(x);
        tr.mean_drift = std::max(tr.mean_drift, std::abs(x.mean() - mean0));
        if (x.cwiseAbs().maxCoeff() > 1e12) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

double fixed_point_residual(const Vec& v) {
    return (v.array() - v.mean()).abs().maxCoeff();
}

}  // namespace liftlab
