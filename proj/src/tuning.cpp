#include "liftlab/tuning.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "liftlab/operators.hpp"

namespace liftlab {

namespace {

constexpr double UNIT_TOL = 1e-9;
const double GOLD = (std::sqrt(5.0) - 1.0) / 2.0;
constexpr double INF = std::numeric_limits<double>::infinity();

Vec linspace(double lo, double hi, int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    v[n - 1] = hi;
    return v;
}

Eigen::VectorXd laplacian_eigs(const FactorGraph& fg, const Vec& q) {
    Mat L = fg.S.transpose() * build_Q(fg, q) * fg.S;
    Eigen::SelfAdjointEigenSolver<Mat> solver(L, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("numerical-failure: Laplacian eigensolver did not converge");
    return solver.eigenvalues();
}

// tau of T_G = I - alpha L from a fresh eigensolve; +inf when divergent.
double gd_tau_at(const FactorGraph& fg, const Vec& q, double alpha) {
    Mat TG = build_T_G(fg, q, alpha);
    Eigen::SelfAdjointEigenSolver<Mat> solver(TG, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("numerical-failure: eigensolver did not converge");
    double tau = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double mod = std::abs(solver.eigenvalues()[i]);
        if (mod > 1.0 + UNIT_TOL) return INF;
        if (mod < 1.0 - UNIT_TOL) tau = std::max(tau, mod);
    }
    return tau;
}

struct Cand {
    double tau, lr, gamma;
    bool operator<(const Cand& o) const {
        if (tau != o.tau) return tau < o.tau;
        if (lr != o.lr) return lr < o.lr;
        return gamma < o.gamma;
    }
};

}  // namespace

GdTuneResult tune_gd(const FactorGraph& fg, const Vec& q) {
    Vec lam = laplacian_eigs(fg, q);
    double lmax = lam[lam.size() - 1];
    double zero_tol = 1e-9 * std::max(1.0, lmax);
    int zeros = 0;
    while (zeros < lam.size() && std::abs(lam[zeros]) < zero_tol) ++zeros;
    if (zeros != 1)
        throw std::runtime_error(
            "degenerate-spectrum: Laplacian has " + std::to_string(zeros) +
            " zero eigenvalues (graph disconnected?)");
    double l2 = lam[1];
    GdTuneResult r;
    r.lambda_max = lmax;
    r.lambda_2 = l2;
    r.alpha_star = 2.0 / (lmax + l2);
    r.tau_star = (lmax - l2) / (lmax + l2);
    return r;
}

GdTuneResult tune_gd_search(const FactorGraph& fg, const Vec& q, double /*tol*/) {
    Vec lam = laplacian_eigs(fg, q);
    double lmax = lam[lam.size() - 1];
    double a = 1e-8 / lmax, b = 2.0 / lmax * (1.0 - 1e-12);
    double c = b - GOLD * (b - a), d = a + GOLD * (b - a);
    double fc = gd_tau_at(fg, q, c), fd = gd_tau_at(fg, q, d);
    for (int it = 0; it < 100; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLD * (b - a);
            fc = gd_tau_at(fg, q, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLD * (b - a);
            fd = gd_tau_at(fg, q, d);
        }
    }
    GdTuneResult r;
    r.lambda_max = lmax;
    r.lambda_2 = lam.size() > 1 ? lam[1] : 0.0;
    if (fc <= fd) {
        r.alpha_star = c;
        r.tau_star = fc;
    } else {
        r.alpha_star = d;
        r.tau_star = fd;
    }
    return r;
}

double tau_from_mu(const Eigen::VectorXcd& mu, double gamma) {
    int unit = 0;
    double tau = 0.0;
    bool any = false;
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        double mod = std::abs(1.0 - gamma * mu[i]);
        if (mod > 1.0 + UNIT_TOL) return INF;
        if (mod >= 1.0 - UNIT_TOL) ++unit;
        else {
            any = true;
            tau = std::max(tau, mod);
        }
    }
    if (unit != 1 || !any) return INF;
    return tau;
}

Mat admm_K(const FactorGraph& fg, const Vec& q, double rho) {
    AdmmParams p = uniform_params(fg, 1.0, rho);
    Mat A = build_A(fg, q, p);
    Mat B = build_B(fg, p.rho);
    return A + B - 2.0 * B * A;
}

double admm_tau(const FactorGraph& fg, const Vec& q, double gamma, double rho) {
    Eigen::EigenSolver<Mat> solver(admm_K(fg, q, rho), false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("numerical-failure: eigensolver did not converge");
    return tau_from_mu(solver.eigenvalues(), gamma);
}

void apply_search_spec_kv(SearchSpec& spec, const std::string& key, const std::string& value) {
    try {
        if (key == "gamma_min") spec.gamma_min = std::stod(value);
        else if (key == "gamma_max") spec.gamma_max = std::stod(value);
        else if (key == "gamma_points") spec.gamma_points = std::stoi(value);
        else if (key == "rho_min") spec.rho_min = std::stod(value);
        else if (key == "rho_max") spec.rho_max = std::stod(value);
        else if (key == "rho_points") spec.rho_points = std::stoi(value);
        else if (key == "refine_tol") spec.refine_tol = std::stod(value);
        else if (key == "refine_budget") spec.refine_budget = std::stoi(value);
        else throw std::invalid_argument("invalid-input: unknown search_spec key '" + key + "'");
    } catch (const std::exception& e) {
        if (std::string(e.what()).rfind("invalid-input", 0) == 0) throw;
        throw std::invalid_argument("invalid-input: bad value for search_spec key '" + key + "'");
    }
}

SearchSpec parse_search_spec_file(const std::string& path, SearchSpec base) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("invalid-input: cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r\n");
        line = line.substr(first, last - first + 1);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("invalid-input: expected key=value, got '" + line + "'");
        auto strip = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        apply_search_spec_kv(base, strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    return base;
}

namespace {

void validate_spec(const SearchSpec& s) {
    if (!(s.gamma_min > 0.0 && s.gamma_max < 2.0 && s.gamma_min < s.gamma_max))
        throw std::invalid_argument("invalid-parameter: gamma range must lie inside (0,2)");
    if (!(s.rho_min > 0.0 && s.rho_min < s.rho_max))
        throw std::invalid_argument("invalid-parameter: rho range must be positive and ordered");
    if (s.gamma_points < 2 || s.rho_points < 2)
        throw std::invalid_argument("invalid-parameter: need at least 2 grid points per axis");
    if (!(s.refine_tol > 0.0) || s.refine_budget < 0)
        throw std::invalid_argument("invalid-parameter: bad refinement settings");
}

}  // namespace

AdmmTuneResult tune_admm(const FactorGraph& fg, const Vec& q, const SearchSpec& spec) {
    validate_spec(spec);
    const double lrmin = std::log10(spec.rho_min), lrmax = std::log10(spec.rho_max);
    Vec gammas = linspace(spec.gamma_min, spec.gamma_max, spec.gamma_points);
    Vec lrs = linspace(lrmin, lrmax, spec.rho_points);

    int evals = 0;
    std::map<double, Eigen::VectorXcd> mu_cache;
    auto mu_of = [&](double lr) -> const Eigen::VectorXcd& {
        auto it = mu_cache.find(lr);
        if (it == mu_cache.end()) {
            Eigen::EigenSolver<Mat> solver(admm_K(fg, q, std::pow(10.0, lr)), false);
            if (solver.info() != Eigen::Success)
                throw std::runtime_error("numerical-failure: eigensolver did not converge");
            it = mu_cache.emplace(lr, solver.eigenvalues()).first;
            ++evals;
        }
        return it->second;
    };

    Cand cur{INF, INF, INF};
    for (int ri = 0; ri < lrs.size(); ++ri) {
        const auto& mu = mu_of(lrs[ri]);
        for (int gi = 0; gi < gammas.size(); ++gi) {
            Cand cand{tau_from_mu(mu, gammas[gi]), lrs[ri], gammas[gi]};
            if (cand < cur) cur = cand;
        }
    }
    AdmmTuneResult res;
    if (cur.tau == INF) {
        res.status = "failed";
        res.tau_star = INF;
        res.gamma_star = cur.gamma == INF ? spec.gamma_min : cur.gamma;
        res.rho_star = cur.lr == INF ? spec.rho_min : std::pow(10.0, cur.lr);
        res.evals = evals;
        return res;
    }

    // exact inner minimizer over gamma for a fixed spectrum mu (convex)
    auto inner_gamma = [&](const Eigen::VectorXcd& mu) {
        double a = spec.gamma_min, b = spec.gamma_max;
        double c = b - GOLD * (b - a), d = a + GOLD * (b - a);
        double fc = tau_from_mu(mu, c), fd = tau_from_mu(mu, d);
        for (int it = 0; it < 90; ++it) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - GOLD * (b - a);
                fc = tau_from_mu(mu, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + GOLD * (b - a);
                fd = tau_from_mu(mu, d);
            }
        }
        return fc <= fd ? std::pair<double, double>(c, fc) : std::pair<double, double>(d, fd);
    };
    auto phi = [&](double lr) {
        auto [g, t] = inner_gamma(mu_of(lr));
        return std::pair<double, double>(t, g);
    };

    double w = 0.225;  // 1.5 coarse grid steps in log10 rho
    for (int round = 0; round < 16; ++round) {
        double before = cur.tau;
        double a = std::max(lrmin, cur.lr - w), b = std::min(lrmax, cur.lr + w);
        double c = b - GOLD * (b - a), d = a + GOLD * (b - a);
        auto [fc, gc] = phi(c);
        auto [fd, gd] = phi(d);
        while (b - a > 1e-10 && evals < spec.refine_budget) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                gd = gc;
                c = b - GOLD * (b - a);
                std::tie(fc, gc) = phi(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                gc = gd;
                d = a + GOLD * (b - a);
                std::tie(fd, gd) = phi(d);
            }
        }
        const Cand finals[2] = {{fc, c, gc}, {fd, d, gd}};
        for (const Cand& cand : finals)
            if (cand < cur) cur = cand;
        if (before - cur.tau < spec.refine_tol || evals >= spec.refine_budget) break;
        w = std::max(w / 4.0, 2e-10);
    }

    res.gamma_star = cur.gamma;
    res.rho_star = std::pow(10.0, cur.lr);
    res.tau_star = cur.tau;
    res.evals = evals;
    bool on_edge = std::abs(cur.gamma - spec.gamma_min) < 1e-6 ||
                   std::abs(cur.gamma - spec.gamma_max) < 1e-6 ||
                   std::abs(cur.lr - lrmin) < 1e-6 || std::abs(cur.lr - lrmax) < 1e-6;
    res.status = on_edge ? "boundary" : "converged";
    return res;
}

}  // namespace liftlab
