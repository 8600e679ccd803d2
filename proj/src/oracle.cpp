#include "gvd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "eigen_util.hpp"
#include "gvd/problems.hpp"

namespace gvd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double scalar_penalty(const std::string& kind, double lambda, double t) {
    if (kind == "l1" || kind == "trimmed_l1") return lambda * std::abs(t);
    if (kind == "trimmed_exp") return t < -700.0 ? kInf : std::exp(-t);
    return 0.0;
}

// kept-index subsets of {0..m-1} with |subset| = keep
void enumerate_subsets(std::size_t m, std::size_t keep,
                       std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    cur.reserve(keep);
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (cur.size() == keep) {
            out.push_back(cur);
            return;
        }
        for (std::size_t j = start; j + (keep - cur.size()) <= m; ++j) {
            cur.push_back(j);
            rec(j + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

struct Parametrization {
    // flat parameters <-> Point; PSD blocks go through a Cholesky factor so
    // every parameter vector maps into the cone's closure.
    bool cholesky = false;
    std::size_t n = 0; // matrix order when cholesky
    Point like = Point::zeros_vector(0);

    std::vector<double> to_params(const Point& x) const {
        if (!cholesky) return flatten(x);
        Eigen::MatrixXd M = detail::to_eigen(x);
        Eigen::LLT<Eigen::MatrixXd> llt(M);
        Eigen::MatrixXd L;
        if (llt.info() == Eigen::Success) {
            L = llt.matrixL();
        } else {
            // fall back to a spectral square root shifted into the cone
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
            Eigen::VectorXd ev = es.eigenvalues().cwiseMax(1e-8);
            Eigen::MatrixXd S =
                es.eigenvectors() * ev.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
            L = Eigen::LLT<Eigen::MatrixXd>(S * S.transpose()).matrixL();
        }
        std::vector<double> p;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) p.push_back(L(static_cast<Eigen::Index>(i),
                                                              static_cast<Eigen::Index>(j)));
        return p;
    }

    Point to_point(const std::vector<double>& params) const {
        if (!cholesky) return with_data(like, params);
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                  static_cast<Eigen::Index>(n));
        std::size_t idx = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                L(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = params[idx++];
        Eigen::MatrixXd M = L * L.transpose();
        return detail::sym_from_eigen(M);
    }
};

struct GoldenMinimizer {
    std::function<double(const std::vector<double>&)> obj;
    long long* budget;
    bool* exhausted;

    double eval(const std::vector<double>& p) const {
        if (*budget <= 0) {
            *exhausted = true;
            return kInf;
        }
        --(*budget);
        return obj(p);
    }

    // 1-D golden-section on [lo,hi] for the j-th parameter
    double golden(std::vector<double>& p, std::size_t j, double lo, double hi) const {
        const double phi = 0.6180339887498949;
        double a = lo, b = hi;
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        p[j] = x1;
        double f1 = eval(p);
        p[j] = x2;
        double f2 = eval(p);
        for (int it = 0; it < 140 && (b - a) > 1e-11 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
            if (*exhausted) break;
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                p[j] = x1;
                f1 = eval(p);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                p[j] = x2;
                f2 = eval(p);
            }
        }
        double t = f1 <= f2 ? x1 : x2;
        p[j] = t;
        return eval(p);
    }

    // minimize along coordinate j starting from the current value: bracket by
    // doubling in the descent direction, then golden-section
    double line_min(std::vector<double>& p, std::size_t j, double f_cur) const {
        double c = p[j];
        double h = 0.5 * std::max(1.0, std::abs(c));
        double fl = kInf, fr = kInf;
        for (int shrink = 0; shrink < 45; ++shrink) {
            p[j] = c - h;
            fl = eval(p);
            p[j] = c + h;
            fr = eval(p);
            if (std::isfinite(fl) || std::isfinite(fr) || *exhausted) break;
            h *= 0.5;
        }
        p[j] = c;
        if (*exhausted) return f_cur;
        if (fl >= f_cur && fr >= f_cur) return golden(p, j, c - h, c + h);
        double dir = fl < fr ? -1.0 : 1.0;
        double best = std::min(fl, fr);
        double t = c + dir * h;
        double step = h;
        for (int it = 0; it < 60 && !*exhausted; ++it) {
            step *= 2.0;
            p[j] = t + dir * step;
            double f = eval(p);
            if (f >= best) {
                p[j] = t;
                return golden(p, j, t - step, t + step);
            }
            best = f;
            t = p[j];
        }
        p[j] = t;
        return best;
    }

    double sweeps(std::vector<double>& p) const {
        double f = eval(p);
        for (int sweep = 0; sweep < 200 && !*exhausted; ++sweep) {
            std::vector<double> p_prev = p;
            double move = 0.0;
            for (std::size_t j = 0; j < p.size() && !*exhausted; ++j) {
                double before = p[j];
                double f_new = line_min(p, j, f);
                if (f_new < f) {
                    f = f_new;
                    move = std::max(move, std::abs(p[j] - before));
                } else {
                    p[j] = before;
                }
            }
            // pattern move along the aggregate sweep direction to break the
            // zigzag on coupled objectives
            if (move > 0.0 && !*exhausted) {
                std::vector<double> dir(p.size());
                for (std::size_t j = 0; j < p.size(); ++j) dir[j] = p[j] - p_prev[j];
                double t_best = 0.0;
                std::vector<double> trial = p;
                for (double t = 1.0; t <= 64.0 && !*exhausted; t *= 2.0) {
                    for (std::size_t j = 0; j < p.size(); ++j) trial[j] = p[j] + t * dir[j];
                    double ft = eval(trial);
                    if (ft < f) {
                        f = ft;
                        t_best = t;
                    } else {
                        break;
                    }
                }
                if (t_best > 0.0)
                    for (std::size_t j = 0; j < p.size(); ++j) p[j] += t_best * dir[j];
            }
            if (move < 1e-10) break;
        }
        return f;
    }
};

// Damped Newton with central-difference derivatives; used to polish the
// coordinate-search result on smooth subproblems, where derivative-free
// search alone stalls around 1e-6 argument accuracy.
void newton_polish(const std::function<double(const std::vector<double>&)>& obj,
                   std::vector<double>& p, double& f) {
    const std::size_t n = p.size();
    for (int iter = 0; iter < 10; ++iter) {
        Eigen::VectorXd g(static_cast<Eigen::Index>(n));
        Eigen::MatrixXd H(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        std::vector<double> h(n);
        for (std::size_t j = 0; j < n; ++j) h[j] = 1e-5 * std::max(1.0, std::abs(p[j]));
        std::vector<double> w = p;
        bool bad = false;
        for (std::size_t j = 0; j < n && !bad; ++j) {
            w[j] = p[j] + h[j];
            double fu = obj(w);
            w[j] = p[j] - h[j];
            double fd = obj(w);
            w[j] = p[j];
            if (!std::isfinite(fu) || !std::isfinite(fd)) bad = true;
            g(static_cast<Eigen::Index>(j)) = (fu - fd) / (2.0 * h[j]);
            H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) =
                (fu - 2.0 * f + fd) / (h[j] * h[j]);
        }
        for (std::size_t j = 0; j < n && !bad; ++j)
            for (std::size_t k = j + 1; k < n && !bad; ++k) {
                w[j] = p[j] + h[j];
                w[k] = p[k] + h[k];
                double fpp = obj(w);
                w[k] = p[k] - h[k];
                double fpm = obj(w);
                w[j] = p[j] - h[j];
                double fmm = obj(w);
                w[k] = p[k] + h[k];
                double fmp = obj(w);
                w[j] = p[j];
                w[k] = p[k];
                if (!std::isfinite(fpp) || !std::isfinite(fpm) || !std::isfinite(fmm) ||
                    !std::isfinite(fmp))
                    bad = true;
                double hij = (fpp - fpm - fmp + fmm) / (4.0 * h[j] * h[k]);
                H(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = hij;
                H(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = hij;
            }
        if (bad) return;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
        Eigen::VectorXd step;
        if (ldlt.info() == Eigen::Success && ldlt.isPositive())
            step = ldlt.solve(-g);
        else
            step = -g;
        bool accepted = false;
        double t = 1.0;
        for (int ls = 0; ls < 20; ++ls, t *= 0.5) {
            for (std::size_t j = 0; j < n; ++j)
                w[j] = p[j] + t * step(static_cast<Eigen::Index>(j));
            double ft = obj(w);
            // non-strict acceptance: near the optimum the objective change
            // underflows while the argument still improves
            if (std::isfinite(ft) && ft <= f) {
                p = w;
                f = ft;
                accepted = true;
                break;
            }
        }
        if (!accepted) return;
        if (t * step.norm() < 1e-12) return;
    }
}

double linear_fit(const std::vector<double>& xs, const std::vector<double>& ys, double& slope) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    slope = denom == 0.0 ? 0.0 : (n * sxy - sx * sy) / denom;
    double icept = (sy - slope * sx) / n;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = ys[i] - (slope * xs[i] + icept);
        rss += r * r;
    }
    return std::sqrt(rss / n);
}

} // namespace

double OracleG::value(const Point& x) const {
    if (kind == "zero") return 0.0;
    std::vector<double> flat = flatten(x);
    if (kind == "l1") {
        double s = 0.0;
        for (double v : flat) s += std::abs(v);
        return lambda * s;
    }
    if (kind == "trimmed_l1") return lambda * trimmed_l1_value(flat, K);
    if (kind == "trimmed_exp") return trimmed_exp_value(flat, K);
    throw std::invalid_argument("OracleG: unknown kind " + kind);
}

BruteForceResult brute_force_prox(const Point& a, const Point& y, double gamma,
                                  const ProxGradDistance& d, const OracleG& g, long long budget,
                                  unsigned long long seed, int starts) {
    Parametrization par;
    par.like = y;
    if (y.tag() == SpaceTag::Symmetric && d.domain() == DomainTag::PsdInterior) {
        par.cholesky = true;
        par.n = y.rows();
    }

    bool exhausted = false;
    long long remaining = budget;

    auto smooth_part = [&](const Point& x) {
        double D = d.value(x, y);
        if (!(D < kInf)) return kInf;
        return point_inner(a, x) + gamma * D;
    };

    BruteForceResult best;
    best.x = y;
    best.objective = kInf;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> base = par.to_params(y);

    auto run_with_g = [&](const std::function<double(const Point&)>& g_fn, int n_starts) {
        GoldenMinimizer mini;
        mini.budget = &remaining;
        mini.exhausted = &exhausted;
        mini.obj = [&](const std::vector<double>& p) {
            Point x = par.to_point(p);
            double s = smooth_part(x);
            if (!(s < kInf)) return kInf;
            double gv = g_fn(x);
            if (!(gv < kInf)) return kInf;
            return s + gv;
        };
        for (int s = 0; s < n_starts && !exhausted; ++s) {
            std::vector<double> p = base;
            if (s > 0) {
                double radius = s % 2 == 0 ? 0.2 : 1.0;
                for (double& v : p) v += radius * std::max(1.0, std::abs(v)) * gauss(rng);
                // pull back toward the center until the start is feasible
                for (int t = 0; t < 25; ++t) {
                    Point x = par.to_point(p);
                    if (smooth_part(x) < kInf) break;
                    for (std::size_t j = 0; j < p.size(); ++j)
                        p[j] = 0.5 * (p[j] + base[j]);
                }
            }
            double f = mini.sweeps(p);
            if (f < best.objective) {
                best.objective = f;
                best.x = par.to_point(p);
            }
        }
    };

    const std::size_t m = y.size();
    bool trimmed = g.kind == "trimmed_l1" || g.kind == "trimmed_exp";
    if (trimmed && g.K > 0 && m <= 8 && !par.cholesky) {
        std::vector<std::vector<std::size_t>> subsets;
        enumerate_subsets(m, m - static_cast<std::size_t>(g.K), subsets);
        for (const auto& kept : subsets) {
            auto g_fn = [&](const Point& x) {
                double s = 0.0;
                for (std::size_t j : kept) s += scalar_penalty(g.kind, g.lambda, x[j]);
                return s;
            };
            run_with_g(g_fn, std::max(2, starts / 2));
            if (exhausted) break;
        }
    } else {
        auto g_fn = [&](const Point& x) { return g.value(x); };
        run_with_g(g_fn, starts);
        if (g.kind == "zero" && !exhausted && best.objective < kInf) {
            auto obj = [&](const std::vector<double>& p) {
                return smooth_part(par.to_point(p));
            };
            std::vector<double> p = par.to_params(best.x);
            double f = obj(p);
            if (f < kInf) {
                newton_polish(obj, p, f);
                if (f <= best.objective) {
                    best.objective = f;
                    best.x = par.to_point(p);
                }
            }
        }
    }

    best.budget_exhausted = exhausted;
    best.evaluations = budget - remaining;
    if (!(best.objective < kInf)) {
        best.x = y;
        best.objective = smooth_part(y) + g.value(y);
        best.budget_exhausted = true;
    }
    return best;
}

Point finite_diff_grad(const std::function<double(const Point&)>& fn, const Point& x,
                       double rel_step) {
    std::vector<double> flat = flatten(x);
    std::vector<double> grad(flat.size());
    for (std::size_t j = 0; j < flat.size(); ++j) {
        double h = rel_step * std::max(1.0, std::abs(flat[j]));
        bool done = false;
        for (int attempt = 0; attempt <= 3; ++attempt) {
            std::vector<double> up = flat, dn = flat;
            up[j] += h;
            dn[j] -= h;
            double fu = fn(with_data(x, up));
            double fd = fn(with_data(x, dn));
            if (std::isfinite(fu) && std::isfinite(fd)) {
                grad[j] = (fu - fd) / (2.0 * h);
                done = true;
                break;
            }
            h *= 0.25;
        }
        if (!done)
            throw std::runtime_error("finite_diff_grad: stencil leaves the domain at coordinate " +
                                     std::to_string(j));
    }
    return with_data(x, grad);
}

RateEstimate estimate_rate_series(const std::vector<double>& R) {
    RateEstimate est;
    if (R.size() < 30) {
        est.diagnostics = "series too short (need >= 30 points)";
        return est;
    }
    for (double r : R)
        if (r < 0.0) {
            est.diagnostics = "nonpositive gap before convergence (F* estimate too high)";
            return est;
        }
    for (std::size_t k = 0; k < R.size(); ++k)
        if (R[k] == 0.0) {
            est.regime = "finite_steps";
            est.fit_window = static_cast<int>(k);
            est.diagnostics = "gap hits exactly zero";
            return est;
        }

    const std::size_t W = std::min<std::size_t>(30, R.size());
    const std::size_t start = R.size() - W;
    est.fit_window = static_cast<int>(W);

    // Q-superlinear: successive ratios decrease monotonically toward zero
    bool super = true;
    double prev_ratio = kInf;
    for (std::size_t k = start; k + 1 < R.size(); ++k) {
        double q = R[k + 1] / R[k];
        if (prev_ratio != kInf && q > 0.95 * prev_ratio) {
            super = false;
            break;
        }
        prev_ratio = q;
    }
    if (super && prev_ratio <= 0.1) {
        est.regime = "superlinear";
        est.diagnostics = "ratios decrease monotonically";
        return est;
    }

    std::vector<double> ks, logks, logR;
    for (std::size_t k = start; k < R.size(); ++k) {
        ks.push_back(static_cast<double>(k));
        logks.push_back(std::log(static_cast<double>(k + 1)));
        logR.push_back(std::log(R[k]));
    }
    double slope_lin = 0.0, slope_log = 0.0;
    double res_lin = linear_fit(ks, logR, slope_lin);
    double res_log = linear_fit(logks, logR, slope_log);

    if (res_lin <= 0.05 && res_lin <= res_log && std::exp(slope_lin) < 1.0) {
        est.regime = "linear";
        est.linear_ratio = std::exp(slope_lin);
        est.fit_residual = res_lin;
        est.diagnostics = "log-gap affine in k";
        return est;
    }
    if (res_log <= 0.05 && slope_log < 0.0) {
        est.regime = "sublinear";
        // slope = -1/(1-2*theta)  =>  theta = (1 + 1/slope)/2
        double theta = 0.5 * (1.0 + 1.0 / slope_log);
        est.fitted_theta = std::clamp(theta, 1e-9, 1.0);
        est.fit_residual = res_log;
        est.diagnostics = "log-gap affine in log k";
        return est;
    }
    est.fit_residual = std::min(res_lin, res_log);
    est.diagnostics = "no affine fit within tolerance";
    return est;
}

RateEstimate estimate_rate(const Trace& trace, std::optional<double> F_star_hint) {
    std::vector<double> R;
    R.reserve(trace.records.size());
    double F_star;
    if (F_star_hint) {
        F_star = *F_star_hint;
    } else if (!trace.records.empty()) {
        F_star = trace.records.back().F_x - 1e-10;
    } else {
        RateEstimate est;
        est.diagnostics = "empty trace";
        return est;
    }
    for (const auto& rec : trace.records) R.push_back(rec.F_x - F_star);
    return estimate_rate_series(R);
}

} // namespace gvd
