#include "gvd/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "eigen_util.hpp"

namespace gvd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_exp(double x) {
    return std::exp(std::min(x, 700.0));
}

// sqrt(a^2 + q) - a without cancellation for a > 0 (q >= 0)
double sqrt_shift_minus(double a, double q) {
    double root = std::sqrt(a * a + q);
    if (a > 0.0) return q / (root + a);
    return root - a;
}

} // namespace

std::vector<std::size_t> smallest_indices(const std::vector<double>& scores, std::size_t keep) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return scores[i] < scores[j]; });
    idx.resize(keep);
    return idx;
}

Point prox_sqnorm_l1(const Point& a, const Point& y, double gamma, double lambda) {
    if (gamma <= 0.0) throw std::invalid_argument("prox_sqnorm_l1: gamma must be positive");
    if (lambda < 0.0) throw std::invalid_argument("prox_sqnorm_l1: lambda must be nonnegative");
    if (!a.same_space(y)) throw std::invalid_argument("prox_sqnorm_l1: space mismatch");
    std::vector<double> out(y.data().size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double s = y.data()[j] - a.data()[j] / gamma;
        double mag = std::abs(s) - lambda / gamma;
        out[j] = mag > 0.0 ? std::copysign(mag, s) : 0.0;
    }
    return with_data(y, out);
}

Point prox_exp_trimmed(const Point& a, const Point& w, double gamma, int K) {
    if (gamma <= 0.0) throw std::invalid_argument("prox_exp_trimmed: gamma must be positive");
    if (!a.same_space(w)) throw std::invalid_argument("prox_exp_trimmed: space mismatch");
    std::size_t m = w.data().size();
    if (K < 0 || static_cast<std::size_t>(K) > m)
        throw std::invalid_argument("prox_exp_trimmed: K out of range");

    std::vector<double> z_in(m), z_out(m), score(m);
    for (std::size_t j = 0; j < m; ++j) {
        double aj = a.data()[j];
        double wj = w.data()[j];
        double e = safe_exp(-wj);
        double q0 = gamma * gamma;
        double q1 = gamma * gamma + 2.0 * gamma * e;
        double s0 = sqrt_shift_minus(aj, q0); // sqrt(a^2+g^2) - a
        double s1 = sqrt_shift_minus(aj, q1); // sqrt(a^2+g^2+2g e^{-w}) - a
        double r0 = std::sqrt(aj * aj + q0);
        double r1 = std::sqrt(aj * aj + q1);
        z_in[j] = wj - std::log(gamma) + std::log(s1);
        z_out[j] = wj - std::log(gamma) + std::log(s0);
        // r1 - r0 = 2 gamma e^{-w} / (r1 + r0), no cancellation
        score[j] = aj * std::log(s1 / s0) + 2.0 * gamma * e / (r1 + r0);
    }
    std::vector<double> out = z_out;
    for (std::size_t j : smallest_indices(score, m - static_cast<std::size_t>(K)))
        out[j] = z_in[j];
    return with_data(w, out);
}

double interior_scalar_root(double alpha, double v, double gamma1, double gamma2, double r) {
    if (v <= 0.0) throw std::invalid_argument("interior_scalar_root: v must be positive");
    if (gamma1 <= 0.0 || gamma2 <= 0.0)
        throw std::invalid_argument("interior_scalar_root: gamma parameters must be positive");
    double t = alpha + gamma1 * std::pow(v, r - 1.0) - gamma2 * v;
    double vr = std::pow(v, r);
    double disc = std::sqrt(t * t + 4.0 * gamma1 * gamma2 * vr);
    if (t > 0.0) return 2.0 * gamma1 * vr / (t + disc);
    return (-t + disc) / (2.0 * gamma2);
}

Point prox_orthant_smooth(const Point& a, const Point& y, double gamma1, double gamma2, double r) {
    if (!a.same_space(y)) throw std::invalid_argument("prox_orthant_smooth: space mismatch");
    if (a.tag() == SpaceTag::Product) {
        std::vector<Point> blocks;
        for (std::size_t b = 0; b < a.blocks().size(); ++b)
            blocks.push_back(prox_orthant_smooth(a.blocks()[b], y.blocks()[b], gamma1, gamma2, r));
        return Point::product(std::move(blocks));
    }
    std::vector<double> out(y.data().size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        if (y.data()[j] <= 0.0)
            throw std::invalid_argument("prox_orthant_smooth: center not strictly positive");
        out[j] = interior_scalar_root(a.data()[j], y.data()[j], gamma1, gamma2, r);
    }
    return with_data(y, out);
}

namespace {

// Upsilon(xi, v, alpha) = (alpha + g1 v^{r-1} - g2 v) xi + g2/2 xi^2 - g1 v^r log xi
double upsilon(double xi, double v, double alpha, double gamma1, double gamma2, double r) {
    double t = alpha + gamma1 * std::pow(v, r - 1.0) - gamma2 * v;
    return t * xi + 0.5 * gamma2 * xi * xi - gamma1 * std::pow(v, r) * std::log(xi);
}

} // namespace

Point prox_orthant_trimmed_l1(const Point& a, const Point& y, double gamma1, double gamma2,
                              double r, double lambda, int K) {
    if (lambda == 0.0) return prox_orthant_smooth(a, y, gamma1, gamma2, r);
    if (lambda < 0.0) throw std::invalid_argument("prox_orthant_trimmed_l1: lambda must be positive");
    if (!a.same_space(y)) throw std::invalid_argument("prox_orthant_trimmed_l1: space mismatch");
    std::size_t n = y.data().size();
    if (K < 0 || static_cast<std::size_t>(K) > n)
        throw std::invalid_argument("prox_orthant_trimmed_l1: K out of range");

    std::vector<double> x_pen(n), x_free(n), score(n);
    for (std::size_t j = 0; j < n; ++j) {
        double aj = a.data()[j];
        double yj = y.data()[j];
        if (yj <= 0.0)
            throw std::invalid_argument("prox_orthant_trimmed_l1: center not strictly positive");
        x_pen[j] = interior_scalar_root(aj + lambda, yj, gamma1, gamma2, r);
        x_free[j] = interior_scalar_root(aj, yj, gamma1, gamma2, r);
        score[j] = upsilon(x_pen[j], yj, aj + lambda, gamma1, gamma2, r) -
                   upsilon(x_free[j], yj, aj, gamma1, gamma2, r);
    }
    std::vector<double> out = x_free;
    for (std::size_t j : smallest_indices(score, n - static_cast<std::size_t>(K)))
        out[j] = x_pen[j];
    return with_data(y, out);
}

Point prox_psd_smooth(const Point& A, const Point& Y, double gamma1, double gamma2, double r) {
    if (!A.same_space(Y) || A.tag() != SpaceTag::Symmetric)
        throw std::invalid_argument("prox_psd_smooth: expects matching symmetric points");
    Eigen::MatrixXd Am = detail::to_eigen(A);
    Eigen::MatrixXd Ym = detail::to_eigen(Y);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esy(Ym);
    if (esy.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("prox_psd_smooth: center not positive definite");
    Eigen::MatrixXd Yinv =
        esy.eigenvectors() * esy.eigenvalues().cwiseInverse().asDiagonal() * esy.eigenvectors().transpose();
    double c = gamma1 * std::pow(esy.eigenvalues().prod(), r);

    Eigen::MatrixXd B = Am + c * Yinv - gamma2 * Ym;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esb(0.5 * (B + B.transpose()));
    Eigen::VectorXd lam = esb.eigenvalues();
    Eigen::VectorXd roots(lam.size());
    for (int i = 0; i < lam.size(); ++i) {
        double l = lam(i);
        double disc = std::sqrt(l * l + 4.0 * gamma2 * c);
        roots(i) = l > 0.0 ? 2.0 * c / (l + disc) : (-l + disc) / (2.0 * gamma2);
    }
    Eigen::MatrixXd X = esb.eigenvectors() * roots.asDiagonal() * esb.eigenvectors().transpose();

    // functional-calculus ansatz checked a posteriori via the stationarity
    // equation A + c (Y^{-1} - X^{-1}) + gamma2 (X - Y) = 0
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esx(X);
    Eigen::MatrixXd Xinv =
        esx.eigenvectors() * esx.eigenvalues().cwiseInverse().asDiagonal() * esx.eigenvectors().transpose();
    double scale_ref = std::max({1.0, Am.norm(), gamma2 * Ym.norm(), c * Yinv.norm()});
    double res = (Am + c * (Yinv - Xinv) + gamma2 * (X - Ym)).norm();
    if (!(res <= 1e-8 * scale_ref))
        throw std::runtime_error("prox_psd_smooth: stationarity residual check failed");
    return detail::sym_from_eigen(X);
}

namespace {

struct SocReduction {
    std::vector<double> b; // gamma2 y - (2c/theta) J y - a
    double s2 = 0.0;       // squared norm of the first block of b
    double c = 0.0;
    double gamma2 = 0.0;

    double phi(double mu) const {
        std::size_t n = b.size();
        double bn = b[n - 1];
        double t1 = bn * bn / ((gamma2 - mu) * (gamma2 - mu));
        double t2 = s2 / ((gamma2 + mu) * (gamma2 + mu));
        return mu * (t1 - t2) - 2.0 * c;
    }

    Point assemble(double mu) const {
        std::size_t n = b.size();
        std::vector<double> x(n);
        for (std::size_t j = 0; j + 1 < n; ++j) x[j] = b[j] / (gamma2 + mu);
        x[n - 1] = b[n - 1] / (gamma2 - mu);
        return Point::vector(std::move(x));
    }
};

double bisect(const SocReduction& red, double lo, double hi, int max_iters) {
    double flo = red.phi(lo);
    for (int it = 0; it < max_iters; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = red.phi(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-16 * std::max(1.0, std::abs(mid))) break;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Point prox_soc_smooth(const Point& a, const Point& y, double gamma1, double gamma2, double r) {
    if (!a.same_space(y) || a.tag() != SpaceTag::Vector)
        throw std::invalid_argument("prox_soc_smooth: expects matching vectors");
    if (!soc_interior_point(y)) throw std::invalid_argument("prox_soc_smooth: center not interior");
    std::size_t n = y.data().size();
    double theta = soc_jform(y);
    double c = gamma1 * std::pow(theta, r);

    // stationarity gamma2 x - mu J x = b with mu = 2c/<x,Jx> reduces the
    // subproblem to a scalar root find in mu
    SocReduction red;
    red.c = c;
    red.gamma2 = gamma2;
    red.b.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double Jy = (j + 1 < n) ? -y.data()[j] : y.data()[j];
        red.b[j] = gamma2 * y.data()[j] - (2.0 * c / theta) * Jy - a.data()[j];
    }
    for (std::size_t j = 0; j + 1 < n; ++j) red.s2 += red.b[j] * red.b[j];
    double bn = red.b[n - 1];

    std::vector<double> candidates;
    const int kMaxIters = 200;
    if (bn > 0.0) {
        // root in (0, gamma2); phi(0) = -2c < 0, phi -> +inf at gamma2^-
        double lo = 0.0;
        double hi = gamma2 * (1.0 - 1e-14);
        while (red.phi(hi) <= 0.0 && gamma2 - hi > 1e-300) hi = gamma2 - 0.5 * (gamma2 - hi);
        // scan for every sign change so a nonconvex subproblem cannot hide
        // a better stationary point
        const int kScan = 128;
        double prev = lo;
        double fprev = red.phi(prev);
        for (int s = 1; s <= kScan; ++s) {
            double cur = lo + (hi - lo) * s / kScan;
            double fcur = red.phi(cur);
            if ((fcur < 0.0) != (fprev < 0.0)) candidates.push_back(bisect(red, prev, cur, kMaxIters));
            prev = cur;
            fprev = fcur;
        }
        if (candidates.empty()) candidates.push_back(bisect(red, lo, hi, kMaxIters));
    } else if (bn < 0.0) {
        // root in (gamma2, inf); phi -> +inf at gamma2^+, -> -2c at inf
        double lo = gamma2 * (1.0 + 1e-14);
        while (red.phi(lo) <= 0.0 && lo - gamma2 > 1e-300) lo = gamma2 + 0.5 * (lo - gamma2);
        double hi = 2.0 * gamma2;
        int doubles = 0;
        while (red.phi(hi) > 0.0 && doubles++ < 200) hi *= 2.0;
        candidates.push_back(bisect(red, lo, hi, kMaxIters));
    } else {
        // mu = gamma2 exactly; x_n from mu <x,Jx> = 2c
        std::vector<double> x(n);
        double s = 0.0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            x[j] = red.b[j] / (2.0 * gamma2);
            s += x[j] * x[j];
        }
        x[n - 1] = std::sqrt(2.0 * c / gamma2 + s);
        return Point::vector(std::move(x));
    }

    double best_obj = kInf;
    Point best = y;
    for (double mu : candidates) {
        Point x = red.assemble(mu);
        if (!soc_interior_point(x)) continue;
        double obj = point_inner(a, x) + soc_value(x, y, gamma1, gamma2, r);
        if (obj < best_obj) {
            best_obj = obj;
            best = x;
        }
    }
    if (best_obj == kInf)
        throw std::runtime_error("prox_soc_smooth: no interior stationary point found");

    double qx = soc_jform(best);
    double res = 0.0;
    // relative stationarity: the reference scale tracks the magnitude of the
    // individual gradient terms, which grow near the cone boundary
    double scale_ref =
        std::max(1.0, point_norm(a) + gamma2 * (point_norm(best) + point_norm(y)) +
                          2.0 * c * point_norm(best) / qx + 2.0 * c * point_norm(y) / theta);
    for (std::size_t j = 0; j < n; ++j) {
        double Jx = (j + 1 < n) ? -best[j] : best[j];
        double Jy = (j + 1 < n) ? -y.data()[j] : y.data()[j];
        double rj = a.data()[j] + c * (-2.0 * Jx / qx + 2.0 * Jy / theta) +
                    gamma2 * (best[j] - y.data()[j]);
        res += rj * rj;
    }
    if (!(std::sqrt(res) <= 1e-10 * scale_ref))
        throw std::runtime_error("prox_soc_smooth: stationarity residual check failed");
    return best;
}

Point prox_de2_trimmed_logistic(const Point& a, const Point& yw, double gamma_tilde,
                                double gamma1, double gamma2, double lambda, int K) {
    if (gamma_tilde <= 0.0)
        throw std::invalid_argument("prox_de2_trimmed_logistic: multiplier must be positive");
    if (a.tag() != SpaceTag::Product || a.blocks().size() != 2)
        throw std::invalid_argument("prox_de2_trimmed_logistic: expects two-block product");
    Point x_block = prox_sqnorm_l1(a.blocks()[0], yw.blocks()[0], gamma_tilde * gamma2, lambda);
    Point z_block = prox_exp_trimmed(a.blocks()[1], yw.blocks()[1], gamma_tilde * gamma1, K);
    return Point::product({std::move(x_block), std::move(z_block)});
}

Point prox_generic(const Point& a, const Point& y, double gamma, const ProxGradDistance& d,
                   const std::function<double(const Point&)>& g, unsigned long long seed) {
    auto objective = [&](const Point& x) -> double {
        double dv = d.value(x, y);
        if (!(dv < kInf)) return kInf;
        double gv = g ? g(x) : 0.0;
        if (!(gv < kInf)) return kInf;
        return point_inner(a, x) + gamma * dv + gv;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_real_distribution<double> pos(0.5, 1.5);

    std::vector<double> y_flat = flatten(y);
    auto make_start = [&](int s) {
        if (s == 0) return y;
        std::vector<double> flat = y_flat;
        bool positive_domain = d.domain() == DomainTag::PositiveOrthant;
        for (double& v : flat) {
            if (positive_domain)
                v *= pos(rng);
            else
                v += 0.3 * uni(rng) * std::max(1.0, std::abs(v));
        }
        Point cand = with_data(y, flat);
        return d.interior(cand) ? cand : y;
    };

    double best_obj = kInf;
    Point best = y;
    for (int s = 0; s <= 20; ++s) {
        std::vector<double> x = flatten(make_start(s));
        double fx = objective(with_data(y, x));
        if (fx == kInf) continue;
        double step = 0.25 * std::max(1.0, point_norm(y));
        while (step > 1e-11) {
            bool improved = false;
            for (std::size_t i = 0; i < x.size(); ++i) {
                for (double sign : {1.0, -1.0}) {
                    double old = x[i];
                    x[i] = old + sign * step;
                    double f2 = objective(with_data(y, x));
                    if (f2 < fx) {
                        fx = f2;
                        improved = true;
                    } else {
                        x[i] = old;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (fx < best_obj) {
            best_obj = fx;
            best = with_data(y, x);
        }
    }
    if (best_obj == kInf) throw std::runtime_error("prox_generic: all starts infeasible");
    return best;
}

} // namespace gvd
