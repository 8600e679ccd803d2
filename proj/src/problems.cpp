#include "gvd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "gvd/prox.hpp"

namespace gvd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trimmed_sum(const std::vector<double>& losses, int K) {
    if (K < 0 || static_cast<std::size_t>(K) > losses.size())
        throw std::invalid_argument("trim count out of range");
    std::size_t keep = losses.size() - static_cast<std::size_t>(K);
    auto idx = smallest_indices(losses, keep);
    std::sort(idx.begin(), idx.end());
    double s = 0.0;
    for (std::size_t j : idx) s += losses[j];
    return s;
}

} // namespace

void ClassificationData::validate() const {
    if (m == 0 || p == 0) throw std::invalid_argument("ClassificationData: empty");
    if (labels.size() != m) throw std::invalid_argument("ClassificationData: label count mismatch");
    if (features.size() != m * p)
        throw std::invalid_argument("ClassificationData: feature size mismatch");
    for (double b : labels)
        if (b != 1.0 && b != -1.0)
            throw std::invalid_argument("ClassificationData: labels must be exactly +1 or -1");
    for (double v : features)
        if (!std::isfinite(v)) throw std::invalid_argument("ClassificationData: non-finite feature");
}

double linex(double xi) {
    if (xi > 700.0) return kInf;
    if (std::abs(xi) < 1e-5) {
        // expm1(xi) - xi keeps accuracy near zero
        return std::expm1(xi) - xi;
    }
    return std::exp(xi) - xi - 1.0;
}

double linex_deriv(double xi) {
    if (xi > 700.0) return kInf;
    return std::expm1(xi);
}

double logistic_loss(double z) {
    if (z >= 0.0) return std::log1p(std::exp(-z));
    return -z + std::log1p(std::exp(z));
}

double trimmed_logistic_value(const std::vector<double>& z, int K) {
    std::vector<double> losses(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) losses[j] = logistic_loss(z[j]);
    return trimmed_sum(losses, K);
}

double trimmed_exp_value(const std::vector<double>& z, int K) {
    std::vector<double> losses(z.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        losses[j] = z[j] < -700.0 ? kInf : std::exp(-z[j]);
    return trimmed_sum(losses, K);
}

double trimmed_l1_value(const std::vector<double>& x, int K) {
    std::vector<double> losses(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) losses[j] = std::abs(x[j]);
    return trimmed_sum(losses, K);
}

TrimmedLogisticBuild build_trimmed_logistic(const TrimmedLogisticProblem& problem, double gamma1,
                                            double gamma2) {
    problem.data.validate();
    if (problem.K < 0 || static_cast<std::size_t>(problem.K) > problem.data.m)
        throw std::invalid_argument("build_trimmed_logistic: K out of range");
    if (problem.lambda < 0.0) throw std::invalid_argument("build_trimmed_logistic: lambda < 0");
    if (!(gamma1 > 0.0 && gamma2 > 0.0))
        throw std::invalid_argument("build_trimmed_logistic: gamma1, gamma2 must be positive");

    auto data = std::make_shared<ClassificationData>(problem.data);
    const std::size_t m = data->m;
    const std::size_t p = data->p;
    const int K = problem.K;
    const double lambda = problem.lambda;

    auto margins = [data, m, p](const Point& u) {
        const Point& x = u.blocks()[0];
        const Point& z = u.blocks()[1];
        std::vector<double> xi(m);
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < p; ++t) dot += data->features[j * p + t] * x[t];
            xi[j] = data->labels[j] * dot - z[j];
        }
        return xi;
    };

    TrimmedLogisticBuild out;
    out.objective.f_value = [margins, m](const Point& u) {
        auto xi = margins(u);
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double l = linex(xi[j]);
            if (!(l < kInf)) return kInf;
            s += l;
        }
        return s;
    };
    out.objective.f_gradient = [margins, data, m, p](const Point& u) {
        auto xi = margins(u);
        std::vector<double> gx(p, 0.0), gz(m);
        for (std::size_t j = 0; j < m; ++j) {
            double s = linex_deriv(xi[j]);
            for (std::size_t t = 0; t < p; ++t)
                gx[t] += data->labels[j] * data->features[j * p + t] * s;
            gz[j] = -s;
        }
        return Point::product({Point::vector(std::move(gx)), Point::vector(std::move(gz))});
    };
    out.objective.g_value = [lambda, K](const Point& u) {
        const Point& x = u.blocks()[0];
        const Point& z = u.blocks()[1];
        double s = trimmed_exp_value(z.data(), K);
        if (!(s < kInf)) return kInf;
        if (lambda > 0.0)
            for (std::size_t t = 0; t < x.size(); ++t) s += lambda * std::abs(x[t]);
        return s;
    };
    out.objective.g_tag = "l1_plus_trimmed_exp";
    out.objective.lower_bound_hint = 0.0;

    out.pairing.distance = std::make_shared<De2Distance>(gamma1, gamma2);
    out.pairing.prox = [gamma1, gamma2, lambda, K](const Point& a, const Point& y, double gamma) {
        return prox_de2_trimmed_logistic(a, y, gamma, gamma1, gamma2, lambda, K);
    };
    return out;
}

CompositeObjective build_poisson_inverse(const std::vector<double>& A, std::size_t m,
                                         std::size_t n, const std::vector<double>& b) {
    if (m == 0 || n == 0) throw std::invalid_argument("build_poisson_inverse: empty problem");
    if (A.size() != m * n) throw std::invalid_argument("build_poisson_inverse: A size mismatch");
    if (b.size() != m) throw std::invalid_argument("build_poisson_inverse: b size mismatch");
    for (double v : A)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("build_poisson_inverse: A must be nonnegative");
    for (std::size_t j = 0; j < m; ++j) {
        double row = 0.0;
        for (std::size_t t = 0; t < n; ++t) row += A[j * n + t];
        if (row <= 0.0)
            throw std::invalid_argument("build_poisson_inverse: zero row in A");
        if (!(b[j] > 0.0))
            throw std::invalid_argument("build_poisson_inverse: b must be strictly positive");
    }

    auto Ap = std::make_shared<std::vector<double>>(A);
    auto bp = std::make_shared<std::vector<double>>(b);

    CompositeObjective obj;
    obj.f_value = [Ap, bp, m, n](const Point& x) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < n; ++t) dot += (*Ap)[j * n + t] * x[t];
            if (!(dot > 0.0)) return kInf;
            s += dot - (*bp)[j] * std::log(dot);
        }
        return s;
    };
    obj.f_gradient = [Ap, bp, m, n](const Point& x) {
        std::vector<double> g(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0.0;
            for (std::size_t t = 0; t < n; ++t) dot += (*Ap)[j * n + t] * x[t];
            double w = 1.0 - (*bp)[j] / dot;
            for (std::size_t t = 0; t < n; ++t) g[t] += (*Ap)[j * n + t] * w;
        }
        return Point::vector(std::move(g));
    };
    obj.g_value = [](const Point& x) {
        for (std::size_t t = 0; t < x.size(); ++t)
            if (x[t] < 0.0) return kInf;
        return 0.0;
    };
    obj.g_tag = "orthant_indicator";
    return obj;
}

CompositeObjective build_klnmf(const std::vector<double>& V, std::size_t m, std::size_t n,
                               std::size_t rank) {
    if (m == 0 || n == 0 || rank == 0) throw std::invalid_argument("build_klnmf: empty problem");
    if (V.size() != m * n) throw std::invalid_argument("build_klnmf: V size mismatch");
    bool any_positive = false;
    for (double v : V) {
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("build_klnmf: V must be nonnegative");
        if (v > 0.0) any_positive = true;
    }
    if (!any_positive) throw std::invalid_argument("build_klnmf: V must not be all zero");

    auto Vp = std::make_shared<std::vector<double>>(V);

    auto product_entry = [rank](const Point& W, const Point& H, std::size_t i, std::size_t j) {
        double s = 0.0;
        for (std::size_t t = 0; t < rank; ++t) s += W.at(i, t) * H.at(t, j);
        return s;
    };

    CompositeObjective obj;
    obj.f_value = [Vp, m, n, product_entry](const Point& u) {
        const Point& W = u.blocks()[0];
        const Point& H = u.blocks()[1];
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double wh = product_entry(W, H, i, j);
                double v = (*Vp)[i * n + j];
                if (v > 0.0) {
                    if (!(wh > 0.0)) return kInf;
                    s += wh - v * std::log(wh);
                } else {
                    if (wh < 0.0) return kInf;
                    s += wh;
                }
            }
        return s;
    };
    obj.f_gradient = [Vp, m, n, rank, product_entry](const Point& u) {
        const Point& W = u.blocks()[0];
        const Point& H = u.blocks()[1];
        // R = 1 - V/(WH) on the support of V, 1 elsewhere
        std::vector<double> R(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double v = (*Vp)[i * n + j];
                double wh = product_entry(W, H, i, j);
                R[i * n + j] = v > 0.0 ? 1.0 - v / wh : 1.0;
            }
        std::vector<double> gW(m * rank, 0.0), gH(rank * n, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double r = R[i * n + j];
                for (std::size_t t = 0; t < rank; ++t) {
                    gW[i * rank + t] += r * H.at(t, j);
                    gH[t * n + j] += W.at(i, t) * r;
                }
            }
        return Point::product({Point::matrix(m, rank, std::move(gW)),
                               Point::matrix(rank, n, std::move(gH))});
    };
    obj.g_value = [](const Point& u) {
        for (const Point& blk : u.blocks())
            for (std::size_t t = 0; t < blk.size(); ++t)
                if (blk[t] < 0.0) return kInf;
        return 0.0;
    };
    obj.g_tag = "orthant_indicator";
    return obj;
}

CompositeObjective build_quadratic(const Point& Q, const Point& c, double lambda) {
    if (Q.tag() != SpaceTag::Symmetric) throw std::invalid_argument("build_quadratic: Q not symmetric");
    if (c.tag() != SpaceTag::Vector || c.size() != Q.rows())
        throw std::invalid_argument("build_quadratic: c dimension mismatch");
    if (lambda < 0.0) throw std::invalid_argument("build_quadratic: lambda < 0");

    const std::size_t n = Q.rows();
    auto Qp = std::make_shared<Point>(Q);
    auto cp = std::make_shared<Point>(c);

    auto matvec = [Qp, n](const Point& x) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) y[i] += Qp->at(i, j) * x[j];
        return y;
    };

    CompositeObjective obj;
    obj.f_value = [matvec, cp, n](const Point& x) {
        auto qx = matvec(x);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += 0.5 * x[i] * qx[i] + (*cp)[i] * x[i];
        return s;
    };
    obj.f_gradient = [matvec, cp, n](const Point& x) {
        auto qx = matvec(x);
        for (std::size_t i = 0; i < n; ++i) qx[i] += (*cp)[i];
        return Point::vector(std::move(qx));
    };
    if (lambda > 0.0) {
        obj.g_value = [lambda](const Point& x) {
            double s = 0.0;
            for (std::size_t t = 0; t < x.size(); ++t) s += std::abs(x[t]);
            return lambda * s;
        };
        obj.g_tag = "l1";
    } else {
        obj.g_value = [](const Point&) { return 0.0; };
        obj.g_tag = "zero";
    }
    return obj;
}

} // namespace gvd
