#pragma once

#include <vector>

#include "gvd/objective.hpp"
#include "gvd/point.hpp"
#include "gvd/solver.hpp"

namespace gvd {

struct ClassificationData {
    std::vector<double> labels;   // entries exactly -1 or +1
    std::vector<double> features; // row-major m x p
    std::size_t m = 0;
    std::size_t p = 0;

    void validate() const;
};

struct TrimmedLogisticProblem {
    ClassificationData data;
    int K = 0;          // trim count, 0..m
    double lambda = 0.0; // l1 weight on the model parameters
};

// LINEX loss l(xi) = e^xi - xi - 1 and its derivative.
double linex(double xi);
double linex_deriv(double xi);

// Trimmed penalties: evaluate the per-coordinate loss, drop the K largest
// contributors, sum the rest.
double trimmed_logistic_value(const std::vector<double>& z, int K);
double trimmed_exp_value(const std::vector<double>& z, int K);
double trimmed_l1_value(const std::vector<double>& x, int K);

// numerically stable log(1 + e^{-z})
double logistic_loss(double z);

struct TrimmedLogisticBuild {
    CompositeObjective objective; // over product(x in R^p, z in R^m)
    ProxPairing pairing;          // D_{e,2} with its paired prox
};

TrimmedLogisticBuild build_trimmed_logistic(const TrimmedLogisticProblem& problem, double gamma1,
                                            double gamma2);

// Poisson linear inverse: f(x) = sum_j (<a_j,x> - b_j log <a_j,x>) over the
// nonnegative orthant. A is row-major m x n with nonnegative, nonzero rows;
// b strictly positive.
CompositeObjective build_poisson_inverse(const std::vector<double>& A, std::size_t m,
                                         std::size_t n, const std::vector<double>& b);

// KL-divergence NMF over product(W in R^{m x rank}, H in R^{rank x n}):
// f(W,H) = sum_{jj'} ((WH)_{jj'} - V_{jj'} log (WH)_{jj'}), the log/ratio
// terms present only on the support V > 0.
CompositeObjective build_klnmf(const std::vector<double>& V, std::size_t m, std::size_t n,
                               std::size_t rank);

// f(x) = 1/2 <x,Qx> + <c,x> with optional l1 term lambda ||x||_1.
CompositeObjective build_quadratic(const Point& Q, const Point& c, double lambda = 0.0);

} // namespace gvd
