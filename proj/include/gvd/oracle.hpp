#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gvd/distances.hpp"
#include "gvd/point.hpp"
#include "gvd/solver.hpp"

namespace gvd {

// Nonsmooth term description for the brute-force subproblem oracle. Trimmed
// kinds are minimized by exact enumeration over kept-index subsets when the
// dimension allows it.
struct OracleG {
    std::string kind = "zero"; // zero | l1 | trimmed_l1 | trimmed_exp
    double lambda = 0.0;
    int K = 0;

    double value(const Point& x) const;
};

struct BruteForceResult {
    Point x = Point::zeros_vector(0);
    double objective = 0.0;
    bool budget_exhausted = false;
    long long evaluations = 0;
};

// Independent minimizer for  <a,x> + gamma * D(x,y) + g(x): multistart
// coordinatewise grid + golden-section sweeps, refined to ~1e-10 per
// coordinate. PSD domains are parametrized through a Cholesky factor.
// budget caps objective evaluations; exhaustion returns the best point found
// with the flag set.
BruteForceResult brute_force_prox(const Point& a, const Point& y, double gamma,
                                  const ProxGradDistance& d, const OracleG& g,
                                  long long budget = 2000000,
                                  unsigned long long seed = 12345, int starts = 13);

// Central differences with per-coordinate step rel_step * max(1,|x_j|); the
// step shrinks up to 3 times when the stencil leaves the domain of fn.
Point finite_diff_grad(const std::function<double(const Point&)>& fn, const Point& x,
                       double rel_step = 1e-6);

struct RateEstimate {
    std::string regime = "inconclusive"; // finite_steps | superlinear | linear |
                                         // sublinear | inconclusive
    std::optional<double> fitted_theta;
    std::optional<double> linear_ratio;
    int fit_window = 0;
    double fit_residual = 0.0;
    std::string diagnostics;
};

// Classify the decay of a positive gap series R_k.
RateEstimate estimate_rate_series(const std::vector<double>& R);

// R_k = F(x^k) - F*, with F* from the hint or the final value minus a small
// margin when no hint is given.
RateEstimate estimate_rate(const Trace& trace, std::optional<double> F_star_hint = std::nullopt);

} // namespace gvd
