#pragma once

#include <functional>
#include <memory>

#include "gvd/distances.hpp"
#include "gvd/point.hpp"

namespace gvd {

// Closed-form / reduced-form solvers for the subproblem
//   argmin_x  <a, x> + gamma * D(x, y) + g(x)
// for each (distance, g) pairing. All functions are pure.

// sqnorm distance + lambda * ||x||_1 (componentwise soft-threshold).
Point prox_sqnorm_l1(const Point& a, const Point& y, double gamma, double lambda);

// exponential distance + trimmed exponential penalty T^exp_K.
Point prox_exp_trimmed(const Point& a, const Point& w, double gamma, int K);

// Unique positive root of  gamma2 xi^2 + (alpha + gamma1 v^{r-1} - gamma2 v) xi
//                          - gamma1 v^r = 0.
double interior_scalar_root(double alpha, double v, double gamma1, double gamma2, double r);

// orthant distance, smooth g (componentwise scalar root).
Point prox_orthant_smooth(const Point& a, const Point& y, double gamma1, double gamma2, double r);

// orthant distance + lambda * T_K (trimmed l1 on the positive orthant).
Point prox_orthant_trimmed_l1(const Point& a, const Point& y, double gamma1, double gamma2,
                              double r, double lambda, int K);

// PSD cone distance, smooth g (spectral solver).
Point prox_psd_smooth(const Point& A, const Point& Y, double gamma1, double gamma2, double r);

// second-order cone distance, smooth g (scalar reduction + safeguarded Newton).
Point prox_soc_smooth(const Point& a, const Point& y, double gamma1, double gamma2, double r);

// D_{e,2} + (lambda l1 on x-block, trimmed exponential on z-block); the
// subproblem separates into the two block solvers. gamma_tilde is the
// backtracking multiplier beta^i.
Point prox_de2_trimmed_logistic(const Point& a, const Point& yw, double gamma_tilde,
                                double gamma1, double gamma2, double lambda, int K);

// Numeric fallback: multistart interior-safeguarded pattern search on the
// subproblem objective. Approximate; used for testing and as SOC fallback.
Point prox_generic(const Point& a, const Point& y, double gamma, const ProxGradDistance& d,
                   const std::function<double(const Point&)>& g, unsigned long long seed = 0);

// Sorted trimming scores used by the trimmed solvers; exposed for tests.
// Returns the indices of the m-K smallest scores, ties broken by smaller
// index.
std::vector<std::size_t> smallest_indices(const std::vector<double>& scores, std::size_t keep);

} // namespace gvd
