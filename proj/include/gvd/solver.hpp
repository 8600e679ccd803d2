#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gvd/config.hpp"
#include "gvd/distances.hpp"
#include "gvd/objective.hpp"
#include "gvd/point.hpp"

namespace gvd {

// A distance together with the solver of its subproblem
//   argmin_x <a,x> + gamma * D(x,y) + g(x).
// The prox callback receives the linear term a = grad f(x^k), the center
// y = x^k, and the backtracking multiplier gamma = beta^i.
struct ProxPairing {
    std::shared_ptr<const ProxGradDistance> distance;
    std::function<Point(const Point& a, const Point& y, double gamma)> prox;
};

// Selects the distance/prox pairing per outer iteration. All selected
// distances must share the same domain set C.
struct DistanceSchedule {
    std::function<const ProxPairing&(int k)> select;

    static DistanceSchedule constant(ProxPairing pairing);
};

struct Trace {
    double F0 = 0.0;
    std::vector<IterationRecord> records;
    StopRule stop = StopRule::None;
    bool interior_ok = true; // all iterates strictly interior (barrier distances)
    Point final_x = Point::zeros_vector(0);
};

struct BacktrackingResult {
    Point x_next;
    int i_k = 0;
    double beta_pow_ik = 1.0;
    double D_step = 0.0;
    double F_next = 0.0;
    bool accepted = false;
};

// Inner loop of Algorithm: find the smallest i with
//   F(x^{k,i}) <= F_merit - sigma beta^i D(x^{k,i}, x^k).
BacktrackingResult backtracking_step(const CompositeObjective& obj, const ProxPairing& pairing,
                                     const Point& x, double F_merit, const Point& grad_fx,
                                     const SolverConfig& config);

// F_{k+1} = p_{k+1} F(x^{k+1}) + (1 - p_{k+1}) F_k.
double merit_update(double F_merit, double F_new, double p_k1);

// ||grad f(x_next) - grad f(x_prev) - beta^{i_k} grad_x D(x_next, x_prev)||;
// NaN when the distance gradient is unavailable at the step.
double stationarity_residual(const CompositeObjective& obj, const ProxGradDistance& d,
                             const Point& x_next, const Point& x_prev, double beta_pow_ik);

StopRule check_termination(const IterationRecord& record, const SolverConfig& config);

Trace gvdpgm_run(const CompositeObjective& obj, const DistanceSchedule& schedule,
                 const SolverConfig& config, const Point& x0);

} // namespace gvd
