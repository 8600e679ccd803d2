#pragma once

#include <functional>
#include <string>
#include <vector>

namespace gvd {

struct SolverConfig {
    double beta = 2.0;     // > 1
    double sigma = 0.5;    // in (0,1)
    double p_min = 1.0;    // in (0,1]
    // p_{k+1} in [p_min, 1]; constant 1 by default (monotone mode)
    std::function<double(int)> p_schedule;
    int max_outer_iters = 100000;
    int max_inner_iters = 60;
    double tol_residual = 1e-6;
    double tol_step = 1e-10;

    double p_at(int k) const { return p_schedule ? p_schedule(k) : 1.0; }
    void validate() const;
};

struct IterationRecord {
    int k = 0;
    double F_x = 0.0;           // F(x^{k+1})
    double F_merit = 0.0;       // F_{k+1}
    int i_k = 0;                // backtracking count
    double beta_pow_ik = 1.0;
    double D_step = 0.0;        // D_k(x^{k+1}, x^k)
    double step_norm = 0.0;
    double residual_norm = 0.0; // NaN when the distance gradient is unavailable
    double wall_ms = 0.0;
};

enum class StopRule { Residual, Step, Budget, BacktrackingFailure, FixedPoint, None };

std::string stop_rule_name(StopRule rule);

} // namespace gvd
