#include "gvd/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gvd {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

void SolverConfig::validate() const {
    if (!(beta > 1.0)) throw std::invalid_argument("SolverConfig: beta must be > 1");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("SolverConfig: sigma must be in (0,1)");
    if (!(p_min > 0.0 && p_min <= 1.0)) throw std::invalid_argument("SolverConfig: p_min must be in (0,1]");
    if (max_outer_iters <= 0) throw std::invalid_argument("SolverConfig: max_outer_iters must be positive");
    if (max_inner_iters <= 0) throw std::invalid_argument("SolverConfig: max_inner_iters must be positive");
    if (!(tol_residual > 0.0)) throw std::invalid_argument("SolverConfig: tol_residual must be positive");
    if (!(tol_step > 0.0)) throw std::invalid_argument("SolverConfig: tol_step must be positive");
}

std::string stop_rule_name(StopRule rule) {
    switch (rule) {
        case StopRule::Residual: return "residual";
        case StopRule::Step: return "step";
        case StopRule::Budget: return "budget";
        case StopRule::BacktrackingFailure: return "backtracking_failure";
        case StopRule::FixedPoint: return "fixed_point";
        case StopRule::None: return "none";
    }
    return "unknown";
}

DistanceSchedule DistanceSchedule::constant(ProxPairing pairing) {
    auto holder = std::make_shared<ProxPairing>(std::move(pairing));
    DistanceSchedule s;
    s.select = [holder](int) -> const ProxPairing& { return *holder; };
    return s;
}

BacktrackingResult backtracking_step(const CompositeObjective& obj, const ProxPairing& pairing,
                                     const Point& x, double F_merit, const Point& grad_fx,
                                     const SolverConfig& config) {
    BacktrackingResult result;
    for (int i = 0; i <= config.max_inner_iters; ++i) {
        double gamma = std::pow(config.beta, i);
        Point cand = pairing.prox(grad_fx, x, gamma);
        double D = pairing.distance->value(cand, x);
        double F_cand = composite_value(obj, cand);
        result.x_next = cand;
        result.i_k = i;
        result.beta_pow_ik = gamma;
        result.D_step = D;
        result.F_next = F_cand;
        if (F_cand <= F_merit - config.sigma * gamma * D) {
            result.accepted = true;
            return result;
        }
    }
    return result; // carries the last rejected candidate
}

double merit_update(double F_merit, double F_new, double p_k1) {
    return p_k1 * F_new + (1.0 - p_k1) * F_merit;
}

double stationarity_residual(const CompositeObjective& obj, const ProxGradDistance& d,
                             const Point& x_next, const Point& x_prev, double beta_pow_ik) {
    if (!d.interior(x_next) || !d.interior(x_prev)) return kNaN;
    Point g_next = obj.f_gradient(x_next);
    Point g_prev = obj.f_gradient(x_prev);
    Point xi = sub(sub(g_next, g_prev), scale(beta_pow_ik, d.grad_x(x_next, x_prev)));
    return point_norm(xi);
}

StopRule check_termination(const IterationRecord& record, const SolverConfig& config) {
    if (std::isfinite(record.residual_norm) && record.residual_norm <= config.tol_residual)
        return StopRule::Residual;
    if (record.beta_pow_ik * record.D_step <= config.tol_step) return StopRule::Step;
    if (record.k + 1 >= config.max_outer_iters) return StopRule::Budget;
    return StopRule::None;
}

Trace gvdpgm_run(const CompositeObjective& obj, const DistanceSchedule& schedule,
                 const SolverConfig& config, const Point& x0) {
    config.validate();
    double F0 = composite_value(obj, x0);
    if (!std::isfinite(F0)) throw std::invalid_argument("gvdpgm_run: F(x0) not finite");

    Trace trace;
    trace.F0 = F0;
    trace.final_x = x0;

    Point x = x0;
    double F_merit = F0;
    const ProxPairing& first = schedule.select(0);
    if (!first.distance->interior(x0))
        throw std::invalid_argument("gvdpgm_run: x0 not strictly interior");

    for (int k = 0; k < config.max_outer_iters; ++k) {
        auto t0 = std::chrono::steady_clock::now();
        const ProxPairing& pairing = schedule.select(k);
        Point grad_fx = obj.f_gradient(x);
        BacktrackingResult bt = backtracking_step(obj, pairing, x, F_merit, grad_fx, config);
        if (!bt.accepted) {
            trace.stop = StopRule::BacktrackingFailure;
            return trace;
        }
        if (!pairing.distance->interior(bt.x_next)) trace.interior_ok = false;

        double p_k1 = std::clamp(config.p_at(k + 1), config.p_min, 1.0);
        F_merit = merit_update(F_merit, bt.F_next, p_k1);

        IterationRecord rec;
        rec.k = k;
        rec.F_x = bt.F_next;
        rec.F_merit = F_merit;
        rec.i_k = bt.i_k;
        rec.beta_pow_ik = bt.beta_pow_ik;
        rec.D_step = bt.D_step;
        rec.step_norm = point_norm(sub(bt.x_next, x));
        rec.residual_norm =
            stationarity_residual(obj, *pairing.distance, bt.x_next, x, bt.beta_pow_ik);
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        trace.records.push_back(rec);
        x = bt.x_next;
        trace.final_x = x;

        StopRule rule = check_termination(rec, config);
        if (rule != StopRule::None) {
            trace.stop = rule;
            return trace;
        }
    }
    trace.stop = StopRule::Budget;
    return trace;
}

double composite_value(const CompositeObjective& obj, const Point& x) {
    double f = obj.f_value(x);
    if (!(f < kInf)) return kInf;
    double g = obj.g_value ? obj.g_value(x) : 0.0;
    if (!(g < kInf)) return kInf;
    return f + g;
}

} // namespace gvd
