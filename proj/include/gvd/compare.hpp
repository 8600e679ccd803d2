#pragma once

#include <string>
#include <vector>

#include "gvd/point.hpp"

namespace gvd {

// Randomized closed-form-vs-oracle cross-checks for one prox family.
// Families: sqnorm_l1, trimmed_exp, orthant_smooth, orthant_trimmed_l1,
// psd_smooth, soc_smooth.

struct CompareFailure {
    int index = 0;
    unsigned long long seed = 0;
    double obj_gap = 0.0;
    double arg_gap = 0.0;
    bool budget_exhausted = false;
};

struct CompareReport {
    std::string family;
    int instances = 0;
    double max_obj_gap = 0.0; // signed: closed-form objective minus oracle objective
    double max_oracle_advantage = 0.0;
    double max_arg_gap = 0.0;
    bool arg_checked = false; // arg gap checked only for unique-minimizer families
    std::vector<CompareFailure> failures;

    bool pass(double obj_tol = 1e-7, double arg_tol = 1e-6) const;
};

CompareReport compare_family(const std::string& family, int instances, unsigned long long seed,
                             int max_dim = 5, long long budget_per_instance = 400000);

} // namespace gvd
