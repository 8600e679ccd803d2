#pragma once

#include "gvd/solver.hpp"

namespace gvd {

// Ready-made distance/prox pairings for the shipped problem classes. The
// backtracking multiplier gamma is folded into the distance parameters.

ProxPairing make_sqnorm_l1_pairing(double lambda);

// lambda == 0 or K with lambda routes to the smooth/trimmed orthant solver.
ProxPairing make_orthant_pairing(double gamma1, double gamma2, double r, double lambda = 0.0,
                                 int K = 0);

ProxPairing make_psd_pairing(double gamma1, double gamma2, double r);

// SOC solver; falls back to the numeric subproblem search if the scalar
// reduction fails to certify its stationarity residual.
ProxPairing make_soc_pairing(double gamma1, double gamma2, double r);

ProxPairing make_de2_pairing(double gamma1, double gamma2, double lambda, int K);

} // namespace gvd
