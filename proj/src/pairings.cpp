#include "gvd/pairings.hpp"

#include <memory>
#include <stdexcept>

#include "gvd/prox.hpp"

namespace gvd {

ProxPairing make_sqnorm_l1_pairing(double lambda) {
    ProxPairing p;
    p.distance = std::make_shared<SqnormDistance>();
    p.prox = [lambda](const Point& a, const Point& y, double gamma) {
        return prox_sqnorm_l1(a, y, gamma, lambda);
    };
    return p;
}

ProxPairing make_orthant_pairing(double gamma1, double gamma2, double r, double lambda, int K) {
    ProxPairing p;
    p.distance = std::make_shared<OrthantDistance>(gamma1, gamma2, r);
    if (lambda == 0.0) {
        p.prox = [gamma1, gamma2, r](const Point& a, const Point& y, double gamma) {
            return prox_orthant_smooth(a, y, gamma * gamma1, gamma * gamma2, r);
        };
    } else {
        p.prox = [gamma1, gamma2, r, lambda, K](const Point& a, const Point& y, double gamma) {
            return prox_orthant_trimmed_l1(a, y, gamma * gamma1, gamma * gamma2, r, lambda, K);
        };
    }
    return p;
}

ProxPairing make_psd_pairing(double gamma1, double gamma2, double r) {
    ProxPairing p;
    p.distance = std::make_shared<PsdDistance>(gamma1, gamma2, r);
    p.prox = [gamma1, gamma2, r](const Point& A, const Point& Y, double gamma) {
        return prox_psd_smooth(A, Y, gamma * gamma1, gamma * gamma2, r);
    };
    return p;
}

ProxPairing make_soc_pairing(double gamma1, double gamma2, double r) {
    ProxPairing p;
    auto d = std::make_shared<SocDistance>(gamma1, gamma2, r);
    p.distance = d;
    p.prox = [gamma1, gamma2, r, d](const Point& a, const Point& y, double gamma) {
        try {
            return prox_soc_smooth(a, y, gamma * gamma1, gamma * gamma2, r);
        } catch (const std::runtime_error&) {
            auto zero = [](const Point&) { return 0.0; };
            return prox_generic(a, y, gamma, *d, zero, 7);
        }
    };
    return p;
}

ProxPairing make_de2_pairing(double gamma1, double gamma2, double lambda, int K) {
    ProxPairing p;
    p.distance = std::make_shared<De2Distance>(gamma1, gamma2);
    p.prox = [gamma1, gamma2, lambda, K](const Point& a, const Point& yw, double gamma) {
        return prox_de2_trimmed_logistic(a, yw, gamma, gamma1, gamma2, lambda, K);
    };
    return p;
}

} // namespace gvd
