#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "gvd/oracle.hpp"
#include "gvd/point.hpp"
#include "gvd/problems.hpp"

using namespace gvd;

namespace {

// All index subsets of {0..m-1} of the given size.
void subsets(std::size_t m, std::size_t size, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == size) {
        out.push_back(cur);
        return;
    }
    for (std::size_t j = start; j < m; ++j) {
        cur.push_back(j);
        subsets(m, size, j + 1, cur, out);
        cur.pop_back();
    }
}

double enum_trimmed(const std::vector<double>& per_coord, int K) {
    std::size_t m = per_coord.size();
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> cur;
    subsets(m, m - static_cast<std::size_t>(K), 0, cur, sets);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& s : sets) {
        double v = 0.0;
        for (std::size_t j : s) v += per_coord[j];
        best = std::min(best, v);
    }
    return best;
}

} // namespace

TEST_CASE("linex loss values and derivative") {
    CHECK(linex(0.0) == 0.0);
    CHECK(linex_deriv(0.0) == 0.0);
    CHECK(linex(1.0) == doctest::Approx(std::exp(1.0) - 2.0));
    CHECK(linex(1.0) == doctest::Approx(0.71828).epsilon(1e-4));
    CHECK(linex(-3.0) == doctest::Approx(std::exp(-3.0) + 2.0));
    CHECK(linex(0.5) >= 0.0);
    CHECK(linex(-0.5) >= 0.0);

    // derivative against central differences at 20 points in [-5, 5]
    for (int i = 0; i < 20; ++i) {
        double xi = -5.0 + 10.0 * i / 19.0;
        double h = 1e-6;
        double fd = (linex(xi + h) - linex(xi - h)) / (2.0 * h);
        CHECK(std::abs(linex_deriv(xi) - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    }
}

TEST_CASE("stable logistic loss") {
    CHECK(logistic_loss(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(logistic_loss(700.0) >= 0.0);
    CHECK(logistic_loss(700.0) <= 1e-300);
    CHECK(logistic_loss(-800.0) == doctest::Approx(800.0));
    CHECK(std::isfinite(logistic_loss(-800.0)));
}

TEST_CASE("trimmed penalties: frozen values") {
    CHECK(trimmed_l1_value({3.0, -1.0, 2.0}, 1) == doctest::Approx(3.0));
    CHECK(trimmed_l1_value({3.0, -1.0, 2.0}, 3) == 0.0);
    CHECK(trimmed_exp_value({0.0, 0.0}, 2) == 0.0);
    CHECK(trimmed_logistic_value({0.0, 0.0, 0.0}, 1) == doctest::Approx(2.0 * std::log(2.0)));
    CHECK_THROWS(trimmed_l1_value({1.0}, 2));
}

TEST_CASE("trimmed penalties equal subset enumeration") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 40; ++t) {
        std::size_t m = 2 + t % 5;
        int K = t % static_cast<int>(m + 1);
        std::vector<double> z(m);
        for (auto& v : z) v = u(rng);

        std::vector<double> logi(m), expo(m), l1(m);
        for (std::size_t j = 0; j < m; ++j) {
            logi[j] = logistic_loss(z[j]);
            expo[j] = std::exp(-z[j]);
            l1[j] = std::abs(z[j]);
        }
        CHECK(trimmed_logistic_value(z, K) == doctest::Approx(enum_trimmed(logi, K)).epsilon(1e-14));
        CHECK(trimmed_exp_value(z, K) == doctest::Approx(enum_trimmed(expo, K)).epsilon(1e-14));
        CHECK(trimmed_l1_value(z, K) == doctest::Approx(enum_trimmed(l1, K)).epsilon(1e-14));
    }
}

TEST_CASE("classification data validation") {
    ClassificationData good;
    good.labels = {1.0, -1.0};
    good.features = {0.5, -0.2, 0.1, 0.9};
    good.m = 2;
    good.p = 2;
    CHECK_NOTHROW(good.validate());

    ClassificationData bad = good;
    bad.labels[0] = 0.0;
    CHECK_THROWS(bad.validate());

    ClassificationData ragged = good;
    ragged.features.pop_back();
    CHECK_THROWS(ragged.validate());
}

TEST_CASE("reformulated objective gradient matches finite differences") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ClassificationData data;
    data.m = 5;
    data.p = 3;
    for (std::size_t j = 0; j < data.m; ++j) {
        data.labels.push_back(j % 2 == 0 ? 1.0 : -1.0);
        for (std::size_t i = 0; i < data.p; ++i) data.features.push_back(u(rng));
    }
    TrimmedLogisticProblem problem{data, 1, 0.1};
    auto build = build_trimmed_logistic(problem, 1.0, 1.0);

    for (int t = 0; t < 5; ++t) {
        std::vector<double> xv(data.p), zv(data.m);
        for (auto& v : xv) v = u(rng);
        for (auto& v : zv) v = u(rng);
        Point xz = Point::product({Point::vector(xv), Point::vector(zv)});
        Point g = build.objective.f_gradient(xz);
        Point fd = finite_diff_grad(build.objective.f_value, xz);
        CHECK(point_norm(sub(g, fd)) <= 1e-5);
    }
}

TEST_CASE("inner minimization over z recovers the logistic loss") {
    // min_z { linex(w - z) + e^{-z} } = log(1 + e^{-w}), checked per
    // coordinate with a fine golden-section scan
    auto inner_min = [](double w) {
        auto fn = [&](double z) { return linex(w - z) + std::exp(-z); };
        double lo = -30.0, hi = 30.0;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
        for (int it = 0; it < 200; ++it) {
            if (fn(c) < fn(d)) { hi = d; d = c; c = hi - gr * (hi - lo); }
            else { lo = c; c = d; d = lo + gr * (hi - lo); }
        }
        return fn(0.5 * (lo + hi));
    };

    CHECK(inner_min(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    for (double w : {-3.0, -1.0, -0.25, 0.5, 1.0, 2.5, 4.0}) {
        CHECK(inner_min(w) == doctest::Approx(logistic_loss(w)).epsilon(1e-9));
    }
}

TEST_CASE("reformulation equivalence on random instances") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int inst = 0; inst < 10; ++inst) {
        std::size_t m = 2 + inst % 5;
        std::size_t p = 1 + inst % 3;
        int K = inst % 3;
        if (static_cast<std::size_t>(K) > m) K = 0;

        ClassificationData data;
        data.m = m;
        data.p = p;
        for (std::size_t j = 0; j < m; ++j) {
            data.labels.push_back(u(rng) > 0 ? 1.0 : -1.0);
            for (std::size_t i = 0; i < p; ++i) data.features.push_back(u(rng));
        }
        TrimmedLogisticProblem problem{data, K, 0.3};
        auto build = build_trimmed_logistic(problem, 1.0, 1.0);

        for (int t = 0; t < 5; ++t) {
            std::vector<double> xv(p);
            for (auto& v : xv) v = u(rng);

            // margins w_j = b_j <a_j, x>
            std::vector<double> w(m, 0.0), per(m);
            double l1 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t i = 0; i < p; ++i) w[j] += data.features[j * p + i] * xv[i];
                w[j] *= data.labels[j];
                per[j] = logistic_loss(w[j]);
            }
            for (double v : xv) l1 += std::abs(v);
            double direct = enum_trimmed(per, K) + 0.3 * l1;

            // analytic inner minimizer over z: kept coordinates (the m-K
            // smallest logistic contributions) take z_j = log(1+e^{w_j})
            // with inner value log(1+e^{-w_j}); trimmed coordinates take
            // z_j = w_j, zeroing their loss term
            std::vector<std::size_t> order(m);
            for (std::size_t j = 0; j < m; ++j) order[j] = j;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a2, std::size_t b2) { return per[a2] < per[b2]; });
            std::vector<double> zstar(m);
            std::vector<bool> kept(m, false);
            for (std::size_t j = 0; j + static_cast<std::size_t>(K) < m; ++j) kept[order[j]] = true;
            for (std::size_t j = 0; j < m; ++j)
                zstar[j] = kept[j] ? std::log1p(std::exp(w[j])) : w[j];

            Point xz = Point::product({Point::vector(xv), Point::vector(zstar)});
            double min_z = composite_value(build.objective, xz);
            CHECK(std::abs(min_z - direct) <= 1e-8);
        }
    }
}

TEST_CASE("symmetric instance attains m log 2") {
    // K=0, lambda=0, x=0: every margin is 0 and the inner optimum per
    // coordinate is log 2
    ClassificationData data;
    data.m = 4;
    data.p = 2;
    data.labels = {1.0, -1.0, 1.0, -1.0};
    data.features = {0.3, -0.1, 0.8, 0.2, -0.4, 0.5, 0.1, 0.7};
    TrimmedLogisticProblem problem{data, 0, 0.0};
    auto build = build_trimmed_logistic(problem, 1.0, 1.0);

    // z*_j = log 2 sits at the per-coordinate inner optimum when w = 0:
    // d/dz [linex(-z) + e^{-z}] = 0 at e^{-z}(... ) -> z = log 2
    std::vector<double> zstar(data.m, std::log(2.0));
    Point xz = Point::product({Point::zeros_vector(data.p), Point::vector(zstar)});
    double val = composite_value(build.objective, xz);
    CHECK(val == doctest::Approx(data.m * std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("poisson inverse objective") {
    // scalar stationarity: a=(1), b=(1), x=1 -> f=1, grad 0
    CompositeObjective scalar = build_poisson_inverse({1.0}, 1, 1, {1.0});
    Point one = Point::vector({1.0});
    CHECK(scalar.f_value(one) == doctest::Approx(1.0));
    CHECK(point_norm(scalar.f_gradient(one)) <= 1e-14);

    // barrier: zero dot product gives +inf
    CompositeObjective two = build_poisson_inverse({1.0, 0.0, 0.0, 1.0}, 2, 2, {1.0, 2.0});
    CHECK(std::isinf(two.f_value(Point::vector({0.0, 1.0}))));

    // gradient vs finite differences at interior points
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    std::vector<double> A(6);
    for (auto& v : A) v = 0.1 + u(rng);
    std::vector<double> b = {u(rng), u(rng)};
    CompositeObjective obj = build_poisson_inverse(A, 2, 3, b);
    for (int t = 0; t < 10; ++t) {
        Point x = Point::vector({u(rng), u(rng), u(rng)});
        Point g = obj.f_gradient(x);
        Point fd = finite_diff_grad(obj.f_value, x);
        CHECK(point_norm(sub(g, fd)) <= 1e-5);
    }

    // validation errors
    CHECK_THROWS(build_poisson_inverse({0.0, 0.0}, 1, 2, {1.0}));       // zero row
    CHECK_THROWS(build_poisson_inverse({1.0, -0.5}, 1, 2, {1.0}));      // negative entry
    CHECK_THROWS(build_poisson_inverse({1.0, 1.0}, 1, 2, {0.0}));       // nonpositive b
}

TEST_CASE("kl-nmf objective") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.3, 1.5);

    // exact factorization: gradient vanishes
    std::size_t m = 3, n = 4, rank = 2;
    std::vector<double> Wv(m * rank), Hv(rank * n);
    for (auto& v : Wv) v = u(rng);
    for (auto& v : Hv) v = u(rng);
    std::vector<double> V(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < rank; ++k) V[i * n + j] += Wv[i * rank + k] * Hv[k * n + j];

    CompositeObjective obj = build_klnmf(V, m, n, rank);
    Point WH = Point::product({Point::matrix(m, rank, Wv), Point::matrix(rank, n, Hv)});
    CHECK(point_norm(obj.f_gradient(WH)) <= 1e-10);

    // gradient vs finite differences at random positive factors, 4x3 rank 2
    std::size_t m2 = 4, n2 = 3, r2 = 2;
    std::vector<double> V2(m2 * n2);
    for (auto& v : V2) v = u(rng);
    V2[5] = 0.0; // one support hole
    CompositeObjective obj2 = build_klnmf(V2, m2, n2, r2);
    for (int t = 0; t < 8; ++t) {
        std::vector<double> W2(m2 * r2), H2(r2 * n2);
        for (auto& v : W2) v = u(rng);
        for (auto& v : H2) v = u(rng);
        Point p = Point::product({Point::matrix(m2, r2, W2), Point::matrix(r2, n2, H2)});
        Point g = obj2.f_gradient(p);
        Point fd = finite_diff_grad(obj2.f_value, p);
        CHECK(point_norm(sub(g, fd)) <= 1e-4);
    }

    // barrier on the support: WH = 0 at a V > 0 cell gives +inf
    std::vector<double> Wz(m2 * r2, 0.0), Hz(r2 * n2, 1.0);
    Point zero_w = Point::product({Point::matrix(m2, r2, Wz), Point::matrix(r2, n2, Hz)});
    CHECK(std::isinf(obj2.f_value(zero_w)));

    CHECK_THROWS(build_klnmf(std::vector<double>(6, 0.0), 2, 3, 2)); // all-zero V
}

TEST_CASE("quadratic builder frozen example") {
    Point Q = Point::symmetric(2, {1.0, 0.0, 0.0, 10.0});
    Point c = Point::vector({-1.0, 0.0});
    CompositeObjective obj = build_quadratic(Q, c);
    Point xs = Point::vector({1.0, 0.0});
    CHECK(obj.f_value(xs) == doctest::Approx(-0.5));
    CHECK(point_norm(obj.f_gradient(xs)) <= 1e-14);

    CHECK(obj.f_value(Point::zeros_vector(2)) == 0.0);

    // identity case
    CompositeObjective id = build_quadratic(Point::identity(3), Point::zeros_vector(3));
    CHECK(id.f_value(Point::zeros_vector(3)) == 0.0);

    // gradient vs finite differences
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 10; ++t) {
        Point x = Point::vector({u(rng), u(rng)});
        Point g = obj.f_gradient(x);
        Point fd = finite_diff_grad(obj.f_value, x);
        CHECK(point_norm(sub(g, fd)) <= 1e-7);
    }

    // l1 term shows up in g_value
    CompositeObjective l1 = build_quadratic(Q, c, 0.5);
    CHECK(l1.g_value(Point::vector({2.0, -1.0})) == doctest::Approx(1.5));
    CHECK(l1.g_tag == "l1");
}
