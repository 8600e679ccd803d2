#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "gvd/distances.hpp"
#include "gvd/oracle.hpp"
#include "gvd/point.hpp"
#include "gvd/prox.hpp"

using namespace gvd;

namespace {

double subproblem_value(const Point& a, const Point& x, const Point& y, double gamma,
                        const ProxGradDistance& d, const std::function<double(const Point&)>& g) {
    return point_inner(a, x) + gamma * d.value(x, y) + (g ? g(x) : 0.0);
}

} // namespace

TEST_CASE("soft-threshold basics") {
    // lambda = 0: plain gradient step y - a/gamma
    Point a = Point::vector({2.0, -4.0});
    Point y = Point::vector({1.0, 1.0});
    Point x = prox_sqnorm_l1(a, y, 2.0, 0.0);
    CHECK(x[0] == doctest::Approx(0.0));
    CHECK(x[1] == doctest::Approx(3.0));

    // threshold kills small entries
    Point z = prox_sqnorm_l1(Point::zeros_vector(1), Point::vector({0.5}), 1.0, 1.0);
    CHECK(z[0] == 0.0);

    // generic value: s = 0.5 - (-2)/2 = 1.5, shrink by 1/2 -> 1.0
    Point w = prox_sqnorm_l1(Point::vector({-2.0}), Point::vector({0.5}), 2.0, 1.0);
    CHECK(w[0] == doctest::Approx(1.0));

    CHECK_THROWS(prox_sqnorm_l1(a, y, 0.0, 1.0));
}

TEST_CASE("soft-threshold matches a per-coordinate scalar oracle") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    SqnormDistance d;
    for (int t = 0; t < 30; ++t) {
        Point a = Point::vector({u(rng), u(rng), u(rng)});
        Point y = Point::vector({u(rng), u(rng), u(rng)});
        double gamma = 0.5 + std::abs(u(rng));
        double lambda = 0.1 + std::abs(u(rng));
        Point x = prox_sqnorm_l1(a, y, gamma, lambda);

        OracleG g{"l1", lambda, 0};
        auto res = brute_force_prox(a, y, gamma, d, g, 400000, 100 + t);
        double closed = subproblem_value(a, x, y, gamma, d, [&](const Point& p) { return g.value(p); });
        CHECK(closed <= res.objective + 1e-8);
        CHECK(res.objective <= closed + 1e-8);
    }
}

TEST_CASE("trimmed exponential prox frozen examples") {
    // m=1, K=1: fully trimmed, a=0 -> fixed point
    Point z1 = prox_exp_trimmed(Point::zeros_vector(1), Point::vector({0.7}), 1.3, 1);
    CHECK(z1[0] == doctest::Approx(0.7));

    // m=1, K=0, a=0, gamma=1, w=0 -> log sqrt(3)
    Point z2 = prox_exp_trimmed(Point::zeros_vector(1), Point::zeros_vector(1), 1.0, 0);
    CHECK(z2[0] == doctest::Approx(std::log(std::sqrt(3.0))));
    CHECK(z2[0] == doctest::Approx(0.5493).epsilon(1e-3));

    // m=2, K=1, symmetric instance: index tie-break keeps j=0
    Point z3 = prox_exp_trimmed(Point::zeros_vector(2), Point::zeros_vector(2), 1.0, 1);
    CHECK(z3[0] == doctest::Approx(std::log(std::sqrt(3.0))));
    CHECK(z3[1] == doctest::Approx(0.0));

    CHECK_THROWS(prox_exp_trimmed(Point::zeros_vector(2), Point::zeros_vector(2), -1.0, 0));
    CHECK_THROWS(prox_exp_trimmed(Point::zeros_vector(2), Point::zeros_vector(2), 1.0, 3));
}

TEST_CASE("trimmed exponential prox matches enumeration oracle") {
    ExpDistance d(1.0);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 20; ++t) {
        int m = 2 + static_cast<int>(t % 3);
        std::vector<double> av(m), wv(m);
        for (int j = 0; j < m; ++j) { av[j] = u(rng); wv[j] = u(rng); }
        Point a = Point::vector(av);
        Point w = Point::vector(wv);
        double gamma = 0.6 + std::abs(u(rng));
        int K = t % m;
        Point z = prox_exp_trimmed(a, w, gamma, K);

        OracleG g{"trimmed_exp", 0.0, K};
        auto res = brute_force_prox(a, w, gamma, d, g, 600000, 500 + t);
        double closed = subproblem_value(a, z, w, gamma, d, [&](const Point& p) { return g.value(p); });
        CHECK(closed <= res.objective + 1e-8);
        CHECK(res.objective <= closed + 1e-8);
    }
}

TEST_CASE("scalar root frozen values") {
    // alpha = 0 collapses to the fixed point
    CHECK(interior_scalar_root(0.0, 0.7, 1.3, 0.9, 2.0) == doctest::Approx(0.7));
    CHECK(interior_scalar_root(0.0, 2.0, 1.0, 1.0, 0.0) == doctest::Approx(2.0));

    CHECK(interior_scalar_root(1.0, 1.0, 1.0, 1.0, 2.0) ==
          doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
    CHECK(interior_scalar_root(-1.0, 1.0, 1.0, 1.0, 2.0) ==
          doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));

    CHECK_THROWS(interior_scalar_root(1.0, -1.0, 1.0, 1.0, 2.0));
}

TEST_CASE("scalar root satisfies its defining quadratic and stays positive") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ua(-5.0, 5.0);
    std::uniform_real_distribution<double> up(0.2, 3.0);
    for (int t = 0; t < 200; ++t) {
        double alpha = ua(rng), v = up(rng), g1 = up(rng), g2 = up(rng);
        double r = (t % 2 == 0) ? 0.0 : 2.0;
        double xi = interior_scalar_root(alpha, v, g1, g2, r);
        CHECK(xi > 0.0);
        double res = g2 * xi * xi + (alpha + g1 * std::pow(v, r - 1.0) - g2 * v) * xi -
                     g1 * std::pow(v, r);
        CHECK(std::abs(res) <= 1e-9 * (1.0 + std::abs(alpha) + g1 + g2));
    }
}

TEST_CASE("orthant smooth prox: fixed point and positivity") {
    Point y = Point::vector({0.5, 1.0, 2.0});
    Point x = prox_orthant_smooth(Point::zeros_vector(3), y, 1.0, 1.0, 2.0);
    CHECK(point_norm(sub(x, y)) <= 1e-12);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-4.0, 4.0);
    std::uniform_real_distribution<double> up(0.2, 2.5);
    for (int t = 0; t < 100; ++t) {
        Point a = Point::vector({u(rng), u(rng)});
        Point yy = Point::vector({up(rng), up(rng)});
        Point out = prox_orthant_smooth(a, yy, up(rng), up(rng), t % 2 ? 2.0 : 0.0);
        CHECK(out[0] > 0.0);
        CHECK(out[1] > 0.0);
    }

    CHECK_THROWS(prox_orthant_smooth(Point::zeros_vector(1), Point::vector({0.0}), 1.0, 1.0, 0.0));
}

TEST_CASE("orthant smooth prox matches golden-section oracle in 1-D") {
    OrthantDistance d(1.0, 1.0, 2.0);
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> up(0.3, 2.0);
    for (int t = 0; t < 25; ++t) {
        Point a = Point::vector({u(rng)});
        Point y = Point::vector({up(rng)});
        Point x = prox_orthant_smooth(a, y, 1.0, 1.0, 2.0);
        OracleG g{"zero", 0.0, 0};
        auto res = brute_force_prox(a, y, 1.0, d, g, 200000, 900 + t);
        double closed = subproblem_value(a, x, y, 1.0, d, nullptr);
        CHECK(closed <= res.objective + 1e-8);
        CHECK(res.objective <= closed + 1e-8);
    }
}

TEST_CASE("orthant trimmed prox: lambda=0 routes to the smooth path") {
    Point a = Point::vector({1.0, -0.7, 0.3});
    Point y = Point::vector({0.8, 1.2, 0.5});
    Point smooth = prox_orthant_smooth(a, y, 0.9, 1.1, 2.0);
    Point trimmed = prox_orthant_trimmed_l1(a, y, 0.9, 1.1, 2.0, 0.0, 1);
    CHECK(point_norm(sub(smooth, trimmed)) <= 1e-12);
}

TEST_CASE("orthant trimmed prox frozen 1-D value") {
    // n=1, K=0, lambda=1, a=0, y=1, gammas 1, r=2 -> chi(1, 1) = (sqrt5-1)/2
    Point x = prox_orthant_trimmed_l1(Point::zeros_vector(1), Point::vector({1.0}), 1.0, 1.0, 2.0,
                                      1.0, 0);
    CHECK(x[0] == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
}

TEST_CASE("orthant trimmed prox matches subset enumeration oracle") {
    OrthantDistance d(1.0, 1.0, 0.0);
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> up(0.3, 2.0);
    for (int t = 0; t < 15; ++t) {
        Point a = Point::vector({u(rng), u(rng), u(rng)});
        Point y = Point::vector({up(rng), up(rng), up(rng)});
        double lambda = 0.2 + std::abs(u(rng)) / 2.0;
        Point x = prox_orthant_trimmed_l1(a, y, 1.0, 1.0, 0.0, lambda, 1);
        OracleG g{"trimmed_l1", lambda, 1};
        auto res = brute_force_prox(a, y, 1.0, d, g, 600000, 1300 + t);
        double closed = subproblem_value(a, x, y, 1.0, d, [&](const Point& p) { return g.value(p); });
        CHECK(closed <= res.objective + 1e-8);
        CHECK(res.objective <= closed + 1e-8);
        CHECK(x[0] > 0.0);
        CHECK(x[1] > 0.0);
        CHECK(x[2] > 0.0);
    }
}

TEST_CASE("psd prox: fixed point at the identity") {
    Point X = prox_psd_smooth(Point::symmetric(2, {0, 0, 0, 0}), Point::identity(2), 1.0, 1.0, 0.0);
    CHECK(point_norm(sub(X, Point::identity(2))) <= 1e-10);
    CHECK_THROWS(prox_psd_smooth(Point::identity(2), Point::symmetric(2, {1, 0, 0, -1}), 1.0, 1.0, 0.0));
}

TEST_CASE("psd prox on diagonal data reduces to the scalar root") {
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> up(0.4, 2.0);
    for (int t = 0; t < 20; ++t) {
        double a1 = u(rng), a2 = u(rng);
        double y1 = up(rng), y2 = up(rng);
        double g1 = up(rng), g2 = up(rng);
        double r = (t % 2 == 0) ? 0.0 : 2.0;
        Point A = Point::symmetric(2, {a1, 0, 0, a2});
        Point Y = Point::symmetric(2, {y1, 0, 0, y2});
        Point X = prox_psd_smooth(A, Y, g1, g2, r);
        // stationarity constant c = gamma1 det(Y)^r replaces gamma1 v^r in
        // the scalar quadratic: gamma2 xi^2 + (alpha + c/v - gamma2 v) xi - c = 0
        double c = g1 * std::pow(y1 * y2, r);
        auto scalar = [&](double alpha, double v) {
            double b = alpha + c / v - g2 * v;
            return (-b + std::sqrt(b * b + 4.0 * g2 * c)) / (2.0 * g2);
        };
        CHECK(X.at(0, 0) == doctest::Approx(scalar(a1, y1)).epsilon(1e-9));
        CHECK(X.at(1, 1) == doctest::Approx(scalar(a2, y2)).epsilon(1e-9));
        CHECK(std::abs(X.at(0, 1)) <= 1e-10);
    }
}

TEST_CASE("psd prox satisfies its stationarity equation on random instances") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 25; ++t) {
        std::vector<double> bv(9), yv(9);
        for (auto& v : bv) v = u(rng);
        for (auto& v : yv) v = u(rng);
        Point A = Point::symmetric(3, bv);
        // Y = M M^T + 0.4 I, positive definite
        std::vector<double> yy(9, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) yy[i * 3 + j] += yv[i * 3 + k] * yv[j * 3 + k];
                if (i == j) yy[i * 3 + j] += 0.4;
            }
        Point Y = Point::symmetric(3, yy);
        double g1 = 0.7, g2 = 1.3, r = (t % 2 == 0) ? 0.0 : 2.0;
        Point X = prox_psd_smooth(A, Y, g1, g2, r);

        PsdDistance d(g1, g2, r);
        CHECK(d.interior(X));
        // residual A + gamma1 det(Y)^r (Y^{-1} - X^{-1}) + gamma2 (X - Y) = 0
        Point grad = add(A, d.grad_x(X, Y));
        CHECK(point_norm(grad) <= 1e-8 * (1.0 + point_norm(A)));
    }
}

TEST_CASE("soc prox: fixed point and interiority") {
    Point y = Point::vector({0.2, -0.1, 1.0});
    Point x = prox_soc_smooth(Point::zeros_vector(3), y, 1.0, 1.0, 0.0);
    CHECK(point_norm(sub(x, y)) <= 1e-9);

    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        Point a = Point::vector({u(rng), u(rng), u(rng)});
        Point yy = Point::vector({0.4 * u(rng), 0.4 * u(rng), 1.0 + 0.4 * std::abs(u(rng))});
        Point out = prox_soc_smooth(a, yy, 0.8, 1.2, t % 2 ? 2.0 : 0.0);
        CHECK(soc_jform(out) > 0.0);
        CHECK(out[2] > 0.0);
    }

    CHECK_THROWS(prox_soc_smooth(Point::zeros_vector(2), Point::vector({1.0, 1.0}), 1.0, 1.0, 0.0));
}

TEST_CASE("soc prox matches grid oracle in 2-D") {
    SocDistance d(1.0, 1.0, 0.0);
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 20; ++t) {
        Point a = Point::vector({u(rng), u(rng)});
        Point y = Point::vector({0.3 * u(rng), 1.0 + 0.3 * std::abs(u(rng))});
        Point x = prox_soc_smooth(a, y, 1.0, 1.0, 0.0);
        OracleG g{"zero", 0.0, 0};
        auto res = brute_force_prox(a, y, 1.0, d, g, 400000, 1700 + t);
        double closed = subproblem_value(a, x, y, 1.0, d, nullptr);
        CHECK(closed <= res.objective + 1e-7);
        CHECK(res.objective <= closed + 1e-7);
    }
}

TEST_CASE("product prox separates into its blocks") {
    Point a = Point::product({Point::vector({0.4, -0.8}), Point::vector({0.3, 0.1, -0.2})});
    Point yw = Point::product({Point::vector({1.0, -0.5}), Point::vector({0.2, -0.1, 0.4})});
    double gt = 1.5, g1 = 0.8, g2 = 1.2, lambda = 0.3;
    int K = 1;
    Point joint = prox_de2_trimmed_logistic(a, yw, gt, g1, g2, lambda, K);
    Point xb = prox_sqnorm_l1(a.blocks()[0], yw.blocks()[0], gt * g2, lambda);
    Point zb = prox_exp_trimmed(a.blocks()[1], yw.blocks()[1], gt * g1, K);
    CHECK(point_norm(sub(joint.blocks()[0], xb)) == 0.0);
    CHECK(point_norm(sub(joint.blocks()[1], zb)) == 0.0);

    // a=0, lambda=0, K=m: fixed point
    Point zero = Point::product({Point::zeros_vector(2), Point::zeros_vector(3)});
    Point fixed = prox_de2_trimmed_logistic(zero, yw, 1.0, g1, g2, 0.0, 3);
    CHECK(point_norm(sub(fixed, yw)) == 0.0);
}

TEST_CASE("closed-form outputs beat random perturbations") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    De2Distance d(0.8, 1.2);
    Point a = Point::product({Point::vector({0.4, -0.8}), Point::vector({0.3, -0.6})});
    Point yw = Point::product({Point::vector({1.0, -0.5}), Point::vector({0.2, 0.7})});
    double gt = 1.3, lambda = 0.4;
    int K = 1;
    Point x = prox_de2_trimmed_logistic(a, yw, gt, 0.8, 1.2, lambda, K);
    auto g = [&](const Point& p) {
        double l1 = 0.0;
        for (double v : p.blocks()[0].data()) l1 += std::abs(v);
        std::vector<double> pen;
        for (double v : p.blocks()[1].data()) pen.push_back(std::exp(-v));
        std::sort(pen.begin(), pen.end());
        double s = 0.0;
        for (std::size_t j = 0; j + static_cast<std::size_t>(K) < pen.size(); ++j) s += pen[j];
        return lambda * l1 + s;
    };
    double best = subproblem_value(a, x, yw, gt, d, g);
    auto flat = flatten(x);
    for (int t = 0; t < 1000; ++t) {
        auto pert = flat;
        for (auto& v : pert) v += 0.05 * u(rng);
        double val = subproblem_value(a, with_data(x, pert), yw, gt, d, g);
        CHECK(best <= val + 1e-12);
    }
}

TEST_CASE("numeric fallback agrees with the closed forms") {
    SqnormDistance sq;
    Point a = Point::vector({0.6, -0.2});
    Point y = Point::vector({1.0, 0.5});
    Point x = prox_generic(a, y, 2.0, sq, [](const Point&) { return 0.0; }, 3);
    Point expect = prox_sqnorm_l1(a, y, 2.0, 0.0);
    CHECK(point_norm(sub(x, expect)) <= 1e-6);

    OrthantDistance orth(1.0, 1.0, 2.0);
    Point yo = Point::vector({0.8, 1.4});
    Point xo = prox_generic(a, yo, 1.0, orth, [](const Point&) { return 0.0; }, 5);
    Point eo = prox_orthant_smooth(a, yo, 1.0, 1.0, 2.0);
    double vo = subproblem_value(a, xo, yo, 1.0, orth, nullptr);
    double ve = subproblem_value(a, eo, yo, 1.0, orth, nullptr);
    CHECK(vo <= ve + 1e-6);
    CHECK(ve <= vo + 1e-6);
}

TEST_CASE("trim index selection breaks ties by smaller index") {
    auto idx = smallest_indices({2.0, 1.0, 1.0, 3.0}, 2);
    REQUIRE(idx.size() == 2);
    CHECK(idx[0] == 1);
    CHECK(idx[1] == 2);

    auto all_tied = smallest_indices({5.0, 5.0, 5.0}, 2);
    CHECK(all_tied[0] == 0);
    CHECK(all_tied[1] == 1);
}
