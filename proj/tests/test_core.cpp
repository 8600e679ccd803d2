#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "gvd/config.hpp"
#include "gvd/objective.hpp"
#include "gvd/point.hpp"

using namespace gvd;

TEST_CASE("vector construction and arithmetic") {
    Point x = Point::vector({1.0, 2.0, 3.0});
    Point y = Point::vector({0.5, -1.0, 2.0});
    CHECK(x.size() == 3);
    CHECK(x[1] == 2.0);

    Point s = add(x, y);
    CHECK(s[0] == doctest::Approx(1.5));
    CHECK(s[1] == doctest::Approx(1.0));

    Point d = sub(x, y);
    CHECK(d[2] == doctest::Approx(1.0));

    Point t = scale(2.0, x);
    CHECK(t[2] == doctest::Approx(6.0));

    CHECK(point_inner(x, y) == doctest::Approx(0.5 - 2.0 + 6.0));
    CHECK(point_norm(Point::vector({3.0, 4.0})) == doctest::Approx(5.0));
}

TEST_CASE("zeros and identity factories") {
    Point z = Point::zeros_vector(4);
    CHECK(z.size() == 4);
    CHECK(point_norm(z) == 0.0);

    Point I = Point::identity(3);
    CHECK(I.tag() == SpaceTag::Symmetric);
    CHECK(I.at(0, 0) == 1.0);
    CHECK(I.at(0, 1) == 0.0);
    CHECK(point_inner(I, I) == doctest::Approx(3.0));
}

TEST_CASE("symmetric storage symmetrizes input") {
    Point A = Point::symmetric(2, {1.0, 4.0, 0.0, 3.0});
    CHECK(A.at(0, 1) == doctest::Approx(2.0));
    CHECK(A.at(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("product points sum sizes and inner products over blocks") {
    Point p = Point::product({Point::vector({1.0, 2.0}), Point::vector({3.0})});
    CHECK(p.tag() == SpaceTag::Product);
    CHECK(p.size() == 3);
    CHECK(point_inner(p, p) == doctest::Approx(1.0 + 4.0 + 9.0));

    Point q = Point::product({Point::vector({0.0, 1.0}), Point::vector({2.0})});
    CHECK(p.same_space(q));
    CHECK_FALSE(p.same_space(Point::vector({1.0, 2.0, 3.0})));

    Point sum = add(p, q);
    CHECK(sum.blocks()[0][1] == doctest::Approx(3.0));
    CHECK(sum.blocks()[1][0] == doctest::Approx(5.0));
}

TEST_CASE("flatten and with_data round trip, symmetric re-symmetrized") {
    Point p = Point::product({Point::vector({1.0, -2.0}), Point::identity(2)});
    auto flat = flatten(p);
    CHECK(flat.size() == p.size());
    Point back = with_data(p, flat);
    CHECK(point_norm(sub(back, p)) == 0.0);

    // perturb the off-diagonal entries asymmetrically; rebuild symmetrizes
    flat[3] = 1.0; // (0,1) of the 2x2 block
    flat[4] = 3.0; // (1,0)
    Point sym = with_data(p, flat);
    CHECK(sym.blocks()[1].at(0, 1) == doctest::Approx(2.0));
    CHECK(sym.blocks()[1].at(1, 0) == doctest::Approx(2.0));
}

TEST_CASE("mismatched spaces throw") {
    Point x = Point::vector({1.0, 2.0});
    Point y = Point::vector({1.0, 2.0, 3.0});
    CHECK_THROWS(add(x, y));
    CHECK_THROWS(point_inner(x, y));
}

TEST_CASE("non-finite entries rejected at construction") {
    CHECK_THROWS(Point::vector({1.0, std::numeric_limits<double>::quiet_NaN()}));
    CHECK_THROWS(Point::vector({std::numeric_limits<double>::infinity()}));
}

TEST_CASE("composite_value adds f and g, propagates +inf") {
    CompositeObjective obj;
    obj.f_value = [](const Point& x) {
        return x[0] > 0 ? x[0] * x[0] : std::numeric_limits<double>::infinity();
    };
    obj.g_value = [](const Point& x) { return std::abs(x[0]); };
    CHECK(composite_value(obj, Point::vector({2.0})) == doctest::Approx(6.0));
    CHECK(std::isinf(composite_value(obj, Point::vector({-1.0}))));
}

TEST_CASE("solver config validation") {
    SolverConfig good;
    CHECK_NOTHROW(good.validate());

    SolverConfig bad_beta;
    bad_beta.beta = 1.0;
    CHECK_THROWS(bad_beta.validate());

    SolverConfig bad_sigma;
    bad_sigma.sigma = 1.5;
    CHECK_THROWS(bad_sigma.validate());

    SolverConfig bad_pmin;
    bad_pmin.p_min = 0.0;
    CHECK_THROWS(bad_pmin.validate());

    SolverConfig bad_iters;
    bad_iters.max_outer_iters = 0;
    CHECK_THROWS(bad_iters.validate());
}

TEST_CASE("default p schedule is constant one") {
    SolverConfig cfg;
    CHECK(cfg.p_at(0) == 1.0);
    CHECK(cfg.p_at(57) == 1.0);
    cfg.p_schedule = [](int) { return 0.75; };
    CHECK(cfg.p_at(3) == 0.75);
}

TEST_CASE("stop rule names") {
    CHECK(stop_rule_name(StopRule::Residual) == "residual");
    CHECK(stop_rule_name(StopRule::Budget) == "budget");
}
