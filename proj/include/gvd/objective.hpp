#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gvd/point.hpp"

namespace gvd {

// Composite objective F = f + g. f_value may return +inf outside dom f;
// f_gradient is only defined where f_value is finite (interior). g_tag
// identifies the nonsmooth term for pairing with a closed-form prox solver.
struct CompositeObjective {
    std::function<double(const Point&)> f_value;
    std::function<Point(const Point&)> f_gradient;
    std::function<double(const Point&)> g_value;
    std::string g_tag;
    std::optional<double> lower_bound_hint;
};

double composite_value(const CompositeObjective& obj, const Point& x);

} // namespace gvd
