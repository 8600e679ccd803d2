#pragma once

#include <Eigen/Dense>

#include "gvd/point.hpp"

namespace gvd::detail {

inline Eigen::MatrixXd to_eigen(const Point& X) {
    Eigen::MatrixXd M(X.rows(), X.cols());
    for (std::size_t i = 0; i < X.rows(); ++i)
        for (std::size_t j = 0; j < X.cols(); ++j) M(i, j) = X.at(i, j);
    return M;
}

inline Point sym_from_eigen(const Eigen::MatrixXd& M) {
    std::size_t n = M.rows();
    std::vector<double> data(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) data[i * n + j] = M(i, j);
    return Point::symmetric(n, std::move(data));
}

} // namespace gvd::detail
