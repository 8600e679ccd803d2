#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gvd {

enum class SpaceTag { Vector, Matrix, Symmetric, Product };

// An element of the ambient inner-product space: a dense vector, a general
// matrix, a symmetric matrix (stored full, symmetrized on construction), or
// an ordered tuple of blocks. Immutable after construction.
class Point {
  public:
    Point() = default; // empty 0-dimensional vector

    static Point vector(std::vector<double> data);
    static Point zeros_vector(std::size_t n);
    static Point matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    static Point zeros_matrix(std::size_t rows, std::size_t cols);
    static Point symmetric(std::size_t n, std::vector<double> data);
    static Point identity(std::size_t n);
    static Point product(std::vector<Point> blocks);

    SpaceTag tag() const { return tag_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    // Total number of stored real entries (sums over blocks for products).
    std::size_t size() const;

    const std::vector<double>& data() const { return data_; }
    const std::vector<Point>& blocks() const { return blocks_; }

    double operator[](std::size_t i) const { return data_[i]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool same_space(const Point& other) const;

  private:
    SpaceTag tag_ = SpaceTag::Vector;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
    std::vector<Point> blocks_;
};

Point add(const Point& x, const Point& y);
Point sub(const Point& x, const Point& y);
Point scale(double s, const Point& x);

// Euclidean/Frobenius inner product; product spaces sum over blocks.
double point_inner(const Point& x, const Point& y);
double point_norm(const Point& x);

// Rebuilds a point of the same space from a flat entry list (used by finite
// differences and the numeric prox fallback). Symmetric blocks are
// re-symmetrized.
Point with_data(const Point& like, const std::vector<double>& flat);
std::vector<double> flatten(const Point& x);

} // namespace gvd
