#include "gvd/point.hpp"

#include <cmath>

namespace gvd {
namespace {

void check_finite(const std::vector<double>& data) {
    for (double v : data) {
        if (!std::isfinite(v)) throw std::invalid_argument("Point: non-finite entry");
    }
}

} // namespace

Point Point::vector(std::vector<double> data) {
    check_finite(data);
    Point p;
    p.tag_ = SpaceTag::Vector;
    p.rows_ = data.size();
    p.cols_ = 1;
    p.data_ = std::move(data);
    return p;
}

Point Point::zeros_vector(std::size_t n) {
    return vector(std::vector<double>(n, 0.0));
}

Point Point::matrix(std::size_t rows, std::size_t cols, std::vector<double> data) {
    if (data.size() != rows * cols) throw std::invalid_argument("Point: matrix size mismatch");
    check_finite(data);
    Point p;
    p.tag_ = SpaceTag::Matrix;
    p.rows_ = rows;
    p.cols_ = cols;
    p.data_ = std::move(data);
    return p;
}

Point Point::zeros_matrix(std::size_t rows, std::size_t cols) {
    return matrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

Point Point::symmetric(std::size_t n, std::vector<double> data) {
    if (data.size() != n * n) throw std::invalid_argument("Point: symmetric size mismatch");
    check_finite(data);
    // symmetrize (X + X^T)/2 so that entries match exactly
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double avg = 0.5 * (data[i * n + j] + data[j * n + i]);
            data[i * n + j] = avg;
            data[j * n + i] = avg;
        }
    }
    Point p;
    p.tag_ = SpaceTag::Symmetric;
    p.rows_ = n;
    p.cols_ = n;
    p.data_ = std::move(data);
    return p;
}

Point Point::identity(std::size_t n) {
    std::vector<double> data(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) data[i * n + i] = 1.0;
    return symmetric(n, std::move(data));
}

Point Point::product(std::vector<Point> blocks) {
    if (blocks.empty()) throw std::invalid_argument("Point: product needs at least one block");
    Point p;
    p.tag_ = SpaceTag::Product;
    p.blocks_ = std::move(blocks);
    return p;
}

std::size_t Point::size() const {
    if (tag_ == SpaceTag::Product) {
        std::size_t total = 0;
        for (const Point& b : blocks_) total += b.size();
        return total;
    }
    return data_.size();
}

bool Point::same_space(const Point& other) const {
    if (tag_ != other.tag_) return false;
    if (tag_ == SpaceTag::Product) {
        if (blocks_.size() != other.blocks_.size()) return false;
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (!blocks_[i].same_space(other.blocks_[i])) return false;
        }
        return true;
    }
    return rows_ == other.rows_ && cols_ == other.cols_;
}

namespace {

void require_same_space(const Point& x, const Point& y) {
    if (!x.same_space(y)) throw std::invalid_argument("Point: space mismatch");
}

} // namespace

Point add(const Point& x, const Point& y) {
    require_same_space(x, y);
    if (x.tag() == SpaceTag::Product) {
        std::vector<Point> blocks;
        blocks.reserve(x.blocks().size());
        for (std::size_t i = 0; i < x.blocks().size(); ++i)
            blocks.push_back(add(x.blocks()[i], y.blocks()[i]));
        return Point::product(std::move(blocks));
    }
    std::vector<double> data(x.data());
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += y.data()[i];
    switch (x.tag()) {
        case SpaceTag::Vector: return Point::vector(std::move(data));
        case SpaceTag::Symmetric: return Point::symmetric(x.rows(), std::move(data));
        default: return Point::matrix(x.rows(), x.cols(), std::move(data));
    }
}

Point sub(const Point& x, const Point& y) {
    return add(x, scale(-1.0, y));
}

Point scale(double s, const Point& x) {
    if (x.tag() == SpaceTag::Product) {
        std::vector<Point> blocks;
        blocks.reserve(x.blocks().size());
        for (const Point& b : x.blocks()) blocks.push_back(scale(s, b));
        return Point::product(std::move(blocks));
    }
    std::vector<double> data(x.data());
    for (double& v : data) v *= s;
    switch (x.tag()) {
        case SpaceTag::Vector: return Point::vector(std::move(data));
        case SpaceTag::Symmetric: return Point::symmetric(x.rows(), std::move(data));
        default: return Point::matrix(x.rows(), x.cols(), std::move(data));
    }
}

double point_inner(const Point& x, const Point& y) {
    require_same_space(x, y);
    if (x.tag() == SpaceTag::Product) {
        double total = 0.0;
        for (std::size_t i = 0; i < x.blocks().size(); ++i)
            total += point_inner(x.blocks()[i], y.blocks()[i]);
        return total;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < x.data().size(); ++i) total += x.data()[i] * y.data()[i];
    return total;
}

double point_norm(const Point& x) {
    return std::sqrt(point_inner(x, x));
}

namespace {

Point rebuild(const Point& like, const std::vector<double>& flat, std::size_t& pos) {
    if (like.tag() == SpaceTag::Product) {
        std::vector<Point> blocks;
        blocks.reserve(like.blocks().size());
        for (const Point& b : like.blocks()) blocks.push_back(rebuild(b, flat, pos));
        return Point::product(std::move(blocks));
    }
    std::vector<double> data(flat.begin() + pos, flat.begin() + pos + like.data().size());
    pos += like.data().size();
    switch (like.tag()) {
        case SpaceTag::Vector: return Point::vector(std::move(data));
        case SpaceTag::Symmetric: return Point::symmetric(like.rows(), std::move(data));
        default: return Point::matrix(like.rows(), like.cols(), std::move(data));
    }
}

void collect(const Point& x, std::vector<double>& out) {
    if (x.tag() == SpaceTag::Product) {
        for (const Point& b : x.blocks()) collect(b, out);
        return;
    }
    out.insert(out.end(), x.data().begin(), x.data().end());
}

} // namespace

Point with_data(const Point& like, const std::vector<double>& flat) {
    if (flat.size() != like.size()) throw std::invalid_argument("with_data: size mismatch");
    std::size_t pos = 0;
    return rebuild(like, flat, pos);
}

std::vector<double> flatten(const Point& x) {
    std::vector<double> out;
    out.reserve(x.size());
    collect(x, out);
    return out;
}

} // namespace gvd
