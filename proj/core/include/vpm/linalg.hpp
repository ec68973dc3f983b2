#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace vpm {

/// Dense real vector in R^n. Coordinates are validated to be finite at
/// construction; dimension is fixed for the lifetime of the value.
class Point {
  public:
    Point() = default;

    explicit Point(std::vector<double> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) {
            throw std::invalid_argument("Point: dimension must be >= 1");
        }
        for (double c : coords_) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("Point: non-finite coordinate");
            }
        }
    }

    Point(std::initializer_list<double> coords)
        : Point(std::vector<double>(coords)) {}

    static Point zeros(std::size_t dim) {
        return Point(std::vector<double>(dim, 0.0));
    }

    std::size_t dim() const { return coords_.size(); }

    double operator[](std::size_t i) const { return coords_[i]; }

    const std::vector<double>& coords() const { return coords_; }

    bool operator==(const Point& other) const {
        return coords_ == other.coords_;
    }

  private:
    std::vector<double> coords_;
};

namespace linalg {

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("dimension mismatch");
    }
}

inline double inner(const Point& a, const Point& b) {
    require_same_dim(a, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        sum += a[i] * b[i];
    }
    return sum;
}

inline double norm(const Point& a) { return std::sqrt(inner(a, a)); }

/// alpha*a + b, componentwise.
inline Point axpy(double alpha, const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::vector<double> out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        out[i] = alpha * a[i] + b[i];
    }
    return Point(std::move(out));
}

inline Point sub(const Point& a, const Point& b) { return axpy(-1.0, b, a); }

inline Point add(const Point& a, const Point& b) { return axpy(1.0, a, b); }

inline Point scale(double alpha, const Point& a) {
    return axpy(alpha, a, Point::zeros(a.dim()));
}

inline double dist(const Point& a, const Point& b) { return norm(sub(a, b)); }

}  // namespace linalg
}  // namespace vpm
