#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "vpm/linalg.hpp"

namespace vpm {

/// Projection oracle for a closed convex set: exact metric projection and
/// point-to-set distance. Implementations must be immutable and reentrant.
class ConvexSet {
  public:
    virtual ~ConvexSet() = default;

    virtual std::size_t dim() const = 0;

    /// Nearest point of the set to x.
    virtual Point project(const Point& x) const = 0;

    /// d(x) = ||x - project(x)||. Overridden where a closed form is cheaper.
    virtual double distance(const Point& x) const {
        return linalg::dist(x, project(x));
    }

    bool contains(const Point& x, double tol = 1e-9) const {
        return distance(x) <= tol;
    }

  protected:
    void require_dim(const Point& x) const {
        if (x.dim() != dim()) {
            throw std::invalid_argument("ConvexSet: dimension mismatch");
        }
    }
};

using ConvexSetPtr = std::shared_ptr<const ConvexSet>;

/// {x : <a,x> <= b}
class Halfspace final : public ConvexSet {
  public:
    Halfspace(Point normal, double offset)
        : normal_(std::move(normal)), offset_(offset),
          normal_norm2_(linalg::inner(normal_, normal_)) {
        if (normal_norm2_ <= 0.0) {
            throw std::invalid_argument("Halfspace: zero normal");
        }
    }

    std::size_t dim() const override { return normal_.dim(); }

    Point project(const Point& x) const override {
        require_dim(x);
        const double excess = linalg::inner(normal_, x) - offset_;
        if (excess <= 0.0) return x;
        return linalg::axpy(-excess / normal_norm2_, normal_, x);
    }

    double distance(const Point& x) const override {
        require_dim(x);
        const double excess = linalg::inner(normal_, x) - offset_;
        return std::max(0.0, excess) / std::sqrt(normal_norm2_);
    }

    const Point& normal() const { return normal_; }
    double offset() const { return offset_; }

  private:
    Point normal_;
    double offset_;
    double normal_norm2_;
};

/// {x : <a,x> = b}
class Hyperplane final : public ConvexSet {
  public:
    Hyperplane(Point normal, double offset)
        : normal_(std::move(normal)), offset_(offset),
          normal_norm2_(linalg::inner(normal_, normal_)) {
        if (normal_norm2_ <= 0.0) {
            throw std::invalid_argument("Hyperplane: zero normal");
        }
    }

    std::size_t dim() const override { return normal_.dim(); }

    Point project(const Point& x) const override {
        require_dim(x);
        const double excess = linalg::inner(normal_, x) - offset_;
        if (excess == 0.0) return x;
        return linalg::axpy(-excess / normal_norm2_, normal_, x);
    }

    double distance(const Point& x) const override {
        require_dim(x);
        return std::abs(linalg::inner(normal_, x) - offset_) /
               std::sqrt(normal_norm2_);
    }

    const Point& normal() const { return normal_; }
    double offset() const { return offset_; }

  private:
    Point normal_;
    double offset_;
    double normal_norm2_;
};

/// {x : lo <= <a,x> <= hi}. lo == hi degenerates to a hyperplane.
class Hyperslab final : public ConvexSet {
  public:
    Hyperslab(Point normal, double lo, double hi)
        : normal_(std::move(normal)), lo_(lo), hi_(hi),
          normal_norm2_(linalg::inner(normal_, normal_)) {
        if (normal_norm2_ <= 0.0) {
            throw std::invalid_argument("Hyperslab: zero normal");
        }
        if (lo > hi) {
            throw std::invalid_argument("Hyperslab: lo > hi");
        }
    }

    std::size_t dim() const override { return normal_.dim(); }

    Point project(const Point& x) const override {
        require_dim(x);
        const double t = linalg::inner(normal_, x);
        const double clamped = std::clamp(t, lo_, hi_);
        if (clamped == t) return x;
        return linalg::axpy((clamped - t) / normal_norm2_, normal_, x);
    }

    double distance(const Point& x) const override {
        require_dim(x);
        const double t = linalg::inner(normal_, x);
        const double excess = std::max({lo_ - t, t - hi_, 0.0});
        return excess / std::sqrt(normal_norm2_);
    }

    const Point& normal() const { return normal_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    /// Hyperplane <a,x> = (lo+hi)/2 through the middle of the slab.
    Hyperplane median_hyperplane() const {
        return Hyperplane(normal_, 0.5 * (lo_ + hi_));
    }

    /// Geometric half-width (hi - lo) / (2 ||a||).
    double half_width() const {
        return (hi_ - lo_) / (2.0 * std::sqrt(normal_norm2_));
    }

  private:
    Point normal_;
    double lo_;
    double hi_;
    double normal_norm2_;
};

class Ball final : public ConvexSet {
  public:
    Ball(Point center, double radius)
        : center_(std::move(center)), radius_(radius) {
        if (radius < 0.0) {
            throw std::invalid_argument("Ball: negative radius");
        }
    }

    std::size_t dim() const override { return center_.dim(); }

    Point project(const Point& x) const override {
        require_dim(x);
        const Point delta = linalg::sub(x, center_);
        const double d = linalg::norm(delta);
        if (d <= radius_) return x;
        return linalg::axpy(radius_ / d, delta, center_);
    }

    double distance(const Point& x) const override {
        require_dim(x);
        return std::max(0.0, linalg::dist(x, center_) - radius_);
    }

    const Point& center() const { return center_; }
    double radius() const { return radius_; }

  private:
    Point center_;
    double radius_;
};

class Box final : public ConvexSet {
  public:
    Box(Point lo, Point hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        linalg::require_same_dim(lo_, hi_);
        for (std::size_t i = 0; i < lo_.dim(); ++i) {
            if (lo_[i] > hi_[i]) {
                throw std::invalid_argument("Box: lo > hi in coordinate");
            }
        }
    }

    std::size_t dim() const override { return lo_.dim(); }

    Point project(const Point& x) const override {
        require_dim(x);
        std::vector<double> out(x.dim());
        for (std::size_t i = 0; i < x.dim(); ++i) {
            out[i] = std::clamp(x[i], lo_[i], hi_[i]);
        }
        return Point(std::move(out));
    }

    const Point& lo() const { return lo_; }
    const Point& hi() const { return hi_; }

  private:
    Point lo_;
    Point hi_;
};

/// The enlargement Z_[beta] = {x : d_Z(x) <= beta} of a base set Z, itself a
/// closed convex set with closed-form projection and distance.
class Enlargement final : public ConvexSet {
  public:
    Enlargement(ConvexSetPtr base, double beta)
        : base_(std::move(base)), beta_(beta) {
        if (!base_) {
            throw std::invalid_argument("Enlargement: null base set");
        }
        if (!(beta > 0.0)) {
            throw std::invalid_argument("Enlargement: beta must be > 0");
        }
    }

    std::size_t dim() const override { return base_->dim(); }

    Point project(const Point& x) const override {
        require_dim(x);
        const double d = base_->distance(x);
        if (d <= beta_) return x;
        const Point p = base_->project(x);
        // p + (beta/d)(x - p): walk beta along the outward unit direction.
        return linalg::axpy(beta_ / d, linalg::sub(x, p), p);
    }

    double distance(const Point& x) const override {
        require_dim(x);
        return std::max(0.0, base_->distance(x) - beta_);
    }

    const ConvexSet& base() const { return *base_; }
    const ConvexSetPtr& base_ptr() const { return base_; }
    double beta() const { return beta_; }

  private:
    ConvexSetPtr base_;
    double beta_;
};

}  // namespace vpm
