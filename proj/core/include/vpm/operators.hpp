#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "vpm/sets.hpp"

namespace vpm {

/// A pure algorithmic step x -> T(x) together with a fixed-point membership
/// oracle. Operators are immutable values.
class StepOperator {
  public:
    virtual ~StepOperator() = default;

    virtual std::size_t dim() const = 0;

    virtual Point apply(const Point& x) const = 0;

    virtual bool is_fixed(const Point& x, double tol = 1e-9) const = 0;

  protected:
    void require_dim(const Point& x) const {
        if (x.dim() != dim()) {
            throw std::invalid_argument("StepOperator: dimension mismatch");
        }
    }
};

using StepOperatorPtr = std::shared_ptr<const StepOperator>;

/// Valiant projector onto Z_[beta]: identity inside the enlargement,
/// otherwise a move toward P_Z with step factor (tau/2)(1 - (beta/d)^2).
/// The step factor grows continuously from 0 at the enlargement boundary
/// toward tau/2 far away, so the two branches meet continuously.
class ValiantOperator final : public StepOperator {
  public:
    ValiantOperator(ConvexSetPtr base, double beta, double tau)
        : base_(std::move(base)), beta_(beta), tau_(tau) {
        if (!base_) throw std::invalid_argument("ValiantOperator: null set");
        if (!(beta > 0.0)) {
            throw std::invalid_argument("ValiantOperator: beta must be > 0");
        }
        if (!(tau > 0.0 && tau < 2.0)) {
            throw std::invalid_argument("ValiantOperator: tau must be in (0,2)");
        }
    }

    std::size_t dim() const override { return base_->dim(); }

    Point apply(const Point& x) const override {
        require_dim(x);
        const double d = base_->distance(x);
        if (d <= beta_) return x;
        const double g = gamma_from_distance(d);
        return linalg::axpy(g, linalg::sub(base_->project(x), x), x);
    }

    /// Step factor gamma(x) = (tau/2)(1 - (beta/d_Z(x))^2), defined only
    /// outside the enlargement.
    double gamma(const Point& x) const {
        require_dim(x);
        const double d = base_->distance(x);
        if (d <= beta_) {
            throw std::domain_error(
                "ValiantOperator::gamma: undefined for d_Z(x) <= beta");
        }
        return gamma_from_distance(d);
    }

    bool is_fixed(const Point& x, double tol = 1e-9) const override {
        require_dim(x);
        return base_->distance(x) <= beta_ + tol;
    }

    const ConvexSet& base() const { return *base_; }
    double beta() const { return beta_; }
    double tau() const { return tau_; }

  private:
    double gamma_from_distance(double d) const {
        const double r = beta_ / d;
        return 0.5 * tau_ * (1.0 - r * r);
    }

    ConvexSetPtr base_;
    double beta_;
    double tau_;
};

/// Bauschke-Iorio-Koch intrepid projector onto Z_[beta]: full projection when
/// d_Z(x) >= 2 beta, identity when d_Z(x) <= beta, and an intermediate move
/// x + (1 - d/beta)(x - P_Z(x)) in between. Note the middle branch is
/// discontinuous against the far branch at d = 2 beta.
class BikIntrepidOperator final : public StepOperator {
  public:
    BikIntrepidOperator(ConvexSetPtr base, double beta)
        : base_(std::move(base)), beta_(beta) {
        if (!base_) throw std::invalid_argument("BikIntrepidOperator: null set");
        if (!(beta > 0.0)) {
            throw std::invalid_argument("BikIntrepidOperator: beta must be > 0");
        }
    }

    std::size_t dim() const override { return base_->dim(); }

    Point apply(const Point& x) const override {
        require_dim(x);
        const double d = base_->distance(x);
        if (d >= 2.0 * beta_) return base_->project(x);
        if (d <= beta_) return x;
        return linalg::axpy(1.0 - d / beta_, linalg::sub(x, base_->project(x)), x);
    }

    bool is_fixed(const Point& x, double tol = 1e-9) const override {
        require_dim(x);
        return base_->distance(x) <= beta_ + tol;
    }

    const ConvexSet& base() const { return *base_; }
    double beta() const { return beta_; }

  private:
    ConvexSetPtr base_;
    double beta_;
};

/// Geometric intrepid projector onto Z_[beta]: like the BIK operator but the
/// middle branch reflects into the enlargement, leaving the result at
/// distance 2 beta - d_Z(x) from Z. Experimental: not covered by the
/// convergence-guaranteed solver presets.
class GeometricIntrepidOperator final : public StepOperator {
  public:
    GeometricIntrepidOperator(ConvexSetPtr base, double beta)
        : base_(std::move(base)), beta_(beta) {
        if (!base_) {
            throw std::invalid_argument("GeometricIntrepidOperator: null set");
        }
        if (!(beta > 0.0)) {
            throw std::invalid_argument(
                "GeometricIntrepidOperator: beta must be > 0");
        }
    }

    std::size_t dim() const override { return base_->dim(); }

    Point apply(const Point& x) const override {
        require_dim(x);
        const double d = base_->distance(x);
        if (d >= 2.0 * beta_) return base_->project(x);
        if (d <= beta_) return x;
        return linalg::axpy(2.0 * (beta_ / d - 1.0),
                            linalg::sub(x, base_->project(x)), x);
    }

    bool is_fixed(const Point& x, double tol = 1e-9) const override {
        require_dim(x);
        return base_->distance(x) <= beta_ + tol;
    }

    const ConvexSet& base() const { return *base_; }
    double beta() const { return beta_; }

  private:
    ConvexSetPtr base_;
    double beta_;
};

/// Relaxed projector (1 - lambda) Id + lambda P_Omega with lambda in (0,2).
class RelaxedProjector final : public StepOperator {
  public:
    RelaxedProjector(ConvexSetPtr omega, double lambda)
        : omega_(std::move(omega)), lambda_(lambda) {
        if (!omega_) throw std::invalid_argument("RelaxedProjector: null set");
        if (!(lambda > 0.0 && lambda < 2.0)) {
            throw std::invalid_argument(
                "RelaxedProjector: lambda must be in (0,2)");
        }
    }

    std::size_t dim() const override { return omega_->dim(); }

    Point apply(const Point& x) const override {
        require_dim(x);
        const Point p = omega_->project(x);
        return linalg::axpy(lambda_, linalg::sub(p, x), x);
    }

    bool is_fixed(const Point& x, double tol = 1e-9) const override {
        require_dim(x);
        return omega_->contains(x, tol);
    }

    const ConvexSet& omega() const { return *omega_; }
    double lambda() const { return lambda_; }

  private:
    ConvexSetPtr omega_;
    double lambda_;
};

/// Composition applied first-to-last. Its fixed points are the common fixed
/// points of the members; valid for the operator families shipped here,
/// which are all sQNE with common fixed points in intended use.
class CompositionOperator final : public StepOperator {
  public:
    explicit CompositionOperator(std::vector<StepOperatorPtr> ops)
        : ops_(std::move(ops)) {
        if (ops_.empty()) {
            throw std::invalid_argument("CompositionOperator: empty list");
        }
        for (const auto& op : ops_) {
            if (!op || op->dim() != ops_.front()->dim()) {
                throw std::invalid_argument(
                    "CompositionOperator: dimension mismatch");
            }
        }
    }

    std::size_t dim() const override { return ops_.front()->dim(); }

    Point apply(const Point& x) const override {
        require_dim(x);
        Point y = x;
        for (const auto& op : ops_) {
            y = op->apply(y);
        }
        return y;
    }

    bool is_fixed(const Point& x, double tol = 1e-9) const override {
        require_dim(x);
        for (const auto& op : ops_) {
            if (!op->is_fixed(x, tol)) return false;
        }
        return true;
    }

    const std::vector<StepOperatorPtr>& members() const { return ops_; }

  private:
    std::vector<StepOperatorPtr> ops_;
};

inline CompositionOperator compose(std::vector<StepOperatorPtr> ops) {
    return CompositionOperator(std::move(ops));
}

}  // namespace vpm
