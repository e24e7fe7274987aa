#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "smba/cone_smoothing.hpp"
#include "smba/linalg.hpp"

namespace smba {

/// The smooth part f of psi = f + P1 - P2.
class SmoothObjective {
 public:
  virtual ~SmoothObjective() = default;
  virtual Index dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  /// Global Lipschitz constant of the gradient, if known. Never required.
  virtual std::optional<double> lipschitz_hint() const { return std::nullopt; }
};

/// f(x) = sum_i (d_i x_i^4 / 4 + c_i |x_i|^3 / 3) + x'Qx / 2 + b'x.
/// Covers plain quadratics (c = d = 0) and the l1-regularized NSDP objective.
class PolynomialObjective final : public SmoothObjective {
 public:
  PolynomialObjective(Matrix q, Vector b, Vector c, Vector d);
  static PolynomialObjective quadratic(Matrix q, Vector b);

  Index dim() const override { return b_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  std::optional<double> lipschitz_hint() const override;

  const Matrix& q() const { return q_; }
  const Vector& b() const { return b_; }
  const Vector& c() const { return c_; }
  const Vector& d() const { return d_; }

 private:
  Matrix q_;
  Vector b_;
  Vector c_;
  Vector d_;
};

/// P1: closed-form proximal term. Either zero or a weighted l1 norm.
class ProxRegularizer {
 public:
  enum class Kind { Zero, L1 };

  static ProxRegularizer zero(Index n);
  static ProxRegularizer l1(Vector weights);
  static ProxRegularizer l1(Index n, double weight) { return l1(Vector::Constant(n, weight)); }

  Kind kind() const { return kind_; }
  Index dim() const { return weights_.size(); }
  const Vector& weights() const { return weights_; }

  double value(const Vector& x) const;
  /// argmin_u P1(u) + ||u - z||^2 / (2t).
  Vector prox(const Vector& z, double t) const;
  /// dist(0, u + dP1(x)).
  double subdiff_distance(const Vector& x, const Vector& u) const;

 private:
  ProxRegularizer(Kind kind, Vector weights) : kind_(kind), weights_(std::move(weights)) {}

  Kind kind_;
  Vector weights_;  // all zero for Kind::Zero
};

/// P2, the convex function that is subtracted.
class ConcaveTerm {
 public:
  virtual ~ConcaveTerm() = default;
  virtual Index dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  /// One deterministic element of dP2(x).
  virtual Vector subgradient(const Vector& x) const = 0;
};

class ZeroConcaveTerm final : public ConcaveTerm {
 public:
  explicit ZeroConcaveTerm(Index n) : n_(n) {}
  Index dim() const override { return n_; }
  double value(const Vector&) const override { return 0.0; }
  Vector subgradient(const Vector&) const override { return Vector::Zero(n_); }

 private:
  Index n_;
};

/// P2(x) = sum_i w_i |x_i|; subgradient picks 0 at x_i = 0.
class WeightedL1ConcaveTerm final : public ConcaveTerm {
 public:
  explicit WeightedL1ConcaveTerm(Vector weights);
  Index dim() const override { return weights_.size(); }
  double value(const Vector& x) const override;
  Vector subgradient(const Vector& x) const override;

 private:
  Vector weights_;
};

/// G : X -> Y, accessed through value and adjoint-Jacobian products only.
class ConstraintMap {
 public:
  virtual ~ConstraintMap() = default;
  virtual Index dim_x() const = 0;
  virtual Index dim_y() const = 0;
  virtual YVector value(const Vector& x) const = 0;
  /// DG(x)^* u.
  virtual Vector adjoint_apply(const Vector& x, const YVector& u) const = 0;
  /// Lipschitz constant of DG (0 for affine maps).
  virtual double lipschitz_jacobian() const = 0;
};

/// G(x) = -A_0 - sum_i x_i A_i with A_i given as flattened Y elements.
/// For the PSD family this is the NSDP map; G(x) = x - b on the orthant is
/// A_0 = b, A_i = -e_i.
class AffineConstraint final : public ConstraintMap {
 public:
  AffineConstraint(YVector a0, Matrix columns);
  static AffineConstraint from_terms(const std::vector<YVector>& terms);
  /// G(x) = x - upper (componentwise x <= upper on the orthant).
  static AffineConstraint upper_bound(const Vector& upper);
  /// G(x) = (x - center, radius): ||x - center||_2 <= radius on the 2-cone.
  static AffineConstraint ball(const Vector& center, double radius);

  Index dim_x() const override { return columns_.cols(); }
  Index dim_y() const override { return a0_.size(); }
  YVector value(const Vector& x) const override;
  Vector adjoint_apply(const Vector& x, const YVector& u) const override;
  double lipschitz_jacobian() const override { return 0.0; }

  const YVector& offset() const { return a0_; }
  /// Column i is A_{i+1}.
  const Matrix& columns() const { return columns_; }

 private:
  YVector a0_;
  Matrix columns_;
};

/// psi = f + P1 - P2 subject to G(x) in K. Immutable after construction.
class DCProblem {
 public:
  DCProblem(std::shared_ptr<const SmoothObjective> f, ProxRegularizer p1,
            std::shared_ptr<const ConcaveTerm> p2, std::shared_ptr<const ConstraintMap> g,
            ConeBaseOracle cone);

  Index dim_x() const { return f_->dim(); }
  Index dim_y() const { return g_->dim_y(); }

  const SmoothObjective& f() const { return *f_; }
  const ProxRegularizer& p1() const { return p1_; }
  const ConcaveTerm& p2() const { return *p2_; }
  const ConstraintMap& g() const { return *g_; }
  const ConeBaseOracle& cone() const { return cone_; }

  /// psi(x) = f(x) + P1(x) - P2(x).
  double objective_value(const Vector& x) const;
  /// grad f only; P1 enters through its prox and P2 through a subgradient.
  Vector objective_f_gradient(const Vector& x) const;

  /// g_B(x) = sigma_B(G(x)).
  double support_value(const Vector& x) const;
  /// g_mu(x) = h_mu(G(x)).
  double composite_value(const Vector& x, double mu) const;
  /// grad g_mu(x) = DG(x)^* grad h_mu(G(x)).
  Vector composite_gradient(const Vector& x, double mu) const;

  struct CompositeEval {
    YVector g_of_x;       ///< G(x)
    double sigma = 0.0;   ///< sigma_B(G(x)) (only if requested)
    double value = 0.0;   ///< g_mu(x)
    YVector msa_grad;     ///< grad h_mu(G(x))
    Vector gradient;      ///< grad g_mu(x)
  };
  CompositeEval composite_evaluate(const Vector& x, double mu, bool with_support = false) const;

 private:
  void check_x(const Vector& x) const;

  std::shared_ptr<const SmoothObjective> f_;
  ProxRegularizer p1_;
  std::shared_ptr<const ConcaveTerm> p2_;
  std::shared_ptr<const ConstraintMap> g_;
  ConeBaseOracle cone_;
};

}  // namespace smba
