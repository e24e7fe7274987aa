#include "smba/problem_model.hpp"

#include <cmath>
#include <string>

#include "smba/errors.hpp"

namespace smba {
namespace {

void require_length(const Vector& v, Index n, const char* what) {
  if (v.size() != n) {
    throw ArgumentError(std::string(what) + " has length " + std::to_string(v.size()) +
                        ", expected " + std::to_string(n));
  }
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

// ---------------------------------------------------------------- f

PolynomialObjective::PolynomialObjective(Matrix q, Vector b, Vector c, Vector d)
    : b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  const Index n = b_.size();
  if (q.rows() != n || q.cols() != n) {
    throw ArgumentError("Q must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  require_length(c_, n, "c");
  require_length(d_, n, "d");
  if ((c_.array() < 0.0).any() || (d_.array() < 0.0).any()) {
    throw ArgumentError("c and d must be entrywise nonnegative");
  }
  if (!q.allFinite() || !b_.allFinite() || !c_.allFinite() || !d_.allFinite()) {
    throw ArgumentError("objective data must be finite");
  }
  q_ = 0.5 * (q + q.transpose());
}

PolynomialObjective PolynomialObjective::quadratic(Matrix q, Vector b) {
  const Index n = b.size();
  return PolynomialObjective(std::move(q), std::move(b), Vector::Zero(n), Vector::Zero(n));
}

double PolynomialObjective::value(const Vector& x) const {
  require_length(x, dim(), "x");
  const Eigen::ArrayXd ax = x.array().abs();
  const double poly = (0.25 * d_.array() * ax.square().square() + c_.array() * ax.cube() / 3.0).sum();
  return poly + 0.5 * x.dot(q_ * x) + b_.dot(x);
}

Vector PolynomialObjective::gradient(const Vector& x) const {
  require_length(x, dim(), "x");
  Vector g = q_ * x + b_;
  g.array() += d_.array() * x.array().cube() + c_.array() * x.array() * x.array().abs();
  return g;
}

std::optional<double> PolynomialObjective::lipschitz_hint() const {
  if ((c_.array() != 0.0).any() || (d_.array() != 0.0).any()) return std::nullopt;
  if (q_.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(q_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- P1

ProxRegularizer ProxRegularizer::zero(Index n) { return ProxRegularizer(Kind::Zero, Vector::Zero(n)); }

ProxRegularizer ProxRegularizer::l1(Vector weights) {
  if (!weights.allFinite() || (weights.array() < 0.0).any()) {
    throw ArgumentError("l1 weights must be finite and nonnegative");
  }
  return ProxRegularizer(Kind::L1, std::move(weights));
}

double ProxRegularizer::value(const Vector& x) const {
  require_length(x, dim(), "x");
  if (kind_ == Kind::Zero) return 0.0;
  return weights_.dot(x.cwiseAbs());
}

Vector ProxRegularizer::prox(const Vector& z, double t) const {
  require_length(z, dim(), "z");
  if (!(t > 0.0)) throw ArgumentError("prox step must be positive");
  if (kind_ == Kind::Zero) return z;
  Vector out(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    out(i) = sign(z(i)) * std::max(std::abs(z(i)) - t * weights_(i), 0.0);
  }
  return out;
}

double ProxRegularizer::subdiff_distance(const Vector& x, const Vector& u) const {
  require_length(x, dim(), "x");
  require_length(u, dim(), "u");
  if (kind_ == Kind::Zero) return u.norm();
  double sq = 0.0;
  for (Index i = 0; i < x.size(); ++i) {
    const double r = x(i) == 0.0 ? std::max(std::abs(u(i)) - weights_(i), 0.0)
                                  : std::abs(u(i) + weights_(i) * sign(x(i)));
    sq += r * r;
  }
  return std::sqrt(sq);
}

// ---------------------------------------------------------------- P2

WeightedL1ConcaveTerm::WeightedL1ConcaveTerm(Vector weights) : weights_(std::move(weights)) {
  if (!weights_.allFinite() || (weights_.array() < 0.0).any()) {
    throw ArgumentError("P2 weights must be finite and nonnegative");
  }
}

double WeightedL1ConcaveTerm::value(const Vector& x) const {
  require_length(x, dim(), "x");
  return weights_.dot(x.cwiseAbs());
}

Vector WeightedL1ConcaveTerm::subgradient(const Vector& x) const {
  require_length(x, dim(), "x");
  Vector g(x.size());
  for (Index i = 0; i < x.size(); ++i) g(i) = weights_(i) * sign(x(i));
  return g;
}

// ---------------------------------------------------------------- G

AffineConstraint::AffineConstraint(YVector a0, Matrix columns)
    : a0_(std::move(a0)), columns_(std::move(columns)) {
  if (columns_.rows() != a0_.size()) {
    throw ArgumentError("affine constraint: term length mismatch");
  }
  if (!a0_.allFinite() || !columns_.allFinite()) {
    throw ArgumentError("affine constraint data must be finite");
  }
}

AffineConstraint AffineConstraint::from_terms(const std::vector<YVector>& terms) {
  if (terms.empty()) throw ArgumentError("affine constraint needs at least A_0");
  const Index dy = terms.front().size();
  Matrix cols(dy, static_cast<Index>(terms.size()) - 1);
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (terms[i].size() != dy) {
      throw ArgumentError("A_" + std::to_string(i) + " has length " +
                          std::to_string(terms[i].size()) + ", expected " + std::to_string(dy));
    }
    cols.col(static_cast<Index>(i) - 1) = terms[i];
  }
  return AffineConstraint(terms.front(), std::move(cols));
}

AffineConstraint AffineConstraint::upper_bound(const Vector& upper) {
  const Index n = upper.size();
  return AffineConstraint(upper, -Matrix::Identity(n, n));
}

AffineConstraint AffineConstraint::ball(const Vector& center, double radius) {
  if (!(radius > 0.0)) throw ArgumentError("ball radius must be positive");
  const Index n = center.size();
  YVector a0(n + 1);
  a0.head(n) = center;
  a0(n) = -radius;
  Matrix cols = Matrix::Zero(n + 1, n);
  cols.topRows(n) = -Matrix::Identity(n, n);
  return AffineConstraint(std::move(a0), std::move(cols));
}

YVector AffineConstraint::value(const Vector& x) const {
  require_length(x, dim_x(), "x");
  return -a0_ - columns_ * x;
}

Vector AffineConstraint::adjoint_apply(const Vector& x, const YVector& u) const {
  require_length(x, dim_x(), "x");
  require_length(u, dim_y(), "u");
  return -(columns_.transpose() * u);
}

// ---------------------------------------------------------------- problem

DCProblem::DCProblem(std::shared_ptr<const SmoothObjective> f, ProxRegularizer p1,
                     std::shared_ptr<const ConcaveTerm> p2, std::shared_ptr<const ConstraintMap> g,
                     ConeBaseOracle cone)
    : f_(std::move(f)), p1_(std::move(p1)), p2_(std::move(p2)), g_(std::move(g)),
      cone_(std::move(cone)) {
  if (!f_ || !p2_ || !g_) throw ArgumentError("problem oracles must be non-null");
  const Index n = f_->dim();
  if (p1_.dim() != n || p2_->dim() != n || g_->dim_x() != n) {
    throw ArgumentError("problem oracles disagree on dim(X)");
  }
  if (g_->dim_y() != cone_.dim()) {
    throw ArgumentError("constraint map range has length " + std::to_string(g_->dim_y()) +
                        " but the cone expects " + std::to_string(cone_.dim()));
  }
  if (cone_.family() == ConeFamily::PCone && cone_.p() != 2.0) {
    throw UnsupportedFamilyError("p-cone constraints are only supported for p = 2");
  }
}

void DCProblem::check_x(const Vector& x) const { require_length(x, dim_x(), "x"); }

double DCProblem::objective_value(const Vector& x) const {
  check_x(x);
  return f_->value(x) + p1_.value(x) - p2_->value(x);
}

Vector DCProblem::objective_f_gradient(const Vector& x) const {
  check_x(x);
  return f_->gradient(x);
}

double DCProblem::support_value(const Vector& x) const {
  check_x(x);
  return cone_.support_value(g_->value(x));
}

double DCProblem::composite_value(const Vector& x, double mu) const {
  check_x(x);
  return cone_.msa_value(g_->value(x), mu);
}

Vector DCProblem::composite_gradient(const Vector& x, double mu) const {
  check_x(x);
  return g_->adjoint_apply(x, cone_.msa_gradient(g_->value(x), mu));
}

DCProblem::CompositeEval DCProblem::composite_evaluate(const Vector& x, double mu,
                                                       bool with_support) const {
  check_x(x);
  CompositeEval out;
  out.g_of_x = g_->value(x);
  MsaEval h = cone_.msa_evaluate(out.g_of_x, mu);
  out.value = h.value;
  out.msa_grad = std::move(h.gradient);
  out.gradient = g_->adjoint_apply(x, out.msa_grad);
  if (with_support) out.sigma = cone_.support_value(out.g_of_x);
  return out;
}

}  // namespace smba
