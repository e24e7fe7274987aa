#include "smba/cone_smoothing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "smba/errors.hpp"

namespace smba {
namespace {

std::atomic<std::uint64_t> g_mu_clamps{0};

// Frobenius-relative asymmetry that is silently repaired.
constexpr double kSymmetryTolerance = 1e-10;

double checked_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw ArgumentError("smoothing parameter mu must be positive and finite, got " +
                        std::to_string(mu));
  }
  if (mu < kMuFloor) {
    g_mu_clamps.fetch_add(1, std::memory_order_relaxed);
    return kMuFloor;
  }
  return mu;
}

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // columns match values
};

SymEig sym_eig_descending(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw NumericError("symmetric eigendecomposition failed");
  }
  const Index m = a.rows();
  SymEig out{Vector(m), Matrix(m, m)};
  for (Index i = 0; i < m; ++i) {
    out.values(i) = solver.eigenvalues()(m - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(m - 1 - i);
  }
  return out;
}

}  // namespace

std::uint64_t mu_clamp_count() { return g_mu_clamps.load(std::memory_order_relaxed); }

std::string to_string(ConeFamily family) {
  switch (family) {
    case ConeFamily::NonposOrthant: return "orthant";
    case ConeFamily::NegSemidef: return "nsdp";
    case ConeFamily::PCone: return "pcone";
  }
  return "unknown";
}

ConeFamily cone_family_from_string(const std::string& name) {
  if (name == "orthant") return ConeFamily::NonposOrthant;
  if (name == "nsdp" || name == "psd") return ConeFamily::NegSemidef;
  if (name == "pcone") return ConeFamily::PCone;
  throw UnsupportedFamilyError("unknown cone family '" + name + "'");
}

LogSumExp stable_logsumexp(const Vector& v, double mu) {
  if (v.size() == 0) throw ArgumentError("stable_logsumexp: empty input");
  if (!v.allFinite()) throw ArgumentError("stable_logsumexp: non-finite input");
  mu = checked_mu(mu);
  const double vmax = v.maxCoeff();
  LogSumExp out;
  out.weights = ((v.array() - vmax) / mu).exp().matrix();
  const double sum = out.weights.sum();  // >= 1, the max entry contributes exactly 1
  out.weights /= sum;
  out.value = vmax + mu * std::log(sum);
  return out;
}

ConeBaseOracle ConeBaseOracle::nonpos_orthant(Index m, double alpha4) {
  if (m < 1) throw ArgumentError("orthant order must be >= 1");
  if (!(alpha4 >= 0.0)) throw ArgumentError("alpha4 must be nonnegative");
  SmoothingCert cert{0.0, 1.0, std::log(static_cast<double>(m)) + alpha4, alpha4, 1.0};
  return ConeBaseOracle(ConeFamily::NonposOrthant, m, 0.0, cert);
}

ConeBaseOracle ConeBaseOracle::neg_semidef(Index m, double alpha4) {
  if (m < 1) throw ArgumentError("matrix order must be >= 1");
  if (!(alpha4 >= 0.0)) throw ArgumentError("alpha4 must be nonnegative");
  // sup of the Frobenius norm over unit-trace PSD matrices is 1 (rank one).
  SmoothingCert cert{0.0, 1.0, std::log(static_cast<double>(m)) + alpha4, alpha4, 1.0};
  return ConeBaseOracle(ConeFamily::NegSemidef, m, 0.0, cert);
}

ConeBaseOracle ConeBaseOracle::p_cone(Index m, double p, double alpha4) {
  if (m < 1) throw ArgumentError("p-cone order must be >= 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw ArgumentError("p-cone requires p in (1, inf)");
  if (!(alpha4 >= 0.0)) throw ArgumentError("alpha4 must be nonnegative");
  const double q = p / (p - 1.0);
  // ||u||_2 <= max(1, m^(1/2 - 1/q)) on the unit q-ball.
  const double u_bound = q >= 2.0 ? std::pow(static_cast<double>(m), 0.5 - 1.0 / q) : 1.0;
  SmoothingCert cert{0.0, 1.0, 1.0 + alpha4, alpha4, std::sqrt(1.0 + u_bound * u_bound)};
  return ConeBaseOracle(ConeFamily::PCone, m, p, cert);
}

Index ConeBaseOracle::dim() const {
  switch (family_) {
    case ConeFamily::NonposOrthant: return m_;
    case ConeFamily::NegSemidef: return m_ * m_;
    case ConeFamily::PCone: return m_ + 1;
  }
  return 0;
}

void ConeBaseOracle::check_input(const YVector& y) const {
  if (y.size() != dim()) {
    throw ArgumentError("cone element has length " + std::to_string(y.size()) + ", expected " +
                        std::to_string(dim()));
  }
  if (!y.allFinite()) throw ArgumentError("cone element has non-finite entries");
}

Matrix ConeBaseOracle::symmetric_view(const YVector& y) const {
  Eigen::Map<const Matrix> a(y.data(), m_, m_);
  const double asym = (a - a.transpose()).norm();
  if (asym > kSymmetryTolerance * std::max(1.0, a.norm())) {
    throw ArgumentError("matrix argument is not symmetric (||Y - Y^T||_F = " +
                        std::to_string(asym) + ")");
  }
  return 0.5 * (a + a.transpose());
}

double ConeBaseOracle::support_value(const YVector& y) const {
  check_input(y);
  switch (family_) {
    case ConeFamily::NonposOrthant:
      return y.maxCoeff();
    case ConeFamily::NegSemidef: {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_view(y), Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
      return solver.eigenvalues()(m_ - 1);
    }
    case ConeFamily::PCone: {
      const auto u = y.head(m_);
      const double norm = p_ == 2.0 ? u.norm() : std::pow(u.array().abs().pow(p_).sum(), 1.0 / p_);
      return norm - y(m_);
    }
  }
  return 0.0;
}

MsaEval ConeBaseOracle::msa_evaluate(const YVector& y, double mu) const {
  check_input(y);
  mu = checked_mu(mu);
  MsaEval out;
  switch (family_) {
    case ConeFamily::NonposOrthant: {
      LogSumExp lse = stable_logsumexp(y, mu);
      out.value = lse.value;
      out.gradient = std::move(lse.weights);
      break;
    }
    case ConeFamily::NegSemidef: {
      const SymEig eig = sym_eig_descending(symmetric_view(y));
      const LogSumExp lse = stable_logsumexp(eig.values, mu);
      out.value = lse.value;
      Matrix g = eig.vectors * lse.weights.asDiagonal() * eig.vectors.transpose();
      g = 0.5 * (g + g.transpose()).eval();
      out.gradient = Eigen::Map<const YVector>(g.data(), g.size());
      break;
    }
    case ConeFamily::PCone: {
      if (p_ != 2.0) {
        throw UnsupportedFamilyError("smoothing of the p-cone support is only available for p = 2");
      }
      const auto u = y.head(m_);
      const double r = std::hypot(u.norm(), mu);
      out.value = r - y(m_);
      out.gradient.resize(m_ + 1);
      out.gradient.head(m_) = u / r;
      out.gradient(m_) = -1.0;
      break;
    }
  }
  out.value += cert_.alpha4 * mu;
  return out;
}

double ConeBaseOracle::msa_value(const YVector& y, double mu) const {
  return msa_evaluate(y, mu).value;
}

YVector ConeBaseOracle::msa_gradient(const YVector& y, double mu) const {
  return msa_evaluate(y, mu).gradient;
}

double ConeBaseOracle::polar_violation(const YVector& v) const {
  check_input(v);
  switch (family_) {
    case ConeFamily::NonposOrthant:
      return -v.minCoeff();
    case ConeFamily::NegSemidef: {
      Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric_view(v), Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) throw NumericError("eigenvalue computation failed");
      return -solver.eigenvalues()(0);
    }
    case ConeFamily::PCone: {
      // K° = -K_{m,q} with 1/p + 1/q = 1.
      const auto u = v.head(m_);
      const double q = p_ / (p_ - 1.0);
      const double norm = q == 2.0 ? u.norm() : std::pow(u.array().abs().pow(q).sum(), 1.0 / q);
      return norm + v(m_);
    }
  }
  return 0.0;
}

MsaEval L1Smoothing::evaluate(const Vector& y, double mu) {
  if (!y.allFinite()) throw ArgumentError("l1 smoothing: non-finite input");
  mu = checked_mu(mu);
  MsaEval out;
  const Eigen::ArrayXd r = (y.array().square() + mu * mu).sqrt();
  out.value = r.sum();
  out.gradient = (y.array() / r).matrix();
  return out;
}

SmoothingCert L1Smoothing::cert(Index m) {
  return SmoothingCert{0.0, 1.0, static_cast<double>(m), 0.0, std::sqrt(static_cast<double>(m))};
}

}  // namespace smba
