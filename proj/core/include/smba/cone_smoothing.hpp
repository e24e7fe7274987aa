#pragma once

#include <cstdint>
#include <string>

#include "smba/linalg.hpp"

namespace smba {

/// Additive slope of the default shift h_mu = hbar_mu + alpha4 * mu.
inline constexpr double kDefaultAlphaShift = 1e-5;

/// Smallest smoothing parameter the kernels evaluate at. Smaller values are
/// clamped (and counted, see mu_clamp_count()).
inline constexpr double kMuFloor = 1e-12;

/// Parameters certifying that {h_mu} is a majorizing smoothing approximation
/// of the support function:
///   sigma(y) <= h_mu(y) <= sigma(y) + alpha3 * mu,
///   grad h_mu is (alpha1 + alpha2 / mu)-Lipschitz,
///   h_mu1 <= h_mu0 - alpha4 * (mu0 - mu1) for mu0 > mu1.
/// alpha3 already includes alpha4.
struct SmoothingCert {
  double alpha1 = 0.0;
  double alpha2 = 1.0;
  double alpha3 = 0.0;
  double alpha4 = 0.0;
  double base_norm_bound = 1.0;  ///< sup of ||u|| over the base
};

enum class ConeFamily {
  NonposOrthant,  ///< K = R^m_-,   base = unit simplex
  NegSemidef,     ///< K = S^m_-,   base = unit-trace PSD matrices
  PCone,          ///< K = {(u,t): ||u||_p <= t},  base = {(u,-1): ||u||_q <= 1}
};

std::string to_string(ConeFamily family);
ConeFamily cone_family_from_string(const std::string& name);

/// Value and gradient of h_mu at one point; shares the eigendecomposition
/// for the PSD family.
struct MsaEval {
  double value = 0.0;
  YVector gradient;
};

struct LogSumExp {
  double value = 0.0;
  Vector weights;  ///< softmax(v / mu)
};

/// value = max(v) + mu * log sum exp((v_i - max(v)) / mu), weights = softmax.
LogSumExp stable_logsumexp(const Vector& v, double mu);

/// Support function of a compact base of the polar cone, together with its
/// majorizing smoothing approximation. Immutable; all members are pure.
class ConeBaseOracle {
 public:
  static ConeBaseOracle nonpos_orthant(Index m, double alpha4 = kDefaultAlphaShift);
  static ConeBaseOracle neg_semidef(Index m, double alpha4 = kDefaultAlphaShift);
  /// Only p = 2 has a smoothing; other p throw UnsupportedFamilyError.
  static ConeBaseOracle p_cone(Index m, double p = 2.0, double alpha4 = kDefaultAlphaShift);

  ConeFamily family() const { return family_; }
  /// The order m of the family (vector length, matrix order, or u-block length).
  Index order() const { return m_; }
  double p() const { return p_; }
  /// Length of a flattened element of Y.
  Index dim() const;
  const SmoothingCert& cert() const { return cert_; }

  /// sigma_B(y); y lies in K iff the value is <= 0.
  double support_value(const YVector& y) const;
  double msa_value(const YVector& y, double mu) const;
  YVector msa_gradient(const YVector& y, double mu) const;
  MsaEval msa_evaluate(const YVector& y, double mu) const;

  /// How far v is from the polar cone K° (<= 0 means inside).
  /// Orthant: -min_i v_i; PSD: -lambda_min(v); p-cone: ||u||_2 + s for v = (u, s).
  double polar_violation(const YVector& v) const;

 private:
  ConeBaseOracle(ConeFamily family, Index m, double p, SmoothingCert cert)
      : family_(family), m_(m), p_(p), cert_(cert) {}

  void check_input(const YVector& y) const;
  Matrix symmetric_view(const YVector& y) const;

  ConeFamily family_;
  Index m_;
  double p_;
  SmoothingCert cert_;
};

/// Smoothing of the l1 norm, sum_i sqrt(y_i^2 + mu^2), certified with
/// (alpha1, alpha2, alpha3) = (0, 1, m). Standalone kernel; no cone family uses it.
struct L1Smoothing {
  static MsaEval evaluate(const Vector& y, double mu);
  static SmoothingCert cert(Index m);
};

/// Number of times a smoothing parameter below kMuFloor was clamped since
/// program start (process-wide, thread safe).
std::uint64_t mu_clamp_count();

}  // namespace smba
