#pragma once

#include <cstdint>
#include <vector>

#include "smba/cone_smoothing.hpp"
#include "smba/linalg.hpp"
#include "smba/problem_model.hpp"

namespace smba {

/// Counter-based generator: the i-th 64-bit output is splitmix64(seed + (i + 1) * 0x9e3779b97f4a7c15).
/// Streams are fixed by (seed, counter) alone, so instances are reproducible
/// on any IEEE-754 platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open();
  /// Standard normal via Box-Muller (one output per two uniforms).
  double normal();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Random l1-regularized NSDP
///   min sum_i (d_i x_i^4 / 4 + c_i |x_i|^3 / 3) + x'Qx / 2 + b'x + ||x||_1
///   s.t. -A_0 - sum_i x_i A_i in S^m_-.
struct NsdpInstance {
  Index n = 0;
  Index m = 0;
  std::uint64_t seed = 0;
  Matrix q;
  Vector b;
  Vector c;
  Vector d;
  std::vector<Matrix> a;  ///< A_0 .. A_n, each m x m symmetric
};

/// Orthogonal factor of the QR decomposition with positive diag(R).
Matrix orthogonal_from_gaussian(const Matrix& g);

/// Draw order: U (n x n normals), U_0..U_n (m x m normals), a, c, d
/// (sparse, n each), a^1..a^n (sparse, m each), a^0 (uniform [10, 100]),
/// bbar (normal, mean 10, sd 1). Sparse entries are nonzero with
/// probability 0.2 and then uniform on (0, 100).
NsdpInstance generate_nsdp(Index n, Index m, std::uint64_t seed);

/// psi with P1 = l1_weight * ||x||_1 and P2 = 0, cone S^m_- smoothed by
/// the shifted spectral log-sum-exp.
DCProblem make_nsdp_problem(const NsdpInstance& inst, double l1_weight = 1.0,
                            double alpha4 = kDefaultAlphaShift);

}  // namespace smba
