#include "smba/nsdp_instance.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "smba/errors.hpp"

namespace smba {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr double kSparseDensity = 0.2;
constexpr double kSparseScale = 100.0;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Matrix gaussian_matrix(CounterRng& rng, Index rows, Index cols) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.normal();
  }
  return g;
}

Vector sparse_vector(CounterRng& rng, Index len) {
  Vector v(len);
  for (Index i = 0; i < len; ++i) {
    const double keep = rng.uniform_open();
    const double magnitude = rng.uniform_open();
    v(i) = keep < kSparseDensity ? kSparseScale * magnitude : 0.0;
  }
  return v;
}

Matrix spectral(const Matrix& u, const Vector& eigenvalues) {
  Matrix s = u * eigenvalues.asDiagonal() * u.transpose();
  return 0.5 * (s + s.transpose());
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  ++counter_;
  return splitmix64(seed_ + counter_ * kGolden);
}

double CounterRng::uniform_open() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal() {
  const double u1 = uniform_open();
  const double u2 = uniform_open();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix orthogonal_from_gaussian(const Matrix& g) {
  if (g.rows() != g.cols()) throw ArgumentError("orthogonal_from_gaussian: matrix must be square");
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
  const Matrix& r = qr.matrixQR();
  for (Index i = 0; i < g.cols(); ++i) {
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  }
  return q;
}

NsdpInstance generate_nsdp(Index n, Index m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ArgumentError("generate_nsdp: n and m must be >= 1");
  CounterRng rng(seed);
  NsdpInstance inst;
  inst.n = n;
  inst.m = m;
  inst.seed = seed;

  const Matrix u = orthogonal_from_gaussian(gaussian_matrix(rng, n, n));
  std::vector<Matrix> ui;
  ui.reserve(static_cast<std::size_t>(n) + 1);
  for (Index i = 0; i <= n; ++i) ui.push_back(orthogonal_from_gaussian(gaussian_matrix(rng, m, m)));

  const Vector a = sparse_vector(rng, n);
  inst.c = sparse_vector(rng, n);
  inst.d = sparse_vector(rng, n);
  std::vector<Vector> ai(static_cast<std::size_t>(n) + 1);
  for (Index i = 1; i <= n; ++i) ai[static_cast<std::size_t>(i)] = sparse_vector(rng, m);
  Vector a0(m);
  for (Index i = 0; i < m; ++i) a0(i) = 10.0 + 90.0 * rng.uniform_open();
  ai[0] = a0;
  Vector bbar(n);
  for (Index i = 0; i < n; ++i) bbar(i) = 10.0 + rng.normal();

  inst.q = spectral(u, a);
  const Vector support = (a.array() != 0.0).cast<double>().matrix();
  inst.b = u * support.asDiagonal() * bbar;
  inst.a.reserve(ai.size());
  for (std::size_t i = 0; i < ai.size(); ++i) inst.a.push_back(spectral(ui[i], ai[i]));
  return inst;
}

DCProblem make_nsdp_problem(const NsdpInstance& inst, double l1_weight, double alpha4) {
  const Index n = inst.n;
  const Index m = inst.m;
  auto f = std::make_shared<PolynomialObjective>(inst.q, inst.b, inst.c, inst.d);
  std::vector<YVector> terms;
  terms.reserve(inst.a.size());
  for (const Matrix& ai : inst.a) terms.emplace_back(Eigen::Map<const YVector>(ai.data(), m * m));
  auto g = std::make_shared<AffineConstraint>(AffineConstraint::from_terms(terms));
  return DCProblem(std::move(f), ProxRegularizer::l1(n, l1_weight),
                   std::make_shared<ZeroConcaveTerm>(n), std::move(g),
                   ConeBaseOracle::neg_semidef(m, alpha4));
}

}  // namespace smba
