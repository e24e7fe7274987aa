#include <gtest/gtest.h>

#include <memory>

#include "smba/diagnostics.hpp"
#include "smba/errors.hpp"
#include "test_support.hpp"

using namespace smba;
using namespace smba::testing;

namespace {

// f(x) = 0.5 x, P1 = |x|, constraint x <= 10.
DCProblem scalar_problem() {
  auto f = std::make_shared<PolynomialObjective>(PolynomialObjective::quadratic(Matrix::Zero(1, 1), vec({0.5})));
  return DCProblem(f, ProxRegularizer::l1(1, 1.0), std::make_shared<ZeroConcaveTerm>(1),
                   std::make_shared<AffineConstraint>(AffineConstraint::upper_bound(vec({10}))),
                   ConeBaseOracle::nonpos_orthant(1));
}

TEST(KktResiduals, Examples) {
  const DCProblem prob = scalar_problem();
  auto c = kkt_residuals(prob, vec({0}), vec({0}), 0.0, 1.0);
  EXPECT_EQ(c.rho, 0.0);
  c = kkt_residuals(prob, vec({1}), vec({0}), 0.0, 1.0);
  EXPECT_DOUBLE_EQ(c.rho, 1.5);
  EXPECT_DOUBLE_EQ(c.step, 1.0);
  EXPECT_EQ(c.complementarity, 0.0);
  EXPECT_EQ(c.v.norm(), 0.0);
  EXPECT_EQ(c.eps1(), c.rho);
  EXPECT_EQ(c.eps2(), c.complementarity);
  EXPECT_EQ(c.eps3(), c.step);
  EXPECT_THROW(kkt_residuals(prob, vec({0}), vec({0}), -1.0, 1.0), ArgumentError);
}

TEST(KktResiduals, MultiplierEntersThroughAdjoint) {
  // v = lambda * softmax of a single entry = lambda; G = x - 10 so DG^* v = v.
  const DCProblem prob = scalar_problem();
  const auto c = kkt_residuals(prob, vec({2}), vec({2}), 0.25, 1.0);
  EXPECT_DOUBLE_EQ(c.v(0), 0.25);
  EXPECT_DOUBLE_EQ(c.rho, 0.5 + 0.25 + 1.0);
  EXPECT_DOUBLE_EQ(c.complementarity, -0.25 * (2.0 - 10.0));
}

TEST(TerminationMetrics, Examples) {
  auto m = termination_metrics(0.01, 0.01, 0.5, vec({1, 2}), vec({1, 2}), 0.0, vec({-1, -2}), vec({0, 0}));
  EXPECT_EQ(m.step, 0.0);
  EXPECT_EQ(m.slack, 0.0);
  m = termination_metrics(0.01, 0.01, 1.0, vec({0.6, 0}), vec({-0.4, 0}), 0.0, vec({-1, -1}), vec({0, 0}));
  EXPECT_NEAR(m.step, 0.1, 1e-16);
  // scaled by max(1, ||x_next||)
  m = termination_metrics(0.01, 0.01, 1.0, vec({4, 0}), vec({3, 0}), 0.0, vec({-1}), vec({2}));
  EXPECT_NEAR(m.step, 0.1 / 4.0, 1e-16);
  EXPECT_NEAR(m.slack, 0.5, 1e-16);
}

TEST(Property, PsdMultiplierIsScaledSoftmax) {
  const NsdpInstance inst = generate_nsdp(6, 5, 21);
  const DCProblem prob = make_nsdp_problem(inst);
  CounterRng rng(8);
  for (int t = 0; t < 30; ++t) {
    const Vector x = normal_vector(rng, 6, 0.05);
    const double lambda = log_uniform(rng, 1e-3, 1e3);
    const auto c = kkt_residuals(prob, x, x, lambda, log_uniform(rng, 1e-3, 1.0));
    const Matrix v = unflatten(c.v, 5);
    const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(v).eigenvalues();
    EXPECT_GE(ev.minCoeff(), -1e-10 * (1.0 + lambda));
    EXPECT_NEAR(ev.sum(), lambda, 1e-10 * (1.0 + lambda));
    EXPECT_LE(prob.cone().polar_violation(c.v), 1e-10 * (1.0 + lambda));
  }
}

}  // namespace
