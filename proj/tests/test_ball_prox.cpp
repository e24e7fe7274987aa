#include <gtest/gtest.h>

#include <cmath>

#include "reference_oracle.hpp"
#include "smba/ball_prox.hpp"
#include "smba/errors.hpp"
#include "test_support.hpp"

using namespace smba;
using namespace smba::testing;

namespace {

struct Instance {
  ProxRegularizer p1;
  Vector xk, q;
  double lf;
  BallConstraint ball;
};

Instance random_instance(CounterRng& rng, Index n, bool l1) {
  Instance in{l1 ? ProxRegularizer::l1(n, uniform(rng, 0.1, 2.0)) : ProxRegularizer::zero(n),
              normal_vector(rng, n), normal_vector(rng, n, 3.0), log_uniform(rng, 0.1, 10.0),
              BallConstraint{normal_vector(rng, n), uniform(rng, 0.1, 2.0), log_uniform(rng, 0.1, 10.0)}};
  return in;
}

double sub_objective(const Instance& in, const Vector& x) {
  return in.p1.value(x) + in.q.dot(x - in.xk) + 0.5 * in.lf * (x - in.xk).squaredNorm();
}

TEST(BuildBall, Examples) {
  BallConstraint b = build_ball(vec({0, 0}), vec({1, 0}), -0.5, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(b.center(0), -1.0);
  EXPECT_DOUBLE_EQ(b.center(1), 0.0);
  EXPECT_NEAR(b.radius, std::sqrt(2.0), 1e-15);
  EXPECT_DOUBLE_EQ(b.curvature, 1.0);

  b = build_ball(vec({2, 3}), vec({0, 0}), -0.5, 1.0, 1.0);
  EXPECT_EQ(b.center, vec({2, 3}));
  EXPECT_DOUBLE_EQ(b.radius, 1.0);

  // g_mu -> 0^-: the ball passes through x_k.
  b = build_ball(vec({0, 0}), vec({3, 4}), -1e-14, 2.0, 0.5);
  EXPECT_NEAR(b.radius, 0.25 * 5.0, 1e-12);
  EXPECT_NEAR((vec({0, 0}) - b.center).norm(), b.radius, 1e-12);

  EXPECT_THROW(build_ball(vec({0}), vec({1}), 0.0, 1.0, 1.0), InfeasibleError);
  EXPECT_THROW(build_ball(vec({0}), vec({1}), 0.1, 1.0, 1.0), InfeasibleError);
}

TEST(ProxPathPoint, Examples) {
  const Vector xk = vec({1, 2});
  const Vector q = vec({0.5, -1});
  const BallConstraint ball{vec({0, 0}), 1.0, 1.0};
  const Vector x0 = prox_path_point(ProxRegularizer::zero(2), xk, q, 2.0, ball, 0.0);
  EXPECT_LE((x0 - (xk - q / 2.0)).norm(), 1e-15);
  const Vector xinf = prox_path_point(ProxRegularizer::zero(2), xk, q, 2.0, ball, 1e12);
  EXPECT_LE(xinf.norm(), 1e-10);
  const Vector xs = prox_path_point(ProxRegularizer::l1(2, 1.0), vec({0, 0}), vec({-2, 0}), 1.0, ball, 0.0);
  EXPECT_DOUBLE_EQ(xs(0), 1.0);
  EXPECT_DOUBLE_EQ(xs(1), 0.0);
}

TEST(SolveBallProx, Examples) {
  const BallConstraint ball{vec({0, 0}), 1.0, 1.0};
  auto r = solve_ball_prox(ProxRegularizer::zero(2), vec({0, 0}), vec({-3, 0}), 1.0, ball);
  EXPECT_NEAR(r.x(0), 1.0, 1e-12);
  EXPECT_NEAR(r.x(1), 0.0, 1e-12);
  EXPECT_NEAR(r.lambda * ball.curvature, 2.0, 1e-8);

  r = solve_ball_prox(ProxRegularizer::zero(2), vec({0, 0}), vec({-0.3, 0.2}), 1.0, ball);
  EXPECT_EQ(r.lambda, 0.0);
  EXPECT_LE((r.x - vec({0.3, -0.2})).norm(), 1e-15);

  EXPECT_THROW(solve_ball_prox(ProxRegularizer::zero(2), vec({0, 0}), vec({1, 0}), 1.0,
                               BallConstraint{vec({0, 0}), 0.0, 1.0}),
               ArgumentError);
}

TEST(SolveBallProx, L1AgainstGrid) {
  // min 1/2||x - (3,3)||^2 + ||x||_1 over ||x|| <= 1
  const BallConstraint ball{vec({0, 0}), 1.0, 1.0};
  const auto p1 = ProxRegularizer::l1(2, 1.0);
  const auto r = solve_ball_prox(p1, vec({0, 0}), vec({-3, -3}), 1.0, ball);
  oracle::GridSpec grid{vec({-1.1, -1.1}), vec({1.1, 1.1}), 2001};
  const auto best = oracle::grid_bruteforce(
      [&](const Vector& x) { return p1.value(x) + 0.5 * (x - vec({3, 3})).squaredNorm(); },
      [](const Vector& x) { return x.norm() <= 1.0; }, grid);
  EXPECT_LE((r.x - best.x).norm(), 2e-3);
  // Symmetric problem: the minimizer is (1, 1)/sqrt(2).
  EXPECT_NEAR(r.x(0), std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(r.x(1), std::sqrt(0.5), 1e-10);
}

TEST(SolveBallProx, ExactL1PathMatchesBisection) {
  CounterRng rng(77);
  for (int t = 0; t < 100; ++t) {
    const Instance in = random_instance(rng, 5, true);
    const auto a = solve_ball_prox(in.p1, in.xk, in.q, in.lf, in.ball);
    const auto b = solve_ball_prox(in.p1, in.xk, in.q, in.lf, in.ball, BallProxOptions{true, 200});
    EXPECT_LE((a.x - b.x).norm(), 1e-8 * (1.0 + a.x.norm()));
    EXPECT_NEAR(a.lambda, b.lambda, 1e-6 * (1.0 + a.lambda));
  }
}

// Invariants.

TEST(Property, ZeroRegularizerMatchesProjection) {
  CounterRng rng(88);
  for (int t = 0; t < 200; ++t) {
    const Instance in = random_instance(rng, 4, false);
    const auto r = solve_ball_prox(in.p1, in.xk, in.q, in.lf, in.ball);
    const Vector expect = oracle::exact_ball_projection(in.xk - in.q / in.lf, in.ball.center, in.ball.radius);
    EXPECT_LE((r.x - expect).norm(), 1e-10);
  }
}

TEST(Property, PathDistanceNonincreasing) {
  CounterRng rng(99);
  for (int t = 0; t < 100; ++t) {
    const Instance in = random_instance(rng, 4, t % 2 == 1);
    double prev = INFINITY;
    for (double e = -8.0; e <= 8.0; e += 0.25) {
      const double lam = std::pow(10.0, e);
      const double d = (prox_path_point(in.p1, in.xk, in.q, in.lf, in.ball, lam) - in.ball.center).norm();
      EXPECT_LE(d, prev + 1e-10);
      prev = d;
    }
  }
}

TEST(Property, FeasiblePerturbationsDoNotImprove) {
  CounterRng rng(111);
  for (int t = 0; t < 100; ++t) {
    const Instance in = random_instance(rng, 3, t % 2 == 0);
    const auto r = solve_ball_prox(in.p1, in.xk, in.q, in.lf, in.ball);
    EXPECT_LE((r.x - in.ball.center).norm(), in.ball.radius * (1.0 + 1e-12));
    const double obj = sub_objective(in, r.x);
    for (int s = 0; s < 50; ++s) {
      Vector y = r.x + normal_vector(rng, 3, log_uniform(rng, 1e-6, 1e-1));
      const Vector d = y - in.ball.center;
      if (d.norm() > in.ball.radius) y = in.ball.center + in.ball.radius * d / d.norm();
      EXPECT_GE(sub_objective(in, y), obj - 1e-8 * (1.0 + std::abs(obj)));
    }
    EXPECT_LE(r.stationarity_residual, 1e-8 * (1.0 + in.q.norm()));
    EXPECT_LE(std::abs(r.complementarity), 1e-8 * (1.0 + r.lambda));
  }
}

}  // namespace
