#pragma once

#include "smba/linalg.hpp"
#include "smba/problem_model.hpp"

namespace smba {

/// Feasible set of the moving-ball subproblem,
///   g_kj(x) = (curvature / 2) (||x - center||^2 - radius^2) <= 0,
/// with curvature = L_g / mu.
struct BallConstraint {
  Vector center;
  double radius = 0.0;
  double curvature = 0.0;
};

/// Quadratic upper model of g_mu at x_k, rewritten as a ball:
///   center = x_k - (mu / L_g) grad,
///   radius = (mu / L_g) sqrt(||grad||^2 - 2 (L_g / mu) g_mu(x_k)).
/// Throws InfeasibleError unless gmu_value < 0.
BallConstraint build_ball(const Vector& x_k, const Vector& grad_gmu, double gmu_value, double lg,
                          double mu);

struct BallProxOptions {
  /// Solve the l1 case by walking the piecewise-linear multiplier path
  /// instead of bisection.
  bool exact_l1_path = false;
  int max_doublings = 200;
};

struct SubproblemResult {
  Vector x;
  double lambda = 0.0;  ///< multiplier of g_kj (not of the distance constraint)
  double stationarity_residual = 0.0;
  double complementarity = 0.0;  ///< lambda * (||x - center|| - radius)
  int iterations_rootfind = 0;
};

/// Minimizer of the Lagrangian
///   P1(x) + <q, x - x_k> + (L_f / 2)||x - x_k||^2 + lambda g_kj(x)
/// for fixed lambda >= 0.
Vector prox_path_point(const ProxRegularizer& p1, const Vector& x_k, const Vector& q, double lf,
                       const BallConstraint& ball, double lambda);

/// Solves
///   min P1(x) + <q, x - x_k> + (L_f / 2)||x - x_k||^2  s.t. ||x - center|| <= radius
/// exactly, by a one-dimensional search on the multiplier.
SubproblemResult solve_ball_prox(const ProxRegularizer& p1, const Vector& x_k, const Vector& q,
                                 double lf, const BallConstraint& ball,
                                 const BallProxOptions& options = {});

}  // namespace smba
