#pragma once

#include "smba/linalg.hpp"
#include "smba/problem_model.hpp"

namespace smba {

/// Approximate-KKT witness at x with multiplier v = lambda grad h_mu(G(x)):
///   dist(0, dP1(x) - xi + grad f(x) + DG(x)^* v) <= eps1 = rho,
///   -<v, G(x)> <= eps2 = complementarity,
///   ||x - z|| <= eps3 = step, with xi in dP2(z).
struct KKTCertificate {
  double rho = 0.0;
  double complementarity = 0.0;
  double step = 0.0;
  YVector v;
  double eps1() const { return rho; }
  double eps2() const { return complementarity; }
  double eps3() const { return step; }
};

/// Residuals at x_next with the P2 subgradient taken at x_prev.
KKTCertificate kkt_residuals(const DCProblem& prob, const Vector& x_next, const Vector& x_prev,
                             double lambda, double mu);

/// Same certificate from quantities the solver already holds: xi in dP2(x_prev),
/// g_next = G(x_next) and msa_grad = grad h_mu(g_next).
KKTCertificate kkt_from_parts(const DCProblem& prob, const Vector& x_next, const Vector& x_prev,
                              const Vector& xi, const YVector& g_next, const YVector& msa_grad,
                              double lambda);

struct TerminationMetrics {
  double step = 0.0;   ///< sqrt(tau1 mu + lambda tau2) / mu * ||dx|| / max(1, ||x_next||)
  double slack = 0.0;  ///< -<G(x_next), v> / max(1, ||x_next||)
};

TerminationMetrics termination_metrics(double tau1, double tau2, double mu, const Vector& x_next,
                                       const Vector& x_prev, double lambda, const YVector& g_next,
                                       const YVector& v_next);

}  // namespace smba
