#include "smba/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "smba/errors.hpp"

namespace smba {

KKTCertificate kkt_residuals(const DCProblem& prob, const Vector& x_next, const Vector& x_prev,
                             double lambda, double mu) {
  if (!(mu > 0.0)) throw ArgumentError("kkt_residuals: mu must be positive");
  if (!(lambda >= 0.0)) throw ArgumentError("kkt_residuals: lambda must be nonnegative");
  const YVector g_next = prob.g().value(x_next);
  const YVector msa_grad =
      lambda == 0.0 ? YVector::Zero(g_next.size()) : prob.cone().msa_gradient(g_next, mu);
  return kkt_from_parts(prob, x_next, x_prev, prob.p2().subgradient(x_prev), g_next, msa_grad,
                        lambda);
}

KKTCertificate kkt_from_parts(const DCProblem& prob, const Vector& x_next, const Vector& x_prev,
                              const Vector& xi, const YVector& g_next, const YVector& msa_grad,
                              double lambda) {
  KKTCertificate cert;
  cert.v = lambda * msa_grad;
  const Vector u =
      prob.objective_f_gradient(x_next) - xi + prob.g().adjoint_apply(x_next, cert.v);
  cert.rho = prob.p1().subdiff_distance(x_next, u);
  cert.complementarity = -cert.v.dot(g_next);
  cert.step = (x_next - x_prev).norm();
  return cert;
}

TerminationMetrics termination_metrics(double tau1, double tau2, double mu, const Vector& x_next,
                                       const Vector& x_prev, double lambda, const YVector& g_next,
                                       const YVector& v_next) {
  const double scale = std::max(1.0, x_next.norm());
  TerminationMetrics out;
  out.step = std::sqrt(tau1 * mu + lambda * tau2) / mu * (x_next - x_prev).norm() / scale;
  out.slack = -g_next.dot(v_next) / scale;
  return out;
}

}  // namespace smba
