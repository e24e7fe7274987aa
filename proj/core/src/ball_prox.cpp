#include "smba/ball_prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "smba/errors.hpp"

namespace smba {
namespace {

constexpr double kPhiRelTol = 1e-12;
constexpr double kWidthRelTol = 1e-14;
constexpr int kMaxBisection = 4000;

struct MultiplierPath {
  MultiplierPath(const ProxRegularizer& p1_in, const Vector& x_k_in, const Vector& q_in,
                 double lf_in, const BallConstraint& ball_in)
      : p1(p1_in), x_k(x_k_in), q(q_in), lf(lf_in), ball(ball_in) {}

  Vector point(double lambda) const { return prox_path_point(p1, x_k, q, lf, ball, lambda); }

  double phi(double lambda) const { return (point(lambda) - ball.center).norm() - ball.radius; }

  // Termination band for |phi|, tight enough that lambda * |phi| stays far
  // below the radius.
  double phi_tol(double lambda) const {
    return std::min(kPhiRelTol * (1.0 + ball.radius),
                    1e-10 * ball.radius / std::max(1.0, lambda));
  }

  // Bisection on [lo, hi] with phi(lo) > 0 >= phi(hi). Returns a lambda with
  // phi(lambda) <= 0.
  double bisect(double lo, double hi, int& iterations) const {
    for (int it = 0; it < kMaxBisection; ++it) {
      if (hi - lo <= kWidthRelTol * (1.0 + hi)) break;
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      ++iterations;
      const double f = phi(mid);
      if (f > 0.0) {
        lo = mid;
      } else {
        hi = mid;
        if (f >= -phi_tol(mid)) break;
      }
    }
    return hi;
  }

  const ProxRegularizer& p1;
  const Vector& x_k;
  const Vector& q;
  double lf;
  const BallConstraint& ball;
};

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Smallest root of a*l^2 + b*l + c = 0 inside [lo, hi], if any.
bool quadratic_root_in(double a, double b, double c, double lo, double hi, double& root) {
  std::vector<double> roots;
  if (std::abs(a) <= 1e-300) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
      roots.push_back(-b / (2.0 * a));  // touching, up to rounding
    } else {
      const double s = std::sqrt(disc);
      const double qq = -0.5 * (b + (b >= 0.0 ? s : -s));
      if (qq != 0.0) {
        roots.push_back(qq / a);
        roots.push_back(c / qq);
      } else {
        roots.push_back(0.0);
      }
    }
  }
  const double slack = 1e-9 * (1.0 + std::abs(lo) + (std::isfinite(hi) ? std::abs(hi) : 0.0));
  bool found = false;
  for (double r : roots) {
    if (!std::isfinite(r)) continue;
    if (r >= lo - slack && r <= hi + slack) {
      const double clamped = std::clamp(r, lo, hi);
      if (!found || clamped < root) root = clamped;
      found = true;
    }
  }
  return found;
}

// Root of phi for P1 = weighted l1, following the piecewise-linear path of
// t(lambda) * x(lambda) = soft(a + lambda * beta, w).
double exact_l1_root(const MultiplierPath& path, int& iterations) {
  const Vector& w = path.p1.weights();
  const BallConstraint& ball = path.ball;
  const double c = ball.curvature;
  const double lf = path.lf;
  const Vector a = lf * path.x_k - path.q;
  const Vector beta = c * ball.center;
  const Index n = a.size();

  std::vector<double> breaks;
  for (Index i = 0; i < n; ++i) {
    if (beta(i) == 0.0) continue;
    for (double s : {w(i), -w(i)}) {
      const double l = (s - a(i)) / beta(i);
      if (l > 0.0 && std::isfinite(l)) breaks.push_back(l);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  // Locate the piece holding the root; phi is nonincreasing.
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (double l : breaks) {
    ++iterations;
    if (path.phi(l) <= 0.0) {
      hi = l;
      break;
    }
    lo = l;
  }

  // Active pattern at an interior point of the piece.
  const double probe = std::isfinite(hi) ? 0.5 * (lo + hi) : lo + 1.0 + lo;
  Vector alpha = Vector::Zero(n);
  Vector slope = Vector::Zero(n);
  for (Index i = 0; i < n; ++i) {
    const double zi = a(i) + probe * beta(i);
    if (std::abs(zi) > w(i)) {
      alpha(i) = a(i) - sign(zi) * w(i);
      slope(i) = beta(i);
    }
  }
  const Vector e = alpha - lf * ball.center;
  const Vector f = slope - c * ball.center;
  const double r2 = ball.radius * ball.radius;
  const double qa = f.squaredNorm() - r2 * c * c;
  const double qb = 2.0 * e.dot(f) - 2.0 * r2 * lf * c;
  const double qc = e.squaredNorm() - r2 * lf * lf;

  double root = 0.0;
  if (quadratic_root_in(qa, qb, qc, lo, hi, root)) {
    ++iterations;
    if (path.phi(root) <= 0.0 && path.phi(root) >= -path.phi_tol(root)) return root;
    // Polish on a tight bracket around the analytic root.
    double blo = std::max(lo, root * (1.0 - 1e-10) - 1e-300);
    double bhi = root * (1.0 + 1e-10) + 1e-300;
    if (std::isfinite(hi)) bhi = std::min(bhi, hi);
    if (path.phi(blo) > 0.0 && path.phi(bhi) <= 0.0) return path.bisect(blo, bhi, iterations);
  }
  // Fallback: plain bisection on the piece.
  if (!std::isfinite(hi)) {
    hi = std::max(1.0, 2.0 * lo);
    int doublings = 0;
    while (path.phi(hi) > 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++doublings > 200) throw NumericError("exact l1 path: failed to bracket multiplier");
    }
  }
  return path.bisect(lo, hi, iterations);
}

}  // namespace

BallConstraint build_ball(const Vector& x_k, const Vector& grad_gmu, double gmu_value, double lg,
                          double mu) {
  if (x_k.size() != grad_gmu.size()) throw ArgumentError("build_ball: dimension mismatch");
  if (!(lg > 0.0) || !(mu > 0.0)) throw ArgumentError("build_ball: L_g and mu must be positive");
  if (!(gmu_value < 0.0)) {
    throw InfeasibleError("build_ball: iterate is not strictly feasible (g_mu = " +
                          std::to_string(gmu_value) + ")");
  }
  const double step = mu / lg;
  BallConstraint ball;
  ball.center = x_k - step * grad_gmu;
  ball.radius = step * std::sqrt(grad_gmu.squaredNorm() - 2.0 * (lg / mu) * gmu_value);
  ball.curvature = lg / mu;
  return ball;
}

Vector prox_path_point(const ProxRegularizer& p1, const Vector& x_k, const Vector& q, double lf,
                       const BallConstraint& ball, double lambda) {
  if (!(lambda >= 0.0)) throw ArgumentError("prox_path_point: lambda must be nonnegative");
  if (!(lf > 0.0)) throw ArgumentError("prox_path_point: L_f must be positive");
  const double lc = lambda * ball.curvature;
  const double t = lf + lc;
  const Vector z = (lf * x_k - q + lc * ball.center) / t;
  return p1.prox(z, 1.0 / t);
}

SubproblemResult solve_ball_prox(const ProxRegularizer& p1, const Vector& x_k, const Vector& q,
                                 double lf, const BallConstraint& ball,
                                 const BallProxOptions& options) {
  if (!(ball.radius > 0.0) || !std::isfinite(ball.radius)) {
    throw ArgumentError("solve_ball_prox: radius must be positive and finite");
  }
  if (!(ball.curvature > 0.0)) throw ArgumentError("solve_ball_prox: curvature must be positive");
  if (!(lf > 0.0)) throw ArgumentError("solve_ball_prox: L_f must be positive");
  const Index n = x_k.size();
  if (q.size() != n || ball.center.size() != n || p1.dim() != n) {
    throw ArgumentError("solve_ball_prox: dimension mismatch");
  }

  MultiplierPath path(p1, x_k, q, lf, ball);
  SubproblemResult out;
  double lambda = 0.0;

  if (path.phi(0.0) > 0.0) {
    if (options.exact_l1_path && p1.kind() == ProxRegularizer::Kind::L1) {
      lambda = exact_l1_root(path, out.iterations_rootfind);
    } else {
      double lo = 0.0;
      double hi = 1.0;
      int doublings = 0;
      while (path.phi(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        ++out.iterations_rootfind;
        if (++doublings > options.max_doublings) {
          std::ostringstream msg;
          msg << "solve_ball_prox: multiplier bracket exceeded " << options.max_doublings
              << " doublings (radius=" << ball.radius << ", curvature=" << ball.curvature
              << ", L_f=" << lf << ", phi(hi)=" << path.phi(hi) << ")";
          throw NumericError(msg.str());
        }
      }
      lambda = path.bisect(lo, hi, out.iterations_rootfind);
    }
  }

  out.x = path.point(lambda);
  out.lambda = lambda;
  const double dist = (out.x - ball.center).norm();
  out.complementarity = lambda * (dist - ball.radius);
  const Vector u = q + lf * (out.x - x_k) + lambda * ball.curvature * (out.x - ball.center);
  out.stationarity_residual = p1.subdiff_distance(out.x, u);
  return out;
}

}  // namespace smba
