#include "smba/self_check.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "smba/ball_prox.hpp"
#include "smba/cone_smoothing.hpp"
#include "smba/mu_schedule.hpp"
#include "smba/nsdp_instance.hpp"
#include "smba/problem_model.hpp"
#include "smba/solver.hpp"

namespace smba {
namespace {

YVector random_y(CounterRng& rng, const ConeBaseOracle& cone, double scale) {
  YVector y(cone.dim());
  for (Index i = 0; i < y.size(); ++i) y(i) = scale * rng.normal();
  if (cone.family() == ConeFamily::NegSemidef) {
    const Index m = cone.order();
    Eigen::Map<Matrix> mat(y.data(), m, m);
    const Matrix sym = 0.5 * (mat + mat.transpose());
    mat = sym;
  }
  return y;
}

std::string check_sandwich(CounterRng& rng) {
  const ConeBaseOracle cones[] = {ConeBaseOracle::nonpos_orthant(5), ConeBaseOracle::neg_semidef(4),
                                  ConeBaseOracle::p_cone(4)};
  for (const ConeBaseOracle& cone : cones) {
    for (int t = 0; t < 100; ++t) {
      const YVector y = random_y(rng, cone, 3.0);
      const double mu0 = std::exp(-6.0 * rng.uniform_open());
      const double mu1 = mu0 * rng.uniform_open();
      const double s = cone.support_value(y);
      const double h0 = cone.msa_value(y, mu0);
      const double h1 = cone.msa_value(y, mu1);
      const double tol = 1e-12 * (1.0 + std::abs(s));
      if (!(s <= h0 + tol) || !(h0 <= s + cone.cert().alpha3 * mu0 + tol) ||
          !(h1 <= h0 - cone.cert().alpha4 * (mu0 - mu1) + tol)) {
        return "sandwich violated for " + to_string(cone.family());
      }
    }
  }
  return {};
}

std::string check_gradients(CounterRng& rng) {
  const ConeBaseOracle cones[] = {ConeBaseOracle::nonpos_orthant(5), ConeBaseOracle::neg_semidef(3),
                                  ConeBaseOracle::p_cone(4)};
  for (const ConeBaseOracle& cone : cones) {
    for (int t = 0; t < 20; ++t) {
      const YVector y = random_y(rng, cone, 1.0);
      const double mu = 0.1;
      const YVector grad = cone.msa_gradient(y, mu);
      const YVector dir = random_y(rng, cone, 1.0);
      const double h = 1e-6;
      const double fd = (cone.msa_value(y + h * dir, mu) - cone.msa_value(y - h * dir, mu)) / (2 * h);
      const double an = grad.dot(dir);
      if (std::abs(fd - an) > 1e-6 * std::max(1.0, std::abs(an))) {
        return "directional derivative mismatch for " + to_string(cone.family());
      }
    }
  }
  return {};
}

std::string check_ball_prox(CounterRng& rng) {
  for (int t = 0; t < 50; ++t) {
    const Index n = 4;
    Vector xk(n), q(n), w(n);
    for (Index i = 0; i < n; ++i) {
      xk(i) = rng.normal();
      q(i) = 3.0 * rng.normal();
      w(i) = rng.normal();
    }
    const double lf = 0.5 + rng.uniform_open();
    BallConstraint ball{w, 0.2 + rng.uniform_open(), 1.0};
    const SubproblemResult res = solve_ball_prox(ProxRegularizer::zero(n), xk, q, lf, ball);
    const Vector z = xk - q / lf;
    const Vector d = z - w;
    const Vector expect = d.norm() <= ball.radius ? z : Vector(w + ball.radius * d / d.norm());
    if ((res.x - expect).norm() > 1e-10 * (1.0 + expect.norm())) return "ball projection mismatch";
  }
  return {};
}

std::string check_schedule() {
  for (double rbar : {0.33, 0.6, 0.9}) {
    const ScheduleSpec spec = ScheduleSpec::blockwise(1.0, 300, 1.0 / 3001.0, rbar);
    for (std::int64_t k : {100, 1000, 10000}) {
      const double bound = std::pow(static_cast<double>(k), 1.0 - rbar) / std::pow(2.0, 2.0 * rbar + 1.0);
      if (!(partial_sum(spec, k) >= bound)) return "partial sum bound violated";
    }
  }
  return {};
}

std::string check_toy_solve() {
  Vector c(2), upper(2);
  c << 2.0, -1.0;
  upper << 1.0, 1.0;
  auto f = std::make_shared<PolynomialObjective>(
      PolynomialObjective::quadratic(Matrix::Identity(2, 2), -c));
  DCProblem prob(f, ProxRegularizer::zero(2), std::make_shared<ZeroConcaveTerm>(2),
                 std::make_shared<AffineConstraint>(AffineConstraint::upper_bound(upper)),
                 ConeBaseOracle::nonpos_orthant(2));
  SolverConfig cfg;
  cfg.schedule = ScheduleSpec::power(1.0, 0.9);
  const SolveReport rep = SmbaSolver(std::move(prob), cfg).run(Vector::Zero(2));
  Vector expect(2);
  expect << 1.0, -1.0;
  if (rep.status != SolveStatus::Converged) return "toy solve status " + to_string(rep.status);
  if ((rep.x - expect).norm() > 1e-5) return "toy solve missed (1, -1)";
  return {};
}

std::string check_nsdp_generator() {
  const NsdpInstance a = generate_nsdp(6, 4, 11);
  const NsdpInstance b = generate_nsdp(6, 4, 11);
  if (a.q != b.q || a.b != b.b || a.a[0] != b.a[0]) return "instance regeneration differs";
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.a[0]);
  if (es.eigenvalues().minCoeff() < 10.0 - 1e-8 || es.eigenvalues().maxCoeff() > 100.0 + 1e-8) {
    return "A_0 spectrum outside [10, 100]";
  }
  return {};
}

}  // namespace

bool run_self_checks(std::ostream& out) {
  CounterRng rng(20240607);
  const std::pair<const char*, std::function<std::string()>> checks[] = {
      {"smoothing sandwich", [&] { return check_sandwich(rng); }},
      {"smoothing gradients", [&] { return check_gradients(rng); }},
      {"ball subproblem", [&] { return check_ball_prox(rng); }},
      {"schedule window bound", check_schedule},
      {"nsdp generator", check_nsdp_generator},
      {"toy solve", check_toy_solve},
  };
  bool ok = true;
  for (const auto& [name, fn] : checks) {
    std::string err;
    try {
      err = fn();
    } catch (const std::exception& e) {
      err = std::string("exception: ") + e.what();
    }
    if (err.empty()) {
      out << "ok    " << name << '\n';
    } else {
      out << "FAIL  " << name << ": " << err << '\n';
      ok = false;
    }
  }
  return ok;
}

}  // namespace smba
