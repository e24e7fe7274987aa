#include "smba/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "smba/errors.hpp"

namespace smba {
namespace {

constexpr int kMaxInitialMuHalvings = 200;

// Descent slack on psi; the acceptance test already enforces the inequality,
// this only absorbs rounding in the recomputation.
constexpr double kDescentSlack = 1e-12;

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "Converged";
    case SolveStatus::MaxOuter: return "MaxOuter";
    case SolveStatus::InnerCapExceeded: return "InnerCapExceeded";
    case SolveStatus::NumericFailure: return "NumericFailure";
  }
  return "Unknown";
}

void SolverConfig::validate() const {
  if (!(tau1 > 0.0) || !(tau2 > 0.0)) throw ArgumentError("config: tau1 and tau2 must be positive");
  if (!(l_min > 0.0) || !(l_max >= l_min)) {
    throw ArgumentError("config: need 0 < L_min <= L_max");
  }
  if (!(eps > 0.0)) throw ArgumentError("config: eps must be positive");
  if (max_outer < 0) throw ArgumentError("config: max_outer must be nonnegative");
  if (max_inner_j < 0) throw ArgumentError("config: max_inner_j must be nonnegative");
  if (!(divergence_bound > 0.0)) throw ArgumentError("config: divergence_bound must be positive");
  if (initial_mu && !(*initial_mu > 0.0)) throw ArgumentError("config: initial_mu must be positive");
  if (!(constant_lf > 0.0) || !(constant_lg > 0.0)) {
    throw ArgumentError("config: constant L values must be positive");
  }
  schedule.validate();
}

SmbaSolver::SmbaSolver(DCProblem problem, SolverConfig config)
    : problem_(std::move(problem)), config_(std::move(config)) {
  config_.validate();
}

double SmbaSolver::find_initial_mu(const Vector& x0) const {
  const double gb = problem_.support_value(x0);
  if (!(gb < 0.0)) {
    throw InfeasibleError("initial point is not strictly feasible (sigma_B(G(x0)) = " +
                          std::to_string(gb) + ")");
  }
  double mu = 0.9;
  for (int l = 0; l <= kMaxInitialMuHalvings; ++l) {
    if (problem_.composite_value(x0, mu) <= 0.1 * gb) return mu;
    mu *= 0.5;
  }
  throw NumericError("find_initial_mu: no mu0 = 0.9 * 2^-l with l <= 200 satisfies the test");
}

std::pair<double, double> SmbaSolver::bb_init(const IterateState& state) const {
  const SolverConfig& c = config_;
  if (c.warm_start == WarmStart::Constant) {
    return {std::clamp(c.constant_lf, c.l_min, c.l_max), std::clamp(c.constant_lg, c.l_min, c.l_max)};
  }
  if (state.k == 0 || state.x_prev.size() == 0) return {1.0, 1.0};

  const Vector dx = state.x - state.x_prev;
  const Vector df = state.grad_f - state.grad_f_prev;
  const Vector dg = state.mu * (state.grad_gmu - state.grad_gmu_prev);

  double lf0 = std::max(c.l_min, 0.5 * state.lf0);
  const double dx_norm = dx.norm();
  if (dx_norm > 1e-12) {
    const double bb = std::abs(dx.dot(df)) / (dx_norm * dx_norm);
    if (bb >= c.l_min && bb <= c.l_max) lf0 = bb;
  }

  double lg0 = std::max(c.l_min, 0.5 * state.lg0);
  const double cross = std::abs(dx.dot(dg));
  if (std::sqrt(cross) > 1e-12) {
    const double bb = dg.squaredNorm() / cross;
    if (bb >= c.l_min && bb <= c.l_max) lg0 = bb;
  }
  return {lf0, lg0};
}

InnerStep SmbaSolver::inner_loop_step(const IterateState& state, const Vector& xi, double lf0,
                                      double lg0) const {
  const SolverConfig& c = config_;
  const Vector q = state.grad_f - xi;
  const BallProxOptions prox_options{c.exact_l1_path, 200};

  InnerStep step;
  int i = 0;
  int j = 0;
  while (true) {
    if (j > c.max_inner_j) {
      std::ostringstream msg;
      msg << "linesearch exceeded j = " << c.max_inner_j << " at k = " << state.k
          << " (mu_k = " << state.mu << ", L_g^{k,j} = " << std::ldexp(lg0, j)
          << ", g_mu(x^k) = " << state.gmu << ", last trial g_mu = " << step.g_eval.value << ")";
      step.accepted = false;
      step.diagnostic = msg.str();
      return step;
    }
    const double lf = std::ldexp(lf0, i);
    const double lg = std::ldexp(lg0, j);
    const BallConstraint ball = build_ball(state.x, state.grad_gmu, state.gmu, lg, state.mu);
    SubproblemResult sub = solve_ball_prox(problem_.p1(), state.x, q, lf, ball, prox_options);
    ++step.trials;
    step.g_eval = problem_.composite_evaluate(sub.x, state.mu, true);
    step.i = i;
    step.j = j;
    if (step.g_eval.value > 0.0) {
      ++j;
      continue;
    }
    const double psi_trial = problem_.objective_value(sub.x);
    const double coef = (c.tau1 * state.mu + c.tau2 * sub.lambda) / (2.0 * state.mu);
    if (psi_trial <= state.psi - coef * (sub.x - state.x).squaredNorm()) {
      step.accepted = true;
      step.x = std::move(sub.x);
      step.lambda = sub.lambda;
      step.lf = lf;
      step.lg = lg;
      step.psi = psi_trial;
      return step;
    }
    ++i;
    ++j;
  }
}

SolveReport SmbaSolver::run(const Vector& x0) const {
  const auto start = std::chrono::steady_clock::now();
  const SolverConfig& c = config_;
  if (x0.size() != problem_.dim_x()) throw ArgumentError("run: x0 has the wrong dimension");
  const std::uint64_t clamps_before = mu_clamp_count();

  SolveReport report;
  ScheduleSpec schedule = c.schedule;
  double mu0 = 0.0;
  if (c.initial_mu) {
    const double gb = problem_.support_value(x0);
    if (!(gb < 0.0)) {
      throw InfeasibleError("initial point is not strictly feasible (sigma_B(G(x0)) = " +
                            std::to_string(gb) + ")");
    }
    mu0 = *c.initial_mu;
    if (!(problem_.composite_value(x0, mu0) < 0.0)) {
      throw InfeasibleError("supplied initial_mu does not give g_mu0(x0) < 0");
    }
  } else {
    mu0 = find_initial_mu(x0);
  }
  schedule.mu0 = mu0;
  report.mu0 = mu0;

  auto mu_for = [&](int k) { return std::max(mu_at(schedule, k), kMuFloor); };

  IterateState state;
  state.x = x0;
  state.k = 0;
  state.mu = mu0;
  state.psi = problem_.objective_value(x0);
  {
    auto ev = problem_.composite_evaluate(x0, mu0);
    state.gmu = ev.value;
    state.grad_gmu = std::move(ev.gradient);
  }
  state.grad_f = problem_.objective_f_gradient(x0);
  if (c.record_iterates) report.iterates.push_back(x0);

  auto finish = [&](SolveStatus status, std::string message) {
    report.status = status;
    report.message = std::move(message);
    report.x = state.x;
    report.psi = state.psi;
    report.iterations = state.k;
    report.mu_clamps = static_cast<long long>(mu_clamp_count() - clamps_before);
    report.wall_time = elapsed_since(start);
    return report;
  };

  for (int k = 0; k < c.max_outer; ++k) {
    state.k = k;
    if (!(state.gmu < 0.0)) {
      return finish(SolveStatus::NumericFailure,
                    "strict feasibility lost: g_mu(x^k) = " + std::to_string(state.gmu) +
                        " at k = " + std::to_string(k));
    }

    // Step 2.
    const Vector xi = problem_.p2().subgradient(state.x);
    const auto [lf0, lg0] = bb_init(state);

    // Steps 3-4.
    InnerStep step;
    try {
      step = inner_loop_step(state, xi, lf0, lg0);
    } catch (const NumericError& e) {
      return finish(SolveStatus::NumericFailure, e.what());
    }
    report.inner_trials += step.trials;
    if (!step.accepted) return finish(SolveStatus::InnerCapExceeded, step.diagnostic);

    const double coef = (c.tau1 * state.mu + c.tau2 * step.lambda) / (2.0 * state.mu);
    const double decrease = coef * (step.x - state.x).squaredNorm();
    if (step.psi + decrease > state.psi + kDescentSlack * (1.0 + std::abs(state.psi))) {
      return finish(SolveStatus::NumericFailure, "descent ledger violated at k = " + std::to_string(k));
    }
    if (step.g_eval.sigma > 0.0) {
      return finish(SolveStatus::NumericFailure,
                    "accepted iterate left the cone at k = " + std::to_string(k));
    }

    // v^{k+1}, certificate and termination quantities.
    const KKTCertificate cert = kkt_from_parts(problem_, step.x, state.x, xi, step.g_eval.g_of_x,
                                               step.g_eval.msa_grad, step.lambda);
    const TerminationMetrics metrics = termination_metrics(
        c.tau1, c.tau2, state.mu, step.x, state.x, step.lambda, step.g_eval.g_of_x, cert.v);

    TraceRow row;
    row.k = k;
    row.psi = step.psi;
    row.g_mu = step.g_eval.value;
    row.sigma_b = step.g_eval.sigma;
    row.mu = state.mu;
    row.lambda = step.lambda;
    row.lf = step.lf;
    row.lg = step.lg;
    row.i_k = step.i;
    row.j_k = step.j;
    row.term_step = metrics.step;
    row.term_slack = metrics.slack;
    row.rho = cert.rho;
    row.elapsed_s = elapsed_since(start);
    report.trace.push_back(row);
    report.final_kkt = cert;
    report.final_metrics = metrics;

    // Step 5.
    state.x_prev = std::move(state.x);
    state.grad_f_prev = std::move(state.grad_f);
    state.grad_gmu_prev = std::move(state.grad_gmu);
    state.xi_prev = xi;
    state.x = std::move(step.x);
    state.lambda = step.lambda;
    state.lf = step.lf;
    state.lg = step.lg;
    state.lf0 = lf0;
    state.lg0 = lg0;
    state.psi = step.psi;
    state.k = k + 1;
    state.mu = mu_for(k + 1);
    state.grad_f = problem_.objective_f_gradient(state.x);
    {
      auto ev = problem_.composite_evaluate(state.x, state.mu);
      state.gmu = ev.value;
      state.grad_gmu = std::move(ev.gradient);
    }
    if (c.record_iterates) report.iterates.push_back(state.x);

    if (!state.x.allFinite() || state.x.norm() > c.divergence_bound) {
      return finish(SolveStatus::NumericFailure,
                    "iterate norm exceeded " + std::to_string(c.divergence_bound) +
                        " (level set appears unbounded)");
    }
    if (metrics.step <= c.eps && metrics.slack <= c.eps) {
      return finish(SolveStatus::Converged, "");
    }
  }
  return finish(SolveStatus::MaxOuter, "reached max_outer = " + std::to_string(c.max_outer));
}

}  // namespace smba
