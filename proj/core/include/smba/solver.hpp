#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smba/ball_prox.hpp"
#include "smba/diagnostics.hpp"
#include "smba/linalg.hpp"
#include "smba/mu_schedule.hpp"
#include "smba/problem_model.hpp"

namespace smba {

enum class WarmStart {
  BarzilaiBorwein,  ///< BB curvature estimates, halving fallback
  Constant,         ///< fixed (constant_lf, constant_lg) every iteration
};

struct SolverConfig {
  double tau1 = 0.01;
  double tau2 = 0.01;
  double l_min = 1e-8;
  double l_max = 1e8;
  double eps = 1e-7;
  int max_outer = 5000;
  int max_inner_j = 40;
  /// mu0 of the schedule is replaced by the initial smoothing parameter.
  ScheduleSpec schedule = ScheduleSpec::ramped_log(1.0, 0.9, 3.0);
  /// Skip the mu0 search and start from this value.
  std::optional<double> initial_mu;
  bool exact_l1_path = false;
  WarmStart warm_start = WarmStart::BarzilaiBorwein;
  double constant_lf = 1.0;
  double constant_lg = 1.0;
  /// Keep every accepted iterate in the report.
  bool record_iterates = false;
  /// ||x^k|| beyond this is reported as NumericFailure.
  double divergence_bound = 1e8;

  void validate() const;
};

/// Solver state at the start of outer iteration k.
struct IterateState {
  Vector x;
  int k = 0;
  double mu = 0.0;
  double lambda = 0.0;  ///< lambda_k from the previous accepted step
  double lf = 1.0;      ///< accepted L_f^{k-1}
  double lg = 1.0;      ///< accepted L_g^{k-1}
  double lf0 = 1.0;     ///< initial L_f^{k-1,0}
  double lg0 = 1.0;     ///< initial L_g^{k-1,0}
  double psi = 0.0;
  double gmu = 0.0;      ///< g_{mu_k}(x^k)
  Vector grad_f;         ///< grad f(x^k)
  Vector grad_gmu;       ///< grad g_{mu_k}(x^k)
  Vector x_prev;         ///< x^{k-1} (empty at k = 0)
  Vector grad_f_prev;    ///< grad f(x^{k-1})
  Vector grad_gmu_prev;  ///< grad g_{mu_{k-1}}(x^{k-1})
  Vector xi_prev;        ///< subgradient of P2 used at iteration k-1
};

/// One row per accepted step x^k -> x^{k+1}.
struct TraceRow {
  int k = 0;
  double psi = 0.0;      ///< psi(x^{k+1})
  double g_mu = 0.0;     ///< g_{mu_k}(x^{k+1})
  double sigma_b = 0.0;  ///< sigma_B(G(x^{k+1}))
  double mu = 0.0;       ///< mu_k
  double lambda = 0.0;   ///< lambda_{k+1}
  double lf = 0.0;
  double lg = 0.0;
  int i_k = 0;
  int j_k = 0;
  double term_step = 0.0;
  double term_slack = 0.0;
  double rho = 0.0;
  double elapsed_s = 0.0;
};

enum class SolveStatus { Converged, MaxOuter, InnerCapExceeded, NumericFailure };
std::string to_string(SolveStatus status);

struct SolveReport {
  SolveStatus status = SolveStatus::NumericFailure;
  int iterations = 0;
  std::vector<TraceRow> trace;
  KKTCertificate final_kkt;
  TerminationMetrics final_metrics;
  Vector x;
  double psi = 0.0;
  double mu0 = 0.0;
  double wall_time = 0.0;
  long long inner_trials = 0;
  /// Smoothing parameters clamped at the floor during this run.
  long long mu_clamps = 0;
  std::string message;
  /// x^0, x^1, ... when SolverConfig::record_iterates is set.
  std::vector<Vector> iterates;
};

/// Result of the (i, j) doubling linesearch of one outer iteration.
struct InnerStep {
  bool accepted = false;
  Vector x;
  double lambda = 0.0;
  double lf = 0.0;
  double lg = 0.0;
  int i = 0;
  int j = 0;
  int trials = 0;
  double psi = 0.0;
  DCProblem::CompositeEval g_eval;  ///< at x, smoothing mu_k
  std::string diagnostic;           ///< set when the j cap is exceeded
};

/// Smoothing moving balls approximation for psi = f + P1 - P2 s.t. G(x) in K.
class SmbaSolver {
 public:
  SmbaSolver(DCProblem problem, SolverConfig config);

  const SolverConfig& config() const { return config_; }

  /// mu0 = 0.9 * 2^-l for the first l >= 0 with g_mu0(x0) <= 0.1 g_B(x0).
  double find_initial_mu(const Vector& x0) const;

  /// Initial (L_f^{k,0}, L_g^{k,0}) in [l_min, l_max].
  std::pair<double, double> bb_init(const IterateState& state) const;

  InnerStep inner_loop_step(const IterateState& state, const Vector& xi, double lf0,
                            double lg0) const;

  SolveReport run(const Vector& x0) const;

 private:
  DCProblem problem_;
  SolverConfig config_;
};

}  // namespace smba
