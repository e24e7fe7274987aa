#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "smba/cone_smoothing.hpp"
#include "smba/linalg.hpp"
#include "smba/nsdp_instance.hpp"
#include "smba/problem_model.hpp"
#include "smba/solver.hpp"

namespace smba {

/// Problem file contents. All matrices are dense and stored row-major in the
/// JSON document:
///   family    "nsdp" | "orthant" | "pcone"
///   n, m, p   decision dimension, cone order, p-cone exponent (pcone only)
///   Q         n*n numbers;  b, c, d  n numbers each
///   A         n+1 arrays; each an m*m matrix (nsdp), m-vector (orthant)
///             or (m+1)-vector (pcone); G(x) = -A_0 - sum_i x_i A_i
///   l1_weight number or n numbers
struct ProblemDocument {
  std::string family = "nsdp";
  Index n = 0;
  Index m = 0;
  double p = 2.0;
  Matrix q;
  Vector b;
  Vector c;
  Vector d;
  std::vector<YVector> a;  ///< flattened Y elements (column-major for matrices)
  Vector l1_weight;
  std::uint64_t seed = 0;  ///< informational
};

ProblemDocument nsdp_document(const NsdpInstance& inst, double l1_weight = 1.0);
DCProblem build_problem(const ProblemDocument& doc, double alpha4 = kDefaultAlphaShift);

std::string problem_to_json(const ProblemDocument& doc);
/// Throws ParseError naming the offending line or field.
ProblemDocument problem_from_json(const std::string& text);

/// Solver configuration document; missing fields keep their defaults.
///   {tau1, tau2, L_min, L_max, eps, max_outer, max_inner_j, divergence_bound,
///    exact_l1_path,
///    warm_start: "bb"|"constant", constant_lf, constant_lg, initial_mu,
///    record_iterates,
///    schedule: {variant: "power"|"blockwise"|"ramped_log", r, n0, nu0,
///               rbar, sbar, K, rule: "constant"|"ramp"}}
std::string config_to_json(const SolverConfig& cfg);
SolverConfig config_from_json(const std::string& text);

std::string report_to_json(const SolveReport& report);

/// Fourteen columns, header always present, shortest round-trip decimals.
inline constexpr const char* kTraceHeader =
    "k,psi,g_mu,sigma_B,mu,lambda,Lf,Lg,i_k,j_k,term_step,term_slack,rho,elapsed_s";
std::string trace_to_csv(const std::vector<TraceRow>& trace);
std::vector<TraceRow> trace_from_csv(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace smba
