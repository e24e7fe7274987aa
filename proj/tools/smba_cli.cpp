// smba: instance generation, single solves, schedule sweeps and self checks.
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smba/bench.hpp"
#include "smba/errors.hpp"
#include "smba/io.hpp"
#include "smba/nsdp_instance.hpp"
#include "smba/self_check.hpp"
#include "smba/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitNotConverged = 3;

int exit_code_for(smba::SolveStatus status) {
  switch (status) {
    case smba::SolveStatus::Converged: return kExitOk;
    case smba::SolveStatus::NumericFailure: return kExitNumeric;
    default: return kExitNotConverged;
  }
}

// "3..7" or "3"
std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) return {std::stoull(text)};
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw smba::ArgumentError("--seeds: empty range " + text);
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  } catch (const std::logic_error&) {
    throw smba::ArgumentError("--seeds: expected S or S1..S2, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw smba::ArgumentError(std::string(flag) + ": cannot parse '" + item + "'");
    }
  }
  if (out.empty()) throw smba::ArgumentError(std::string(flag) + ": empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothing moving balls approximation solver"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen-nsdp", "Generate a random l1-regularized NSDP instance");
  long long gen_n = 20, gen_m = 10;
  std::uint64_t gen_seed = 1;
  double gen_l1 = 1.0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "decision dimension")->check(CLI::PositiveNumber);
  gen->add_option("--m", gen_m, "matrix order")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--l1", gen_l1, "l1 weight")->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_out, "output problem file (stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "Solve a problem file");
  std::string problem_path, config_path, trace_path, report_path;
  std::optional<double> eps_override;
  solve->add_option("--problem", problem_path, "problem JSON")->required();
  solve->add_option("--config", config_path, "solver configuration JSON");
  solve->add_option("--trace", trace_path, "trace CSV output");
  solve->add_option("--report", report_path, "report JSON output (stdout if omitted)");
  solve->add_option("--eps", eps_override, "termination tolerance override");

  auto* bench = app.add_subcommand("bench", "Schedule sweep over generated NSDP instances");
  smba::BenchOptions bopt;
  std::string seeds_text = "1..5", rbar_text = "0.9", sbar_text = "3";
  std::string bench_out = "bench_out";
  bench->add_option("--n", bopt.n, "decision dimension")->check(CLI::PositiveNumber);
  bench->add_option("--m", bopt.m, "matrix order")->check(CLI::PositiveNumber);
  bench->add_option("--seeds", seeds_text, "seed range S1..S2");
  bench->add_option("--rbar", rbar_text, "comma separated rbar values");
  bench->add_option("--sbar", sbar_text, "comma separated sbar values");
  bench->add_option("--eps", bopt.eps, "termination tolerance");
  bench->add_option("--max-outer", bopt.max_outer, "outer iteration cap");
  bench->add_option("--workers", bopt.workers, "concurrent cells (SMBA_WORKERS overrides)");
  bench->add_option("--out", bench_out, "output directory");

  auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const smba::NsdpInstance inst = smba::generate_nsdp(gen_n, gen_m, gen_seed);
      const std::string text = smba::problem_to_json(smba::nsdp_document(inst, gen_l1)) + "\n";
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        smba::write_text_file(gen_out, text);
      }
      return kExitOk;
    }

    if (*solve) {
      const smba::ProblemDocument doc = smba::problem_from_json(smba::read_text_file(problem_path));
      smba::SolverConfig cfg;
      if (!config_path.empty()) cfg = smba::config_from_json(smba::read_text_file(config_path));
      if (eps_override) cfg.eps = *eps_override;
      smba::SmbaSolver solver(smba::build_problem(doc), cfg);
      const smba::SolveReport report = solver.run(smba::Vector::Zero(doc.n));
      // Outputs are written for every status so partial runs can be inspected.
      if (!trace_path.empty()) smba::write_text_file(trace_path, smba::trace_to_csv(report.trace));
      const std::string json = smba::report_to_json(report) + "\n";
      if (report_path.empty()) {
        std::cout << json;
      } else {
        smba::write_text_file(report_path, json);
      }
      if (report.status != smba::SolveStatus::Converged) {
        std::cerr << "smba: " << smba::to_string(report.status) << ": " << report.message << '\n';
      }
      return exit_code_for(report.status);
    }

    if (*bench) {
      bopt.seeds = parse_seed_range(seeds_text);
      bopt.rbars = parse_list(rbar_text, "--rbar");
      bopt.sbars = parse_list(sbar_text, "--sbar");
      bopt.out_dir = bench_out;
      const auto cells = smba::run_bench(bopt);
      std::cout << smba::summary_to_csv(cells);
      for (const auto& c : cells) {
        if (c.status != smba::SolveStatus::Converged) return kExitNotConverged;
      }
      return kExitOk;
    }

    if (*selftest) return smba::run_self_checks(std::cout) ? kExitOk : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "smba: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
