#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "smba/solver.hpp"

namespace smba {

struct BenchOptions {
  Index n = 20;
  Index m = 10;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::vector<double> rbars{0.9};
  std::vector<double> sbars{3.0};
  double eps = 1e-5;
  int max_outer = 5000;
  std::filesystem::path out_dir = "bench_out";
  /// 0 picks the hardware concurrency; SMBA_WORKERS overrides either way.
  unsigned workers = 0;
};

struct BenchCell {
  std::uint64_t seed = 0;
  double rbar = 0.0;
  double sbar = 0.0;
  SolveStatus status = SolveStatus::NumericFailure;
  int iterations = 0;
  double objective = 0.0;
  double time_s = 0.0;
  std::string trace_file;  ///< relative to out_dir
  std::string message;
};

/// Solver configuration used for one (rbar, sbar) cell.
SolverConfig bench_config(double rbar, double sbar, double eps, int max_outer = 5000);

/// Runs every (seed, rbar, sbar) cell from x0 = 0, writes one trace per cell
/// and summary.csv into out_dir. Returned cells are sorted by (seed, rbar, sbar).
std::vector<BenchCell> run_bench(const BenchOptions& options);

std::string summary_to_csv(const std::vector<BenchCell>& cells);

/// Worker count after applying the SMBA_WORKERS override.
unsigned resolve_workers(unsigned requested);

}  // namespace smba
