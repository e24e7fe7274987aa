#include "smba/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <tuple>

#include "smba/errors.hpp"
#include "smba/io.hpp"
#include "smba/nsdp_instance.hpp"

namespace smba {
namespace {

std::string cell_trace_name(std::uint64_t seed, double rbar, double sbar) {
  return "trace_seed" + std::to_string(seed) + "_rbar" + format_double(rbar) + "_sbar" +
         format_double(sbar) + ".csv";
}

}  // namespace

SolverConfig bench_config(double rbar, double sbar, double eps, int max_outer) {
  SolverConfig cfg;
  cfg.eps = eps;
  cfg.max_outer = max_outer;
  cfg.schedule = ScheduleSpec::ramped_log(1.0, rbar, sbar);
  return cfg;
}

unsigned resolve_workers(unsigned requested) {
  if (const char* env = std::getenv("SMBA_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchCell> run_bench(const BenchOptions& options) {
  if (options.seeds.empty() || options.rbars.empty() || options.sbars.empty()) {
    throw ArgumentError("bench: seeds, rbar and sbar lists must be nonempty");
  }
  std::filesystem::create_directories(options.out_dir);

  std::vector<BenchCell> cells;
  for (std::uint64_t seed : options.seeds) {
    for (double rbar : options.rbars) {
      for (double sbar : options.sbars) {
        BenchCell cell;
        cell.seed = seed;
        cell.rbar = rbar;
        cell.sbar = sbar;
        cell.trace_file = cell_trace_name(seed, rbar, sbar);
        cells.push_back(cell);
      }
    }
  }
  // Validate every schedule before spawning work.
  for (const BenchCell& cell : cells) bench_config(cell.rbar, cell.sbar, options.eps, options.max_outer).validate();

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      BenchCell& cell = cells[idx];
      try {
        const NsdpInstance inst = generate_nsdp(options.n, options.m, cell.seed);
        SmbaSolver solver(make_nsdp_problem(inst),
                          bench_config(cell.rbar, cell.sbar, options.eps, options.max_outer));
        const SolveReport report = solver.run(Vector::Zero(options.n));
        cell.status = report.status;
        cell.iterations = report.iterations;
        cell.objective = report.psi;
        cell.time_s = report.wall_time;
        cell.message = report.message;
        write_text_file(options.out_dir / cell.trace_file, trace_to_csv(report.trace));
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const unsigned count =
      std::min<unsigned>(resolve_workers(options.workers), static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::sort(cells.begin(), cells.end(), [](const BenchCell& a, const BenchCell& b) {
    return std::tie(a.seed, a.rbar, a.sbar) < std::tie(b.seed, b.rbar, b.sbar);
  });
  write_text_file(options.out_dir / "summary.csv", summary_to_csv(cells));
  return cells;
}

std::string summary_to_csv(const std::vector<BenchCell>& cells) {
  std::string out = "seed,rbar,sbar,status,iterations,objective,time_s,trace\n";
  for (const BenchCell& c : cells) {
    out += std::to_string(c.seed) + ',' + format_double(c.rbar) + ',' + format_double(c.sbar) + ',' +
           to_string(c.status) + ',' + std::to_string(c.iterations) + ',' +
           format_double(c.objective) + ',' + format_double(c.time_s) + ',' + c.trace_file + '\n';
  }
  return out;
}

}  // namespace smba
