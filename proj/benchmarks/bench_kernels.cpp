#include <benchmark/benchmark.h>

#include "smba/ball_prox.hpp"
#include "smba/bench.hpp"
#include "smba/cone_smoothing.hpp"
#include "smba/nsdp_instance.hpp"
#include "smba/solver.hpp"

namespace {

using smba::Index;

smba::YVector random_symmetric_flat(Index m, std::uint64_t seed) {
  smba::CounterRng rng(seed);
  smba::Matrix a(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) a(i, j) = rng.normal();
  }
  const smba::Matrix s = 0.5 * (a + a.transpose());
  return Eigen::Map<const smba::YVector>(s.data(), m * m);
}

void BM_MsaEvaluatePsd(benchmark::State& state) {
  const Index m = state.range(0);
  const auto cone = smba::ConeBaseOracle::neg_semidef(m);
  const smba::YVector y = random_symmetric_flat(m, 7);
  for (auto _ : state) benchmark::DoNotOptimize(cone.msa_evaluate(y, 0.05));
}
BENCHMARK(BM_MsaEvaluatePsd)->Arg(10)->Arg(40)->Arg(100);

void BM_SolveBallProxL1(benchmark::State& state) {
  const Index n = state.range(0);
  const bool exact = state.range(1) != 0;
  smba::CounterRng rng(11);
  smba::Vector xk(n), q(n), grad(n);
  for (Index i = 0; i < n; ++i) {
    xk(i) = rng.normal();
    q(i) = 5.0 * rng.normal();
    grad(i) = rng.normal();
  }
  const auto p1 = smba::ProxRegularizer::l1(n, 1.0);
  const smba::BallConstraint ball = smba::build_ball(xk, grad, -0.01, 10.0, 0.05);
  const smba::BallProxOptions opts{exact, 200};
  for (auto _ : state) benchmark::DoNotOptimize(smba::solve_ball_prox(p1, xk, q, 1.0, ball, opts));
}
BENCHMARK(BM_SolveBallProxL1)->Args({20, 0})->Args({20, 1})->Args({500, 0})->Args({500, 1});

void BM_SolveNsdp(benchmark::State& state) {
  const auto inst = smba::generate_nsdp(20, 10, static_cast<std::uint64_t>(state.range(0)));
  const smba::SmbaSolver solver(smba::make_nsdp_problem(inst), smba::bench_config(0.9, 3.0, 1e-5, 5000));
  const smba::Vector x0 = smba::Vector::Zero(inst.n);
  long long iters = 0;
  for (auto _ : state) {
    const smba::SolveReport rep = solver.run(x0);
    iters += rep.iterations;
    benchmark::DoNotOptimize(rep.psi);
  }
  state.counters["outer_iters"] = benchmark::Counter(static_cast<double>(iters), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SolveNsdp)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
