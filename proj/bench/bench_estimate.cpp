// Serial reference vs OpenMP kernel for the outage estimator.

#include "ocfield/estimate.hpp"
#include "ocfield/harness.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace ocfield;

namespace {

SystemParams bench_params(int L) {
  SystemParams p;
  p.lambda = 1e-3;
  p.alpha = 3.5;
  p.sigma2 = 1e-5;
  p.d_r = 10.0;
  p.L = L;
  p.beta = db_to_linear(3.0);
  return p;
}

const Receiver kReceivers[] = {Receiver::oc(), Receiver::mrc(), Receiver::zf(), Receiver::pzf(1)};

void BM_OutageSerial(benchmark::State& state) {
  const SystemParams p = bench_params(static_cast<int>(state.range(0)));
  RunOptions opt;
  opt.n_trials = 2000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_outage_serial(p, kReceivers, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.n_trials);
}

void BM_OutageParallel(benchmark::State& state) {
  const SystemParams p = bench_params(static_cast<int>(state.range(0)));
  RunOptions opt;
  opt.n_trials = 2000;
  opt.workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_outage(p, kReceivers, opt));
  }
  state.SetItemsProcessed(state.iterations() * opt.n_trials);
}

void BM_SingleTrial(benchmark::State& state) {
  const SystemParams p = bench_params(static_cast<int>(state.range(0)));
  long long t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trial_sinrs(p, kReceivers, kDefaultExpectedCount, 1, t++));
  }
}

}  // namespace

BENCHMARK(BM_OutageSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OutageParallel)
    ->ArgsProduct({{2, 4}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_SingleTrial)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
