// Copyright 2026 The avgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#include <benchmark/benchmark.h>

#include <cstdint>

#include "avgsim/dynamics.hpp"
#include "avgsim/graph.hpp"
#include "avgsim/rng.hpp"
#include "avgsim/spectral.hpp"

namespace avgsim {
namespace {

// Raw edge sampling plus the averaging update.
void BM_AveragingStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ClusteredGraph g = GenerateClusteredRegular(n, 16, 1, 1);
  StateVector x = InitRandomState(n, 2);
  ActivationSchedule schedule(g, 3);
  for (auto _ : state) {
    const Edge e = schedule.Next();
    ApplyStep(x.data(), e.u, e.v, 0.5);
  }
  benchmark::DoNotOptimize(x.data());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_AveragingStep)->Arg(256)->Arg(4096)->Arg(65536);

// Full Run with a coarse observer.
void BM_Run(benchmark::State& state) {
  const ClusteredGraph g = GenerateClusteredRegular(1024, 32, 1, 1);
  RunOptions opts;
  opts.rounds = state.range(0);
  opts.observe_every = opts.rounds / 10;
  for (auto _ : state) {
    opts.seed += 1;
    benchmark::DoNotOptimize(Run(g, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Run)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ClusteredGraph g = GenerateClusteredRegular(n, 16, 1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeSpectrum(g));
}
BENCHMARK(BM_Spectrum)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SpectrumJacobi(benchmark::State& state) {
  const ClusteredGraph g = GenerateClusteredRegular(128, 16, 1, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeSpectrum(g, 1e-10, EigenBackend::kJacobi));
  }
}
BENCHMARK(BM_SpectrumJacobi)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenerateClusteredRegular(n, 32, 2, ++seed));
  }
}
BENCHMARK(BM_Generate)->Arg(1024)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_GenerateSbm(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(GenerateSbm({2000, 0.05, 0.005}, ++seed));
  }
}
BENCHMARK(BM_GenerateSbm)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace avgsim

BENCHMARK_MAIN();
