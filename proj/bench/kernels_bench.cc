// Copyright 2026 The carshare Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference kernels against their OpenMP counterparts.

#include <random>

#include <benchmark/benchmark.h>

#include "carshare/metric.h"
#include "carshare/oracle.h"
#include "carshare/paircosts.h"

namespace carshare {
namespace {

EdgeGraph random_graph(int size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> w(1, 100);
  EdgeGraph g{size, {}, 1000};
  for (int x = 0; x < size; ++x)
    for (int y = x + 1; y < size; ++y)
      if (rng() % 4 == 0) g.edges.push_back({x, y, w(rng)});
  return g;
}

template <auto Kernel>
void BM_Closure(benchmark::State& state) {
  const EdgeGraph g = random_graph(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g, nullptr));
}
BENCHMARK(BM_Closure<serial::metric_closure>)->Name("closure/serial")->Arg(100)->Arg(300);
BENCHMARK(BM_Closure<metric_closure>)->Name("closure/parallel")->Arg(100)->Arg(300);

template <auto Kernel>
void BM_Validate(benchmark::State& state) {
  const DistanceMatrix m = metric_closure(random_graph(static_cast<int>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(m));
}
BENCHMARK(BM_Validate<serial::validate_metric>)->Name("validate/serial")->Arg(100)->Arg(300);
BENCHMARK(BM_Validate<validate_metric>)->Name("validate/parallel")->Arg(100)->Arg(300);

template <auto Kernel>
void BM_CostTables(benchmark::State& state) {
  const Instance inst = random_instance(static_cast<int>(state.range(0)), 2, InstanceMode::kGeneral, 3);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(inst));
}
BENCHMARK(BM_CostTables<serial::build_cost_tables>)->Name("cost_tables/serial")->Arg(50)->Arg(200);
BENCHMARK(BM_CostTables<build_cost_tables>)->Name("cost_tables/parallel")->Arg(50)->Arg(200);

Allocation oracle_serial(const Instance& inst) { return serial::brute_force_opt(inst, Objective::kLatency); }
Allocation oracle_parallel(const Instance& inst) { return brute_force_opt(inst, Objective::kLatency); }

template <auto Kernel>
void BM_Oracle(benchmark::State& state) {
  const Instance inst = random_instance(4, 2, InstanceMode::kGeneral, 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(inst));
}
BENCHMARK(BM_Oracle<oracle_serial>)->Name("oracle/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle<oracle_parallel>)->Name("oracle/parallel")->Unit(benchmark::kMillisecond);

template <auto Kernel>
void BM_Sweep(benchmark::State& state) {
  SweepOptions o;
  o.count = static_cast<int>(state.range(0));
  o.seed = 5;
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(o));
}
BENCHMARK(BM_Sweep<serial::ratio_sweep>)->Name("sweep/serial")->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep<ratio_sweep>)->Name("sweep/parallel")->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace carshare

BENCHMARK_MAIN();
