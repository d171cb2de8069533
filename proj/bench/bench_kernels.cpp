/*
 * Copyright (C) 2026 The tarrylab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial reference loops against the OpenMP kernels on the sample-parallel
// operations. Run with OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include "tarry/exponent.hpp"
#include "tarry/geometry.hpp"
#include "tarry/matanalysis.hpp"
#include "tarry/momentmap.hpp"
#include "tarry/oscquad.hpp"

namespace {

using tarry::Exec;

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::serial : Exec::parallel;
}

void BM_DegeneracyScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(tarry::degeneracy_scan(20000, 1e-12, 1, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_ShellHistogram(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(tarry::shell_histogram(20000, 1, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 20000);
}

void BM_SlabSphere(benchmark::State& state) {
  const tarry::ConstraintSystem sys = tarry::squared_norm_system(3, -2.0, 2.0);
  const double u[] = {1.0};
  tarry::SlabConfig cfg;
  cfg.n_samples = 200000;
  cfg.h = 0.02;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tarry::slab_volume(sys, u, cfg, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 200000);
}

void BM_TailShellTarry(benchmark::State& state) {
  const tarry::PhaseFamily fam = tarry::phase_family("tarry");
  const tarry::QuadratureConfig quad;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tarry::tail_shell(fam, 12, 4.0, 200, 1, quad, exec_of(state)));
  }
  state.SetItemsProcessed(state.iterations() * 200);
}

}  // namespace

BENCHMARK(BM_DegeneracyScan)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShellHistogram)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SlabSphere)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TailShellTarry)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
