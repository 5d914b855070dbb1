// Copyright 2026 The SOIRE Learner Authors. All rights reserved.
//
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

// Serial versus OpenMP batch kernels on a fixed workload.

#include <benchmark/benchmark.h>

#include <numeric>

#include "soire/datagen.hpp"
#include "soire/kernels.hpp"
#include "soire/train.hpp"

namespace {

using namespace soire;

struct Workload {
  Alphabet sigma = Alphabet("abc");
  Soire target = parse_infix("a?&b*&c?", sigma);
  Splits data = make_dataset(target, sigma, SplitSizes{128, 128, 1, 1, 1, 1}, 0.0, 7);
  Encoding theta = [this] {
    Rng rng(3);
    return initialize(sigma, required_bound(sigma), rng);
  }();
  std::vector<std::size_t> indices = [this] {
    std::vector<std::size_t> v(data.train.samples.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }();
};

const Workload& workload() {
  static const Workload w;
  return w;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

void BM_BatchGradient(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        batch_gradient(w.theta, w.data.train.samples, w.indices, leaky_options(), mode(state)));
}

void BM_Predict(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(predict(w.theta, w.data.train.samples, {}, mode(state)));
}

void BM_MatchAll(benchmark::State& state) {
  const Workload& w = workload();
  for (auto _ : state) benchmark::DoNotOptimize(match_all(w.target, w.data.train.samples, mode(state)));
}

}  // namespace

BENCHMARK(BM_BatchGradient)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Predict)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatchAll)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
