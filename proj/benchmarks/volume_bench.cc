// Copyright 2026 The Chaoscope Authors
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


#include <benchmark/benchmark.h>

#include <random>

#include "chaoscope/volume.h"

namespace chaoscope {
namespace {

GraphicalGame RandomGraphical(int players, int strategies) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  GraphicalGame h(std::vector<int>(players, strategies));
  for (int i = 0; i < players; ++i) {
    for (int k = 0; k < players; ++k) {
      if (i == k) continue;
      Matrix m(strategies, strategies);
      for (Eigen::Index a = 0; a < m.size(); ++a) m.data()[a] = unif(rng);
      h.SetEdge(i, k, m);
    }
  }
  return h;
}

void BM_NumericalJacobian(benchmark::State& state) {
  const int players = static_cast<int>(state.range(0));
  const GraphicalGame h = RandomGraphical(players, 4);
  const DualMap map(h, UpdateRule{Algorithm::kMwu, 0.01, Regularizer::kNone});
  const Vector p = Vector::Zero(map.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(NumericalJacobian(map, p));
  state.counters["d"] = map.dimension();
}
BENCHMARK(BM_NumericalJacobian)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_MwuStep(benchmark::State& state) {
  const GraphicalGame h = RandomGraphical(static_cast<int>(state.range(0)), 4);
  const DualMap map(h, UpdateRule{Algorithm::kMwu, 0.01, Regularizer::kNone});
  DualMapWorkspace ws;
  Vector p = Vector::Zero(map.dimension());
  Vector next(map.dimension());
  for (auto _ : state) {
    map.Step(p, p, next, ws);
    p.swap(next);
  }
}
BENCHMARK(BM_MwuStep)->Arg(2)->Arg(8)->Arg(32);

void BM_EnsembleDivergence(benchmark::State& state) {
  const BimatrixGame pennies(Matrix{{1, -1}, {-1, 1}},
                             Matrix{{-1, 1}, {1, -1}});
  DualPoint p0;
  p0.blocks = {Vector{{0.4, 0.0}}, Vector{{0.0, 0.0}}};
  const int members = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EnsembleDivergence(pennies, p0,
                           UpdateRule{Algorithm::kMwu, 0.01, Regularizer::kNone},
                           2000, RegionSpec{0.05}, 1e-6, members, 1, 0.0361)
            .fitted_gamma);
  }
}
BENCHMARK(BM_EnsembleDivergence)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace chaoscope

BENCHMARK_MAIN();
