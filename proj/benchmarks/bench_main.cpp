// Copyright 2026 The aotoc Authors
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

#include "aotoc/aotoc.hpp"
#include "aotoc/models.hpp"
#include "aotoc/validation.hpp"

#include <benchmark/benchmark.h>

namespace aotoc {
namespace {

void BM_DenseMatexp(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  Rng rng(1);
  Matrix h = Matrix::Random(d, d);
  h = (h + h.adjoint()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(matexp(cplx(0.0, 1.0) * h, 0.7));
}
BENCHMARK(BM_DenseMatexp)->Arg(16)->Arg(64)->Arg(256);

void BM_SparseExpAction(benchmark::State& state) {
  SpinChainSpec spec;
  spec.sites = static_cast<int>(state.range(0));
  spec.alpha = 0.05;
  spec.gamma = 0.05;
  const LindbladSpec model = pxp_model(spec);
  const SparseMatrix gen = lindblad_superop_sparse(model);
  const Vector v = vec(Matrix::Identity(model.dim(), model.dim()) * 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(matexp_apply(gen, 0.1, v));
}
BENCHMARK(BM_SparseExpAction)->Arg(8)->Arg(10);

void BM_CorrelatorRoute(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(7);
  const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
  const ChannelHandle e = random_unital_channel(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(aotoc(a, e));
}
BENCHMARK(BM_CorrelatorRoute)->Arg(4)->Arg(8)->Arg(16);

void BM_ReplicaRoute(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(7);
  const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
  const ChannelHandle e = random_unital_channel(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(aotoc_replica(a, e));
}
BENCHMARK(BM_ReplicaRoute)->Arg(4)->Arg(8);

void BM_PxpSeries(benchmark::State& state) {
  SpinChainSpec spec;
  spec.sites = static_cast<int>(state.range(0));
  spec.alpha = 0.05;
  spec.gamma = 0.05;
  const LindbladSpec model = pxp_model(spec);
  const AlgebraHandle a = projector_algebra(product_state(spec.sites, ProductPattern::neel));
  const std::vector<double> times = uniform_grid(0.0, 2.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(run_series(model, a, times));
}
BENCHMARK(BM_PxpSeries)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace aotoc

BENCHMARK_MAIN();
