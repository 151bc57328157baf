/*
 * Copyright 2026 The mcenoc Authors
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

#include <numeric>

#include <benchmark/benchmark.h>

#include "mcenoc/netsim.hpp"
#include "mcenoc/propcheck.hpp"
#include "mcenoc/rng.hpp"
#include "mcenoc/routing.hpp"

using namespace mcenoc;

namespace {

Permutation shuffled(std::uint32_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> m(n);
  std::iota(m.begin(), m.end(), 0u);
  Rng rng(seed);
  rng.shuffle(m);
  return Permutation(std::move(m));
}

void BM_RoutePermutation(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const Topology t = build_topology({n, static_cast<std::uint32_t>(state.range(1))});
  const Permutation p = shuffled(n, 1);
  for (auto _ : state) benchmark::DoNotOptimize(route_permutation(t, p));
}
BENCHMARK(BM_RoutePermutation)->Args({32, 1})->Args({32, 2})->Args({256, 1})->Args({1024, 2});

void BM_VerifyRouteset(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const Topology t = build_topology({n, 1});
  const RouteSet rs = route_permutation(t, shuffled(n, 2));
  for (auto _ : state) benchmark::DoNotOptimize(verify_routeset(t, rs));
}
BENCHMARK(BM_VerifyRouteset)->Arg(8)->Arg(32)->Arg(128);

void BM_NetworkStep(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  Network net(build_topology({n, 1}));
  std::vector<ForwardSignals> tx(n, ForwardSignals{true, true, false});
  std::vector<BackwardSignals> back(n);
  for (auto _ : state) net.step(tx, back);
  state.SetItemsProcessed(state.iterations() * net.switch_total());
}
BENCHMARK(BM_NetworkStep)->Arg(16)->Arg(64)->Arg(256);

void BM_CoreCampaign(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_core(p, {1, 10000, Legality::legal}));
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_CoreCampaign)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
