// Copyright 2026 The adtred Authors
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

// Serial reference vs OpenMP corpus runner on the same generated corpus.

#include <benchmark/benchmark.h>

#include "adtred/corpus.hpp"

namespace {

using adtred::CorpusConfig;

CorpusConfig Config(int formulas) {
  CorpusConfig c;
  c.formulas_per_signature = formulas;
  return c;
}

void BM_CorpusSerial(benchmark::State& state) {
  const CorpusConfig c = Config(static_cast<int>(state.range(0)));
  const adtred::Corpus corpus = adtred::GenerateCorpus(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adtred::RunCorpusSerial(corpus, c));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(corpus.instances.size()));
}

void BM_CorpusParallel(benchmark::State& state) {
  const CorpusConfig c = Config(static_cast<int>(state.range(0)));
  const adtred::Corpus corpus = adtred::GenerateCorpus(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(adtred::RunCorpusParallel(corpus, c));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(corpus.instances.size()));
}

BENCHMARK(BM_CorpusSerial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)
    ->UseRealTime();
BENCHMARK(BM_CorpusParallel)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
