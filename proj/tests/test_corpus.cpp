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

#include "adtred/corpus.hpp"

#include "adtred/analysis.hpp"
#include "doctest.h"

namespace adtred {
namespace {

CorpusConfig Small(std::uint32_t seed) {
  CorpusConfig c;
  c.seed = seed;
  c.signatures = 3;
  c.formulas_per_signature = 30;
  return c;
}

TEST_CASE("corpus generation is deterministic") {
  const Corpus a = GenerateCorpus(Small(3));
  const Corpus b = GenerateCorpus(Small(3));
  REQUIRE(a.instances.size() == 90);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(a.instances[i].signature == b.instances[i].signature);
    CHECK(SameFormula(*a.instances[i].formula, *b.instances[i].formula));
  }
  CHECK(GenerateCorpus(Small(4)).instances.size() == 90);
}

TEST_CASE("random signatures stay small and well-founded") {
  for (std::uint32_t seed = 1; seed <= 20; ++seed) {
    const Signature sig = RandomSignature(seed);
    for (std::uint32_t s = 0; s < sig.num_sorts(); ++s) {
      CHECK(SizeImages(sig)[s].Min().has_value());
    }
  }
}

TEST_CASE("parallel corpus run agrees with the serial reference") {
  for (std::uint32_t seed : {1u, 2u}) {
    const CorpusConfig c = Small(seed);
    const Corpus corpus = GenerateCorpus(c);
    const auto serial = RunCorpusSerial(corpus, c);
    const auto parallel = RunCorpusParallel(corpus, c);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
      const InstanceOutcome& s = serial[i];
      const InstanceOutcome& p = parallel[i];
      CHECK(s.status == p.status);
      CHECK(s.status_no_opt == p.status_no_opt);
      CHECK(s.oracle_found == p.oracle_found);
      CHECK(s.model_ok == p.model_ok);
      CHECK(s.utvpi == p.utvpi);
      CHECK(s.stats.reduct_nodes == p.stats.reduct_nodes);
      CHECK(s.stats.simplified_nodes == p.stats.simplified_nodes);
      CHECK(s.error == p.error);
      CHECK(s.Consistent());
    }
    CHECK(SummaryToString(Summarize(serial)) ==
          SummaryToString(Summarize(parallel)));
  }
}

}  // namespace
}  // namespace adtred
