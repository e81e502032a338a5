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

#ifndef ADTRED_CORPUS_HPP_
#define ADTRED_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "adtred/ast.hpp"
#include "adtred/oracle.hpp"
#include "adtred/pipeline.hpp"
#include "adtred/signature.hpp"

namespace adtred {

struct RandomSignatureOptions {
  int max_sorts = 3;
  int max_ctors = 3;
  int max_arity = 2;
  // Retry until every sort has at most this many terms of size <= 6, so the
  // bounded oracle stays cheap.
  std::uint64_t max_small_terms = 40;
};

// Deterministic in `seed`; the result is always a valid signature.
Signature RandomSignature(std::uint32_t seed,
                          const RandomSignatureOptions& o = {});

struct CorpusConfig {
  std::uint32_t seed = 1;
  int signatures = 5;
  int formulas_per_signature = 100;
  int vars_per_formula = 3;
  int formula_depth = 3;
  int term_depth = 2;
  RandomSignatureOptions signature;
  OracleLimits oracle;
  PipelineOptions pipeline;
  bool compare_no_opt = true;  // also decide with both optimizations off
};

struct CorpusInstance {
  int signature;
  FormulaPtr formula;
};

struct Corpus {
  std::vector<Signature> signatures;
  std::vector<CorpusInstance> instances;
};

// Depth-mode formulas (no size atoms, no arithmetic).
Corpus GenerateCorpus(const CorpusConfig& c);

struct InstanceOutcome {
  SolverResult::Status status = SolverResult::Status::kUnknown;
  SolverResult::Status status_no_opt = SolverResult::Status::kUnknown;
  bool oracle_found = false;
  bool model_ok = true;  // sat answers only
  bool utvpi = true;
  std::size_t measure = 0;  // SizeMeasure of the signature
  PipelineStats stats;
  double seconds = 0;
  std::string error;  // exception text, if any

  // Oracle models force sat, unsat forbids them, and sat models check.
  bool Consistent() const;
};

std::vector<InstanceOutcome> RunCorpusSerial(const Corpus& corpus,
                                             const CorpusConfig& c);
// Same results as RunCorpusSerial, instances spread over OpenMP threads.
std::vector<InstanceOutcome> RunCorpusParallel(const Corpus& corpus,
                                               const CorpusConfig& c);

struct CorpusSummary {
  std::size_t total = 0, sat = 0, unsat = 0, unknown = 0;
  std::size_t inconsistent = 0, model_failures = 0, non_utvpi = 0;
  std::size_t opt_disagreements = 0, errors = 0, simplified_to_false = 0;
  double mean_input = 0, mean_reduct = 0, mean_simplified = 0;
  // max over instances of reduct_nodes / (measure * input_nodes)
  double blowup = 0;
  double max_seconds = 0;
};

CorpusSummary Summarize(const std::vector<InstanceOutcome>& outcomes);
// Deterministic for a fixed corpus; timings are left out.
std::string SummaryToString(const CorpusSummary& s);

}  // namespace adtred

#endif  // ADTRED_CORPUS_HPP_
