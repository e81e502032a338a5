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

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include <omp.h>

#include "adtred/analysis.hpp"
#include "adtred/generator.hpp"
#include "adtred/models.hpp"

namespace adtred {
namespace {

using Status = SolverResult::Status;

bool Tractable(const Signature& sig, std::uint64_t max_terms) {
  bool branching = false;
  for (std::uint32_t s = 0; s < sig.num_sorts(); ++s) {
    mpz_class n = 0;
    for (std::uint64_t b = 1; b <= 6; ++b) {
      n += CountTermsOfSize(sig, SortId{s}, b);
    }
    if (n > max_terms) return false;
    branching = branching || sig.NumCtors(SortId{s}) > 1;
  }
  return branching;
}

InstanceOutcome RunOne(const Corpus& corpus, const CorpusConfig& c,
                       std::size_t i) {
  const auto start = std::chrono::steady_clock::now();
  const CorpusInstance& inst = corpus.instances[i];
  const Signature& sig = corpus.signatures[inst.signature];
  InstanceOutcome out;
  out.measure = sig.SizeMeasure();
  try {
    const Verdict v = DecideDepth(sig, inst.formula, c.pipeline);
    out.status = v.status;
    out.stats = v.stats;
    if (v.status == Status::kSat) {
      out.model_ok = CheckModel(sig, v.model, inst.formula).ok;
    }
    const Reduction red = ReduceFormula(sig, inst.formula,
                                        ReductionMode::kDepth,
                                        c.pipeline.reduce);
    out.utvpi = IsUtvpi(*red.reduct.formula);
    if (c.compare_no_opt) {
      PipelineOptions plain = c.pipeline;
      plain.reduce.guarded_selectors = false;
      plain.reduce.enum_sorts = false;
      out.status_no_opt = DecideDepth(sig, inst.formula, plain).status;
    } else {
      out.status_no_opt = out.status;
    }
    out.oracle_found = BoundedSearch(sig, inst.formula, c.oracle).found;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  out.seconds = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

}  // namespace

Signature RandomSignature(std::uint32_t seed,
                          const RandomSignatureOptions& o) {
  std::mt19937 rng(seed);
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1));
  };
  for (;;) {
    const int sorts = pick(1, o.max_sorts);
    std::vector<SortSpec> specs(sorts);
    for (int s = 0; s < sorts; ++s) {
      specs[s].name = "S" + std::to_string(s);
      const int ctors = pick(1, o.max_ctors);
      for (int k = 0; k < ctors; ++k) {
        SortSpec::Ctor ctor;
        ctor.name = "c" + std::to_string(s) + std::to_string(k);
        const int arity = pick(0, o.max_arity);
        for (int a = 0; a < arity; ++a) {
          ctor.args.emplace_back(ctor.name + "_" + std::to_string(a),
                                 "S" + std::to_string(pick(0, sorts - 1)));
        }
        specs[s].ctors.push_back(std::move(ctor));
      }
    }
    if (!Validate(specs).empty()) continue;
    Signature sig = Signature::Build(specs);
    if (Tractable(sig, o.max_small_terms)) return sig;
  }
}

Corpus GenerateCorpus(const CorpusConfig& c) {
  Corpus corpus;
  std::mt19937 rng(c.seed);
  for (int s = 0; s < c.signatures; ++s) {
    corpus.signatures.push_back(RandomSignature(rng(), c.signature));
  }
  for (int s = 0; s < c.signatures; ++s) {
    const Signature& sig = corpus.signatures[s];
    std::vector<TypedVar> vars;
    for (int v = 0; v < c.vars_per_formula; ++v) {
      vars.push_back({"x" + std::to_string(v),
                      SortId{static_cast<std::uint32_t>(
                          rng() % sig.num_sorts())}});
    }
    FormulaGenerator gen(sig, vars, rng());
    gen.allow_sizes = false;
    gen.allow_arith = false;
    for (int i = 0; i < c.formulas_per_signature; ++i) {
      corpus.instances.push_back(
          {s, gen.RandFormula(c.formula_depth, c.term_depth)});
    }
  }
  return corpus;
}

bool InstanceOutcome::Consistent() const {
  if (!error.empty()) return false;
  if (oracle_found && status != Status::kSat) return false;
  if (status == Status::kUnsat && oracle_found) return false;
  return status != Status::kSat || model_ok;
}

std::vector<InstanceOutcome> RunCorpusSerial(const Corpus& corpus,
                                             const CorpusConfig& c) {
  std::vector<InstanceOutcome> out;
  out.reserve(corpus.instances.size());
  for (std::size_t i = 0; i < corpus.instances.size(); ++i) {
    out.push_back(RunOne(corpus, c, i));
  }
  return out;
}

std::vector<InstanceOutcome> RunCorpusParallel(const Corpus& corpus,
                                               const CorpusConfig& c) {
  const auto n = static_cast<std::int64_t>(corpus.instances.size());
  std::vector<InstanceOutcome> out(n);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = RunOne(corpus, c, static_cast<std::size_t>(i));
  }
  return out;
}

CorpusSummary Summarize(const std::vector<InstanceOutcome>& outcomes) {
  CorpusSummary s;
  s.total = outcomes.size();
  for (const auto& o : outcomes) {
    if (!o.error.empty()) {
      ++s.errors;
      ++s.inconsistent;
      continue;
    }
    switch (o.status) {
      case Status::kSat: ++s.sat; break;
      case Status::kUnsat: ++s.unsat; break;
      case Status::kUnknown: ++s.unknown; break;
    }
    if (!o.Consistent()) ++s.inconsistent;
    if (o.status == Status::kSat && !o.model_ok) ++s.model_failures;
    if (!o.utvpi) ++s.non_utvpi;
    if (o.status != o.status_no_opt) ++s.opt_disagreements;
    if (o.status == Status::kUnsat && o.stats.simplified_nodes == 1) {
      ++s.simplified_to_false;
    }
    s.mean_input += o.stats.input_nodes;
    s.mean_reduct += o.stats.reduct_nodes;
    s.mean_simplified += o.stats.simplified_nodes;
    s.blowup = std::max(
        s.blowup, static_cast<double>(o.stats.reduct_nodes) /
                      static_cast<double>(o.measure * o.stats.input_nodes));
    s.max_seconds = std::max(s.max_seconds, o.seconds);
  }
  const std::size_t ok = s.total - s.errors;
  if (ok > 0) {
    s.mean_input /= ok;
    s.mean_reduct /= ok;
    s.mean_simplified /= ok;
  }
  return s;
}

std::string SummaryToString(const CorpusSummary& s) {
  std::ostringstream out;
  out << "instances " << s.total << ": sat " << s.sat << ", unsat " << s.unsat
      << ", unknown " << s.unknown << ", errors " << s.errors << "\n";
  out << "oracle disagreements " << s.inconsistent << ", model failures "
      << s.model_failures << ", non-UTVPI reducts " << s.non_utvpi
      << ", opt/no-opt disagreements " << s.opt_disagreements << "\n";
  out.setf(std::ios::fixed);
  out.precision(1);
  out << "mean nodes: parsed " << s.mean_input << ", reduced "
      << s.mean_reduct << ", simplified " << s.mean_simplified << "\n";
  out << "unsat simplified to false " << s.simplified_to_false << "\n";
  out.precision(3);
  out << "blow-up C = max reduct/(n*|phi|) = " << s.blowup << "\n";
  return out.str();
}

}  // namespace adtred
