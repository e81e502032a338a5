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

#include "adtred/pipeline.hpp"

#include "adtred/error.hpp"
#include "adtred/models.hpp"
#include "adtred/sizesolve.hpp"

namespace adtred {

Reduction ReduceFormula(const Signature& sig, const FormulaPtr& f,
                        ReductionMode mode, const ReduceOptions& opts) {
  Reduction out;
  out.flat = Flatten(sig, ToNnf(f));
  out.reduct = Reduce(sig, out.flat, mode, opts);
  return out;
}

SolverResult SolveReduct(const ReducedFormula& r, const PipelineOptions& o,
                         PipelineStats* stats) {
  Simplified s{r.formula, {}};
  if (o.simplify) s = Simplify(r.formula);
  if (stats) {
    stats->reduct_nodes = NodeCount(*r.formula);
    stats->simplified_nodes = NodeCount(*s.formula);
  }
  SolverResult res = Solve(*s.formula, o.backend);
  if (res.status != SolverResult::Status::kSat) return res;
  ExtendModel(*r.formula, s, &res.model);
  if (!EvaluateR(res.model, *r.formula)) {
    throw InternalError("extended model falsifies the reduct");
  }
  TabulateApplications(*r.formula, &res.model);
  return res;
}

Verdict DecideDepth(const Signature& sig, const FormulaPtr& f,
                    const PipelineOptions& o) {
  Verdict v;
  v.stats.input_nodes = NodeCount(*f);
  v.stats.rounds = 1;
  const Reduction red = ReduceFormula(sig, f, ReductionMode::kDepth, o.reduce);
  SolverResult res = SolveReduct(red.reduct, o, &v.stats);
  v.status = res.status;
  v.reason = res.reason;
  if (res.status != SolverResult::Status::kSat) return v;

  v.model = Reconstruct(sig, red.flat, red.reduct, res.model).model;
  const ModelCheck flat_ok = CheckModel(sig, v.model, ToFormula(sig, red.flat));
  const ModelCheck ok = CheckModel(sig, v.model, f);
  if (!flat_ok.ok || !ok.ok) {
    throw InternalError("reconstructed model falsifies " +
                        (ok.ok ? flat_ok.diagnostic : ok.diagnostic));
  }
  return v;
}

Verdict Decide(const Signature& sig, const FormulaPtr& f,
               const PipelineOptions& o) {
  if (HasSizeAtoms(*f)) return SolveWithSize(sig, f, o).verdict;
  return DecideDepth(sig, f, o);
}

}  // namespace adtred
