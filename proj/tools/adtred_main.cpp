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

// adtred: decide, analyze, reduce and interpolate ADT formulas.
//
// Exit codes: 0 verdict printed, 1 usage, 2 input, 3 backend or resource.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "adtred/analysis.hpp"
#include "adtred/corpus.hpp"
#include "adtred/interp.hpp"
#include "adtred/models.hpp"
#include "adtred/parser.hpp"
#include "adtred/pipeline.hpp"

namespace {

using namespace adtred;

constexpr int kUsage = 1;
constexpr int kInput = 2;
constexpr int kBackend = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string backend = "builtin";
  std::string external_cmd;
  int fuel = 100;
  bool no_opt = false;
  bool stats = false;
  bool check_model = false;
  std::uint32_t seed = 1;
  bool serial = false;
  std::string interp_cmd;
  std::string interp_dialect;
  std::vector<std::string> files;
};

Script Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseScript(ss.str());
}

PipelineOptions Options(const Flags& f) {
  PipelineOptions o;
  if (f.no_opt) o.reduce = {false, false};
  o.fuel = f.fuel;
  if (f.backend == "external") {
    o.backend.kind = BackendConfig::Kind::kExternal;
    if (!f.external_cmd.empty()) {
      o.backend.command = f.external_cmd;
    } else if (auto env = ExternalCommandFromEnv()) {
      o.backend.command = *env;
    } else {
      throw UsageError(
          "--backend external needs --external-cmd or ADT_SMT_SOLVER");
    }
  } else if (!f.external_cmd.empty()) {
    throw UsageError("--external-cmd requires --backend external");
  }
  return o;
}

void PrintStats(const PipelineStats& s) {
  std::cout << "; nodes: input " << s.input_nodes << ", reduct "
            << s.reduct_nodes << ", simplified " << s.simplified_nodes
            << "; rounds " << s.rounds << "\n";
}

// Model over the declared constants; unconstrained ones get the default
// witness of their sort (or 0).
AdtModel Complete(const Script& s, AdtModel m) {
  for (const auto& v : s.consts) {
    if (v.sort) {
      if (!m.adt.count(v.name)) m.adt[v.name] = DefaultWitness(s.sig, *v.sort);
    } else if (!m.ints.count(v.name)) {
      m.ints[v.name] = 0;
    }
  }
  return m;
}

std::string DatatypeText(const Script& s) {
  std::string out;
  for (const auto& c : s.commands) {
    if (!c.datatypes.empty()) out += PrintDatatypes(c.datatypes);
  }
  return out;
}

int Solve(const Flags& f) {
  const Script s = Load(f.files.at(0));
  const FormulaPtr phi = s.Conjunction();
  const Verdict v = Decide(s.sig, phi, Options(f));
  std::cout << StatusName(v.status) << "\n";
  if (v.status == SolverResult::Status::kSat) {
    const AdtModel m = Complete(s, v.model);
    if (f.check_model) {
      const ModelCheck c = CheckModel(s.sig, m, phi);
      if (!c.ok) throw InternalError("model check failed: " + c.diagnostic);
      std::cout << "; model check passed\n";
    }
    std::cout << "(\n"
              << ModelToString(s.sig, m, {s.consts.begin(), s.consts.end()})
              << ")\n";
  } else if (v.status == SolverResult::Status::kUnknown) {
    std::cout << "; " << v.reason << "\n";
  }
  if (f.stats) PrintStats(v.stats);
  return 0;
}

int Analyze(const Flags& f) {
  const Script s = Load(f.files.at(0));
  const Signature& sig = s.sig;
  const auto images = SizeImages(sig);
  for (std::uint32_t i = 0; i < sig.num_sorts(); ++i) {
    const SortId id{i};
    std::cout << sig.sort(id).name << ": cardinality "
              << ComputeCardinality(sig, id).ToString() << ", sizes "
              << images[i].ToString() << "\n";
  }
  std::cout << CheckExpanding(sig).ToString(sig) << CompletenessReport(sig);
  return 0;
}

int Emit(const Flags& f) {
  const Script s = Load(f.files.at(0));
  const FormulaPtr phi = s.Conjunction();
  const PipelineOptions o = Options(f);
  const ReductionMode mode =
      HasSizeAtoms(*phi) ? ReductionMode::kSize : ReductionMode::kDepth;
  const Reduction r = ReduceFormula(s.sig, phi, mode, o.reduce);
  std::cout << EmitScript(*r.reduct.formula);
  if (f.stats) {
    PipelineStats st;
    st.input_nodes = NodeCount(*phi);
    st.reduct_nodes = NodeCount(*r.reduct.formula);
    st.simplified_nodes = NodeCount(*Simplify(r.reduct.formula).formula);
    PrintStats(st);
  }
  return 0;
}

int RunInterpolate(const Flags& f) {
  const Script a = Load(f.files.at(0));
  const Script b = Load(f.files.at(1));
  if (DatatypeText(a) != DatatypeText(b)) {
    throw InputError("A and B must declare the same datatypes");
  }
  // Re-read B's assertions against A's signature.
  VarScope scope = a.Scope();
  for (const auto& v : b.consts) {
    auto [it, fresh] = scope.emplace(v.name, v.sort);
    if (!fresh && it->second != v.sort) {
      throw InputError("'" + v.name + "' has different sorts in A and B");
    }
  }
  std::vector<FormulaPtr> bs;
  for (const auto& c : b.assertions) {
    bs.push_back(ParseFormula(a.sig, scope, ToString(b.sig, *c)));
  }
  const FormulaPtr fb = bs.empty() ? MakeTrue()
                        : bs.size() == 1 ? bs[0]
                                         : MakeAnd(bs);

  std::optional<InterpolationBackend> backend;
  if (!f.interp_cmd.empty()) {
    backend = InterpolationBackend{f.interp_cmd};
    if (f.interp_dialect == "cvc5") {
      backend->dialect = InterpolationBackend::Dialect::kCvc5;
    }
  } else {
    backend = DefaultInterpolationBackend();
    if (!backend) throw BackendError("no interpolation backend found");
  }
  const InterpolationResult r =
      adtred::Interpolate(a.sig, {a.Conjunction(), fb}, *backend, Options(f));
  switch (r.kind) {
    case InterpolationResult::Kind::kInterpolant:
      std::cout << ToString(a.sig, *r.interpolant) << "\n";
      break;
    case InterpolationResult::Kind::kNotUnsat: {
      std::cout << "not-unsat\n";
      std::set<TypedVar> vars(a.consts.begin(), a.consts.end());
      vars.insert(b.consts.begin(), b.consts.end());
      std::cout << "(\n" << ModelToString(a.sig, r.model, vars) << ")\n";
      break;
    }
    case InterpolationResult::Kind::kUnknown:
      std::cout << "unknown\n; " << r.reason << "\n";
      break;
  }
  return 0;
}

int RunCorpus(const Flags& f) {
  CorpusConfig c;
  c.seed = f.seed;
  c.pipeline = Options(f);
  const adtred::Corpus corpus = GenerateCorpus(c);
  const auto t0 = std::chrono::steady_clock::now();
  const auto outcomes =
      f.serial ? RunCorpusSerial(corpus, c) : RunCorpusParallel(corpus, c);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  const CorpusSummary sum = Summarize(outcomes);
  std::cout << SummaryToString(sum);
  if (f.stats) {
    std::cout << "; slowest instance " << sum.max_seconds << " s, wall "
              << secs << " s\n";
  }
  return sum.inconsistent || sum.model_failures || sum.errors ? kBackend : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision procedure for algebraic data types"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--backend", f.backend, "builtin or external")
      ->check(CLI::IsMember({"builtin", "external"}));
  app.add_option("--external-cmd", f.external_cmd,
                 "SMT-LIB solver command for --backend external");
  app.add_option("--fuel", f.fuel, "unfolding rounds for size constraints")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--no-opt", f.no_opt, "disable the reduction optimizations");
  app.add_flag("--stats", f.stats, "print node counts");
  app.add_flag("--check-model", f.check_model, "re-check sat models");
  app.add_option("--seed", f.seed, "corpus seed");

  auto* solve = app.add_subcommand("solve", "decide a script");
  solve->add_option("file", f.files)->required()->expected(1);
  auto* analyze = app.add_subcommand("analyze", "sort analysis");
  analyze->add_option("file", f.files)->required()->expected(1);
  auto* emit = app.add_subcommand("emit", "print the reduct");
  emit->add_option("file", f.files)->required()->expected(1);
  auto* interp = app.add_subcommand("interpolate", "interpolant of A and B");
  interp->add_option("files", f.files, "A and B")->required()->expected(2);
  interp->add_option("--interp-cmd", f.interp_cmd,
                     "interpolating SMT-LIB solver command");
  interp->add_option("--interp-dialect", f.interp_dialect, "z3 or cvc5")
      ->check(CLI::IsMember({"z3", "cvc5"}));
  auto* corpus = app.add_subcommand("corpus", "random oracle-agreement run");
  corpus->add_flag("--serial", f.serial, "run without OpenMP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (solve->parsed()) return Solve(f);
    if (analyze->parsed()) return Analyze(f);
    if (emit->parsed()) return Emit(f);
    if (interp->parsed()) return RunInterpolate(f);
    return RunCorpus(f);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Untranslatable& e) {
    std::cerr << "error: " << e.what() << "\n" << e.raw() << "\n";
    return kBackend;
  } catch (const ProtocolError& e) {
    std::cerr << "error: " << e.what() << "\n" << e.raw() << "\n";
    return kBackend;
  } catch (const BackendUnsupported& e) {
    std::cerr << "error: " << e.what() << "\n" << e.raw() << "\n";
    return kBackend;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const UnboundVariable& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBackend;
  }
}
