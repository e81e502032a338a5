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

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <map>

#include "adtred/backend.hpp"

namespace adtred {

std::optional<std::string> RunProcess(const std::string& command,
                                      const std::string& input,
                                      int timeout_ms) {
  int in_pipe[2];
  int out_pipe[2];
  if (pipe(in_pipe) != 0) throw SpawnError("pipe: " + std::string(strerror(errno)));
  if (pipe(out_pipe) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    throw SpawnError("pipe: " + std::string(strerror(errno)));
  }
  const pid_t pid = fork();
  if (pid < 0) throw SpawnError("fork: " + std::string(strerror(errno)));
  if (pid == 0) {
    setpgid(0, 0);  // own group, so a timeout also kills the shell's children
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    const int null = open("/dev/null", O_WRONLY);
    if (null >= 0) dup2(null, STDERR_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  setpgid(pid, pid);
  close(in_pipe[0]);
  close(out_pipe[1]);
  signal(SIGPIPE, SIG_IGN);
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);

  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  std::string output;
  std::size_t written = 0;
  int to_child = in_pipe[1];
  bool timed_out = false;
  char buf[4096];
  while (true) {
    pollfd fds[2];
    int n = 0;
    fds[n++] = {out_pipe[0], POLLIN, 0};
    if (to_child >= 0) fds[n++] = {to_child, POLLOUT, 0};
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
                          deadline - std::chrono::steady_clock::now())
                          .count();
    if (left <= 0) {
      timed_out = true;
      break;
    }
    if (poll(fds, n, static_cast<int>(left)) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (to_child >= 0 && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
      const ssize_t w = write(to_child, input.data() + written,
                              input.size() - written);
      if (w > 0) written += static_cast<std::size_t>(w);
      if (w < 0 || written == input.size()) {
        close(to_child);
        to_child = -1;
      }
    }
    if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
      const ssize_t r = read(out_pipe[0], buf, sizeof buf);
      if (r <= 0) break;
      output.append(buf, static_cast<std::size_t>(r));
    }
  }
  if (to_child >= 0) close(to_child);
  close(out_pipe[0]);
  if (timed_out) kill(-pid, SIGKILL);
  int status = 0;
  waitpid(pid, &status, 0);
  if (timed_out) return std::nullopt;
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    throw SpawnError("cannot run '" + command + "'");
  }
  return output;
}

std::optional<std::string> ExternalCommandFromEnv() {
  const char* v = std::getenv("ADT_SMT_SOLVER");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

namespace {

// Evaluates define-fun bodies of a get-model response.
class ModelReader {
 public:
  ModelReader(const SExpr& model, const std::string& raw) : raw_(raw) {
    for (const auto& d : model.items) {
      if (!d.IsList() || d.items.size() != 5 || !d.items[0].IsSymbol("define-fun") ||
          d.items[1].kind != SExpr::Kind::kSymbol || !d.items[2].IsList()) {
        continue;  // other sorts, comments, declarations
      }
      Def def;
      for (const auto& p : d.items[2].items) {
        if (!p.IsList() || p.items.empty()) Fail("malformed parameter list");
        def.params.push_back(p.items[0].text);
      }
      def.body = &d.items[4];
      defs_[d.items[1].text] = def;
    }
  }

  bool Has(const std::string& name) const { return defs_.count(name) > 0; }

  std::int64_t Call(const std::string& fn,
                    const std::vector<std::int64_t>& args) {
    auto it = defs_.find(fn);
    if (it == defs_.end()) return 0;
    if (it->second.params.size() != args.size()) Fail("arity mismatch for " + fn);
    Env env;
    for (std::size_t i = 0; i < args.size(); ++i) {
      env[it->second.params[i]] = Value{false, args[i]};
    }
    if (++depth_ > 10000) Fail("model definitions nest too deeply");
    const Value v = Eval(*it->second.body, env);
    --depth_;
    if (v.boolean) Fail("Boolean value for integer function " + fn);
    return v.i;
  }

 private:
  struct Value {
    bool boolean = false;
    std::int64_t i = 0;
  };
  using Env = std::map<std::string, Value>;
  struct Def {
    std::vector<std::string> params;
    const SExpr* body = nullptr;
  };

  [[noreturn]] void Fail(const std::string& what) const {
    throw ProtocolError("cannot read solver model: " + what, raw_);
  }

  std::int64_t Int(const SExpr& s, const Env& env) {
    const Value v = Eval(s, env);
    if (v.boolean) Fail("expected integer");
    return v.i;
  }
  bool Bool(const SExpr& s, const Env& env) {
    const Value v = Eval(s, env);
    if (!v.boolean) Fail("expected Boolean");
    return v.i != 0;
  }

  Value Eval(const SExpr& s, const Env& env) {
    if (s.kind == SExpr::Kind::kNumeral) {
      try {
        return Value{false, std::stoll(s.text)};
      } catch (const std::exception&) {
        Fail("numeral out of range");
      }
    }
    if (s.kind == SExpr::Kind::kSymbol) {
      if (s.text == "true") return Value{true, 1};
      if (s.text == "false") return Value{true, 0};
      auto it = env.find(s.text);
      if (it != env.end()) return it->second;
      if (Has(s.text)) return Value{false, Call(s.text, {})};
      Fail("unknown symbol " + s.text);
    }
    if (!s.IsList() || s.items.empty()) Fail("unexpected term");
    const std::string head = s.items[0].text;
    const std::size_t n = s.items.size() - 1;
    auto arg = [&](std::size_t i) -> const SExpr& { return s.items[i]; };
    if (head == "ite") {
      return Bool(arg(1), env) ? Eval(arg(2), env) : Eval(arg(3), env);
    }
    if (head == "let") {
      Env inner = env;
      for (const auto& b : arg(1).items) {
        inner[b.items[0].text] = Eval(b.items[1], env);
      }
      return Eval(arg(2), inner);
    }
    if (head == "not") return Value{true, !Bool(arg(1), env)};
    if (head == "and" || head == "or") {
      const bool conj = head == "and";
      for (std::size_t i = 1; i <= n; ++i) {
        if (Bool(arg(i), env) != conj) return Value{true, !conj};
      }
      return Value{true, conj};
    }
    if (head == "=>") {
      return Value{true, !Bool(arg(1), env) || Bool(arg(2), env)};
    }
    if (head == "=" || head == "distinct") {
      std::vector<Value> vs;
      for (std::size_t i = 1; i <= n; ++i) vs.push_back(Eval(arg(i), env));
      bool all_eq = true;
      bool all_ne = true;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
          const bool eq = vs[i].i == vs[j].i;
          all_eq = all_eq && eq;
          all_ne = all_ne && !eq;
        }
      }
      return Value{true, head == "=" ? all_eq : all_ne};
    }
    if (head == "<=" || head == "<" || head == ">=" || head == ">") {
      const std::int64_t a = Int(arg(1), env);
      const std::int64_t b = Int(arg(2), env);
      const bool r = head == "<=" ? a <= b
                     : head == "<" ? a < b
                     : head == ">=" ? a >= b
                                    : a > b;
      return Value{true, r};
    }
    if (head == "+" || head == "*") {
      __int128 acc = head == "+" ? 0 : 1;
      for (std::size_t i = 1; i <= n; ++i) {
        const std::int64_t v = Int(arg(i), env);
        acc = head == "+" ? acc + v : acc * v;
        if (acc > INT64_MAX || acc < INT64_MIN) Fail("overflow");
      }
      return Value{false, static_cast<std::int64_t>(acc)};
    }
    if (head == "-") {
      if (n == 1) return Value{false, -Int(arg(1), env)};
      __int128 acc = Int(arg(1), env);
      for (std::size_t i = 2; i <= n; ++i) acc -= Int(arg(i), env);
      if (acc > INT64_MAX || acc < INT64_MIN) Fail("overflow");
      return Value{false, static_cast<std::int64_t>(acc)};
    }
    if (Has(head)) {
      std::vector<std::int64_t> args;
      for (std::size_t i = 1; i <= n; ++i) args.push_back(Int(arg(i), env));
      return Value{false, Call(head, args)};
    }
    Fail("unsupported operator " + head);
  }

  std::string raw_;
  std::map<std::string, Def> defs_;
  int depth_ = 0;
};

}  // namespace

SolverResult SolveExternal(const RFormula& f, const std::string& command,
                           int timeout_ms) {
  const std::optional<std::string> out =
      RunProcess(command, EmitScript(f), timeout_ms);
  SolverResult r;
  if (!out) {
    r.status = SolverResult::Status::kUnknown;
    r.reason = "external solver timed out";
    return r;
  }
  std::vector<SExpr> resp;
  try {
    resp = ParseSExprs(*out);
  } catch (const SyntaxError& e) {
    throw ProtocolError(std::string("unreadable solver output: ") + e.what(),
                        *out);
  }
  if (resp.empty() || resp[0].kind != SExpr::Kind::kSymbol) {
    throw ProtocolError("missing check-sat answer", *out);
  }
  const std::string& verdict = resp[0].text;
  if (verdict == "unsat") {
    r.status = SolverResult::Status::kUnsat;
    return r;
  }
  if (verdict == "unknown") {
    r.status = SolverResult::Status::kUnknown;
    r.reason = "external solver answered unknown";
    return r;
  }
  if (verdict != "sat") throw ProtocolError("unexpected answer", *out);
  if (resp.size() < 2 || !resp[1].IsList()) {
    throw ProtocolError("missing model", *out);
  }
  // Some solvers wrap the model as (model ...).
  SExpr model = resp[1];
  if (!model.items.empty() && model.items[0].IsSymbol("model")) {
    model.items.erase(model.items.begin());
  }
  ModelReader reader(model, *out);
  RSignature sig;
  CollectSymbols(f, &sig);
  r.status = SolverResult::Status::kSat;
  for (const auto& v : sig.vars) r.model.vars[v] = reader.Call(v, {});
  std::function<std::int64_t(const RExpr&)> eval =
      [&](const RExpr& e) -> std::int64_t {
    if (e.kind != RExpr::Kind::kApp) {
      if (e.args.empty()) return EvaluateR(r.model, e);
      RExpr copy = e;
      for (auto& a : copy.args) a = RConst(eval(*a));
      return EvaluateR(r.model, copy);
    }
    std::vector<std::int64_t> args;
    for (const auto& a : e.args) args.push_back(eval(*a));
    const std::int64_t v = reader.Call(e.name, args);
    r.model.functions[e.name].table[args] = v;
    return v;
  };
  std::function<void(const RFormula&)> visit = [&](const RFormula& g) {
    if (g.lhs) eval(*g.lhs);
    if (g.rhs) eval(*g.rhs);
    for (const auto& a : g.args) visit(*a);
  };
  visit(f);
  if (!EvaluateR(r.model, f)) {
    throw ProtocolError("solver model does not satisfy the formula", *out);
  }
  return r;
}

SolverResult Solve(const RFormula& f, const BackendConfig& config) {
  if (config.kind == BackendConfig::Kind::kExternal) {
    return SolveExternal(f, config.command, config.timeout_ms);
  }
  return SolveBuiltin(f, config.limits);
}

}  // namespace adtred
