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

#include "adtred/lia.hpp"

#include <algorithm>

#include "adtred/error.hpp"

namespace adtred {

int Simplex::AddVar() {
  value_.emplace_back(0);
  lower_.emplace_back();
  upper_.emplace_back();
  row_of_.push_back(-1);
  return num_vars() - 1;
}

int Simplex::AddRow(const std::map<int, mpq_class>& coefs) {
  std::map<int, mpq_class> row;
  auto add = [&](int v, const mpq_class& c) {
    mpq_class& slot = row[v];
    slot += c;
    if (slot == 0) row.erase(v);
  };
  mpq_class value = 0;
  for (const auto& [v, c] : coefs) {
    value += c * value_[v];
    if (row_of_[v] < 0) {
      add(v, c);
    } else {
      for (const auto& [w, d] : rows_[row_of_[v]].coefs) add(w, c * d);
    }
  }
  const int s = AddVar();
  value_[s] = value;
  row_of_[s] = static_cast<int>(rows_.size());
  rows_.push_back(Row{s, std::move(row)});
  return s;
}

void Simplex::SetLower(int v, std::optional<mpq_class> b) {
  lower_[v] = std::move(b);
  if (row_of_[v] < 0 && lower_[v] && value_[v] < *lower_[v]) {
    Update(v, *lower_[v]);
  }
}

void Simplex::SetUpper(int v, std::optional<mpq_class> b) {
  upper_[v] = std::move(b);
  if (row_of_[v] < 0 && upper_[v] && value_[v] > *upper_[v]) {
    Update(v, *upper_[v]);
  }
}

void Simplex::Update(int nonbasic, const mpq_class& v) {
  const mpq_class delta = v - value_[nonbasic];
  for (const auto& r : rows_) {
    auto it = r.coefs.find(nonbasic);
    if (it != r.coefs.end()) value_[r.basic] += it->second * delta;
  }
  value_[nonbasic] = v;
}

void Simplex::PivotAndUpdate(int r, int j, const mpq_class& v) {
  const int i = rows_[r].basic;
  const mpq_class a_ij = rows_[r].coefs.at(j);
  const mpq_class theta = (v - value_[i]) / a_ij;
  value_[i] = v;
  value_[j] += theta;
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (static_cast<int>(k) == r) continue;
    auto it = rows_[k].coefs.find(j);
    if (it != rows_[k].coefs.end()) value_[rows_[k].basic] += it->second * theta;
  }
  // x_i = a_ij x_j + rest  =>  x_j = x_i / a_ij - rest / a_ij
  std::map<int, mpq_class> pivot;
  pivot[i] = 1 / a_ij;
  for (const auto& [l, c] : rows_[r].coefs) {
    if (l != j) pivot[l] = -c / a_ij;
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    if (static_cast<int>(k) == r) continue;
    auto it = rows_[k].coefs.find(j);
    if (it == rows_[k].coefs.end()) continue;
    const mpq_class c = it->second;
    rows_[k].coefs.erase(it);
    for (const auto& [l, d] : pivot) {
      mpq_class& slot = rows_[k].coefs[l];
      slot += c * d;
      if (slot == 0) rows_[k].coefs.erase(l);
    }
  }
  rows_[r] = Row{j, std::move(pivot)};
  row_of_[j] = r;
  row_of_[i] = -1;
}

bool Simplex::Violated(int v) const {
  return (lower_[v] && value_[v] < *lower_[v]) ||
         (upper_[v] && value_[v] > *upper_[v]);
}

bool Simplex::Check() {
  for (int v = 0; v < num_vars(); ++v) {
    if (lower_[v] && upper_[v] && *lower_[v] > *upper_[v]) return false;
  }
  while (true) {
    // Bland's rule: smallest violated basic variable, smallest entering one.
    int i = -1;
    for (int v = 0; v < num_vars(); ++v) {
      if (row_of_[v] >= 0 && Violated(v)) {
        i = v;
        break;
      }
    }
    if (i < 0) return true;
    const int r = row_of_[i];
    const bool raise = lower_[i] && value_[i] < *lower_[i];
    int j = -1;
    for (const auto& [l, a] : rows_[r].coefs) {
      const bool can_inc = !upper_[l] || value_[l] < *upper_[l];
      const bool can_dec = !lower_[l] || value_[l] > *lower_[l];
      const bool ok = raise ? ((a > 0 && can_inc) || (a < 0 && can_dec))
                            : ((a < 0 && can_inc) || (a > 0 && can_dec));
      if (ok) {
        j = l;
        break;
      }
    }
    if (j < 0) return false;
    PivotAndUpdate(r, j, raise ? *lower_[i] : *upper_[i]);
  }
}

namespace {

using Coefs = std::map<int, mpz_class>;

mpz_class FloorDiv(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// a - m * floor(a / m + 1/2)
mpz_class ModHat(const mpz_class& a, const mpz_class& m) {
  return a - m * FloorDiv(2 * a + m, 2 * m);
}

struct Substitution {
  int var;
  Coefs coefs;
  mpz_class constant;
};

void Substitute(LinearConstraint* c, const Substitution& s) {
  auto it = c->coefs.find(s.var);
  if (it == c->coefs.end()) return;
  const mpz_class a = it->second;
  c->coefs.erase(it);
  for (const auto& [v, b] : s.coefs) {
    mpz_class& slot = c->coefs[v];
    slot += a * b;
    if (slot == 0) c->coefs.erase(v);
  }
  c->constant += a * s.constant;
}

mpz_class Gcd(const Coefs& cs) {
  mpz_class g = 0;
  for (const auto& [v, a] : cs) g = gcd(g, a);
  return g;
}

class LiaSolver {
 public:
  LiaSolver(int num_vars, const LiaLimits& limits)
      : num_vars_(num_vars), limits_(limits) {}

  LiaResult Solve(std::vector<LinearConstraint> cs) {
    LiaResult out;
    if (!EliminateEqualities(&cs)) {
      out.status = LiaResult::Status::kUnsat;
      return out;
    }
    for (int v = 0; v < num_vars_; ++v) simplex_.AddVar();
    if (!Load(cs)) {
      out.status = LiaResult::Status::kUnsat;
      return out;
    }
    try {
      out.status = Search() ? LiaResult::Status::kSat
                            : LiaResult::Status::kUnsat;
    } catch (const ResourceError&) {
      out.status = LiaResult::Status::kUnknown;
      return out;
    }
    if (out.status != LiaResult::Status::kSat) return out;
    std::vector<mpz_class> values(num_vars_);
    for (int v = 0; v < num_vars_; ++v) {
      values[v] = simplex_.value(v).get_num();  // integral here
    }
    for (auto it = subst_.rbegin(); it != subst_.rend(); ++it) {
      mpz_class x = it->constant;
      for (const auto& [w, b] : it->coefs) x += b * values[w];
      values[it->var] = x;
    }
    values.resize(original_vars_ ? original_vars_ : num_vars_);
    out.values = std::move(values);
    return out;
  }

  int original_vars_ = 0;

 private:
  // Drops trivial constraints; false on a trivially violated one.
  static bool Trivial(const LinearConstraint& c, bool* drop) {
    *drop = false;
    if (!c.coefs.empty()) return true;
    *drop = true;
    switch (c.kind) {
      case LinearConstraint::Kind::kLe:
        return c.constant <= 0;
      case LinearConstraint::Kind::kEq:
        return c.constant == 0;
      case LinearConstraint::Kind::kNe:
        return c.constant != 0;
    }
    return true;
  }

  bool Cleanup(std::vector<LinearConstraint>* cs) {
    std::vector<LinearConstraint> kept;
    for (auto& c : *cs) {
      bool drop;
      if (!Trivial(c, &drop)) return false;
      if (!drop) kept.push_back(std::move(c));
    }
    cs->swap(kept);
    return true;
  }

  void Apply(const Substitution& s, std::vector<LinearConstraint>* cs) {
    for (auto& c : *cs) Substitute(&c, s);
    subst_.push_back(s);
  }

  bool EliminateEqualities(std::vector<LinearConstraint>* cs) {
    while (true) {
      if (!Cleanup(cs)) return false;
      auto it = std::find_if(cs->begin(), cs->end(), [](const auto& c) {
        return c.kind == LinearConstraint::Kind::kEq;
      });
      if (it == cs->end()) return true;
      LinearConstraint& eq = *it;
      const mpz_class g = Gcd(eq.coefs);
      if (eq.constant % g != 0) return false;
      for (auto& [v, a] : eq.coefs) a /= g;
      eq.constant /= g;
      int k = -1;
      mpz_class best;
      for (const auto& [v, a] : eq.coefs) {
        if (k < 0 || abs(a) < best) {
          k = v;
          best = abs(a);
        }
      }
      const mpz_class a_k = eq.coefs.at(k);
      Substitution s;
      s.var = k;
      if (best == 1) {
        // x_k = -(rest + c) / a_k
        for (const auto& [v, a] : eq.coefs) {
          if (v != k) s.coefs[v] = -a * a_k;
        }
        s.constant = -eq.constant * a_k;
        Apply(s, cs);
        continue;
      }
      // Unimodular step: with m = |a_k| + 1 and sigma fresh,
      // x_k = sign(a_k) * (sum_{i != k} modhat(a_i) x_i + modhat(c) - m sigma).
      const mpz_class m = best + 1;
      const int sigma = num_vars_++;
      const int sign = sgn(a_k);
      for (const auto& [v, a] : eq.coefs) {
        if (v == k) continue;
        const mpz_class h = sign * ModHat(a, m);
        if (h != 0) s.coefs[v] = h;
      }
      s.coefs[sigma] = -sign * m;
      s.constant = sign * ModHat(eq.constant, m);
      Apply(s, cs);
    }
  }

  std::map<int, mpq_class> ToRational(const Coefs& cs) {
    std::map<int, mpq_class> out;
    for (const auto& [v, a] : cs) out[v] = mpq_class(a);
    return out;
  }

  int SlackFor(const Coefs& cs) {
    auto it = slack_.find(cs);
    if (it != slack_.end()) return it->second;
    const int s = simplex_.AddRow(ToRational(cs));
    slack_[cs] = s;
    return s;
  }

  void TightenUpper(int v, const mpz_class& b) {
    if (!simplex_.upper(v) || *simplex_.upper(v) > b) {
      simplex_.SetUpper(v, mpq_class(b));
    }
  }
  void TightenLower(int v, const mpz_class& b) {
    if (!simplex_.lower(v) || *simplex_.lower(v) < b) {
      simplex_.SetLower(v, mpq_class(b));
    }
  }

  bool Load(const std::vector<LinearConstraint>& cs) {
    for (const auto& c : cs) {
      const mpz_class g = Gcd(c.coefs);
      Coefs norm;
      for (const auto& [v, a] : c.coefs) norm[v] = a / g;
      if (c.kind == LinearConstraint::Kind::kNe) {
        if (c.constant % g != 0) continue;
        diseqs_.push_back({norm, c.constant / g});
        continue;
      }
      // sum(norm) <= floor(-c / g)
      const mpz_class bound = FloorDiv(-c.constant, g);
      if (norm.size() == 1) {
        const auto& [v, a] = *norm.begin();
        if (a > 0) {
          TightenUpper(v, bound);
        } else {
          TightenLower(v, -bound);
        }
        continue;
      }
      TightenUpper(SlackFor(norm), bound);
    }
    return true;
  }

  template <typename F>
  bool Branch(int v, const mpz_class& upper, const mpz_class& lower,
              F&& recurse) {
    const auto saved_hi = simplex_.upper(v);
    TightenUpper(v, upper);
    if (recurse()) return true;
    simplex_.SetUpper(v, saved_hi);
    const auto saved_lo = simplex_.lower(v);
    TightenLower(v, lower);
    if (recurse()) return true;
    simplex_.SetLower(v, saved_lo);
    return false;
  }

  bool Search() {
    if (++nodes_ > limits_.max_nodes) {
      throw ResourceError("integer search budget exhausted");
    }
    if (!simplex_.Check()) return false;
    for (int v = 0; v < num_vars_; ++v) {
      const mpq_class& x = simplex_.value(v);
      if (x.get_den() == 1) continue;
      const mpz_class f = FloorDiv(x.get_num(), x.get_den());
      return Branch(v, f, f + 1, [&] { return Search(); });
    }
    for (const auto& [coefs, constant] : diseqs_) {
      mpz_class sum = constant;
      for (const auto& [v, a] : coefs) sum += a * simplex_.value(v).get_num();
      if (sum != 0) continue;
      const int s = SlackFor(coefs);
      return Branch(s, -constant - 1, -constant + 1,
                    [&] { return Search(); });
    }
    return true;
  }

  int num_vars_;
  LiaLimits limits_;
  long nodes_ = 0;
  Simplex simplex_;
  std::vector<Substitution> subst_;
  std::map<Coefs, int> slack_;
  std::vector<std::pair<Coefs, mpz_class>> diseqs_;
};

}  // namespace

LiaResult SolveLia(int num_vars, const std::vector<LinearConstraint>& cs,
                   const LiaLimits& limits) {
  LiaSolver solver(num_vars, limits);
  solver.original_vars_ = num_vars;
  return solver.Solve(cs);
}

}  // namespace adtred
