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

#ifndef ADTRED_LIA_HPP_
#define ADTRED_LIA_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

// Conjunctions of linear integer constraints: equalities are eliminated by
// unimodular substitution, the rest is decided by a simplex over the
// rationals with branch-and-bound and lazy splitting of disequalities.
namespace adtred {

struct LinearConstraint {
  enum class Kind { kLe, kEq, kNe };  // sum + constant (<= | = | !=) 0

  std::map<int, mpz_class> coefs;
  mpz_class constant;
  Kind kind = Kind::kLe;
};

struct LiaResult {
  enum class Status { kSat, kUnsat, kUnknown };

  Status status = Status::kUnknown;
  std::vector<mpz_class> values;  // one per variable when kSat
};

struct LiaLimits {
  long max_nodes = 20000;  // branch-and-bound and disequality splits
};

LiaResult SolveLia(int num_vars, const std::vector<LinearConstraint>& cs,
                   const LiaLimits& limits = {});

// Exact rational simplex (Dutertre and de Moura) over bounded variables and
// rows that define slack variables. Bounds can be tightened and restored in
// stack order; the tableau stays valid.
class Simplex {
 public:
  int AddVar();
  // Adds a basic variable equal to sum(coefs[v] * v).
  int AddRow(const std::map<int, mpq_class>& coefs);
  int num_vars() const { return static_cast<int>(value_.size()); }

  const std::optional<mpq_class>& lower(int v) const { return lower_[v]; }
  const std::optional<mpq_class>& upper(int v) const { return upper_[v]; }
  void SetLower(int v, std::optional<mpq_class> b);
  void SetUpper(int v, std::optional<mpq_class> b);
  const mpq_class& value(int v) const { return value_[v]; }

  // Finds an assignment within all bounds; false when none exists.
  bool Check();

 private:
  struct Row {
    int basic;
    std::map<int, mpq_class> coefs;  // over non-basic variables
  };

  void Update(int nonbasic, const mpq_class& v);
  void PivotAndUpdate(int row, int nonbasic, const mpq_class& v);
  bool Violated(int v) const;

  std::vector<mpq_class> value_;
  std::vector<std::optional<mpq_class>> lower_, upper_;
  std::vector<int> row_of_;  // -1 for non-basic variables
  std::vector<Row> rows_;
};

}  // namespace adtred

#endif  // ADTRED_LIA_HPP_
