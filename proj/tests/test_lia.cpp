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

#include <random>

#include "doctest.h"

namespace adtred {
namespace {

using K = LinearConstraint::Kind;

LinearConstraint C(std::map<int, int> coefs, int constant, K kind) {
  LinearConstraint c;
  for (auto [v, a] : coefs) c.coefs[v] = a;
  c.constant = constant;
  c.kind = kind;
  return c;
}

bool Holds(const LinearConstraint& c, const std::vector<mpz_class>& x) {
  mpz_class sum = c.constant;
  for (const auto& [v, a] : c.coefs) sum += a * x[v];
  switch (c.kind) {
    case K::kLe:
      return sum <= 0;
    case K::kEq:
      return sum == 0;
    case K::kNe:
      return sum != 0;
  }
  return false;
}

TEST_CASE("simplex finds rational points and detects infeasibility") {
  Simplex s;
  const int x = s.AddVar();
  const int y = s.AddVar();
  const int sum = s.AddRow({{x, 1}, {y, 1}});
  const int diff = s.AddRow({{x, 1}, {y, -1}});
  s.SetLower(sum, mpq_class(3));
  s.SetUpper(diff, mpq_class(-2));
  s.SetLower(x, mpq_class(0));
  REQUIRE(s.Check());
  CHECK(s.value(x) + s.value(y) >= 3);
  CHECK(s.value(x) - s.value(y) <= -2);
  s.SetUpper(sum, mpq_class(1));
  CHECK_FALSE(s.Check());
}

TEST_CASE("equalities with non-unit coefficients") {
  // 3x + 5y = 7 has integer solutions, 4x + 6y = 7 has none.
  auto r = SolveLia(2, {C({{0, 3}, {1, 5}}, -7, K::kEq)});
  REQUIRE(r.status == LiaResult::Status::kSat);
  CHECK(3 * r.values[0] + 5 * r.values[1] == 7);
  CHECK(SolveLia(2, {C({{0, 4}, {1, 6}}, -7, K::kEq)}).status ==
        LiaResult::Status::kUnsat);
  // 2x = 2y + 1 is rationally feasible only.
  CHECK(SolveLia(2, {C({{0, 2}, {1, -2}}, -1, K::kEq)}).status ==
        LiaResult::Status::kUnsat);
  // 2 <= 3x <= 2 without equalities: needs branching.
  CHECK(SolveLia(1, {C({{0, 3}}, -2, K::kLe), C({{0, -3}}, 2, K::kLe)})
            .status == LiaResult::Status::kUnsat);
}

TEST_CASE("disequalities split lazily") {
  // 0 <= x <= 2, x != 0, x != 1, x != 2.
  std::vector<LinearConstraint> cs = {C({{0, -1}}, 0, K::kLe),
                                      C({{0, 1}}, -2, K::kLe),
                                      C({{0, 1}}, 0, K::kNe),
                                      C({{0, 1}}, -1, K::kNe)};
  auto r = SolveLia(1, cs);
  REQUIRE(r.status == LiaResult::Status::kSat);
  CHECK(r.values[0] == 2);
  cs.push_back(C({{0, 1}}, -2, K::kNe));
  CHECK(SolveLia(1, cs).status == LiaResult::Status::kUnsat);
}

TEST_CASE("agrees with brute force on bounded random systems") {
  std::mt19937 rng(5);
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % (hi - lo + 1));
  };
  constexpr int kBox = 4;
  int sat = 0;
  for (int round = 0; round < 400; ++round) {
    const int n = pick(1, 3);
    std::vector<LinearConstraint> cs;
    for (int v = 0; v < n; ++v) {
      cs.push_back(C({{v, 1}}, -kBox, K::kLe));
      cs.push_back(C({{v, -1}}, -kBox, K::kLe));
    }
    const int m = pick(1, 4);
    for (int i = 0; i < m; ++i) {
      std::map<int, int> coefs;
      for (int v = 0; v < n; ++v) {
        if (int a = pick(-3, 3)) coefs[v] = a;
      }
      cs.push_back(C(coefs, pick(-6, 6), static_cast<K>(pick(0, 2))));
    }
    bool exists = false;
    std::vector<mpz_class> x(n);
    std::vector<int> p(n, -kBox);
    while (!exists) {
      for (int v = 0; v < n; ++v) x[v] = p[v];
      exists = std::all_of(cs.begin(), cs.end(),
                           [&](const auto& c) { return Holds(c, x); });
      int v = 0;
      while (v < n && ++p[v] > kBox) p[v++] = -kBox;
      if (v == n) break;
    }
    const LiaResult r = SolveLia(n, cs);
    REQUIRE(r.status != LiaResult::Status::kUnknown);
    CHECK((r.status == LiaResult::Status::kSat) == exists);
    if (r.status == LiaResult::Status::kSat) {
      ++sat;
      for (const auto& c : cs) CHECK(Holds(c, r.values));
    }
  }
  CHECK(sat > 50);
  CHECK(sat < 350);
}

}  // namespace
}  // namespace adtred
