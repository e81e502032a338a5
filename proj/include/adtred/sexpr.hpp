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

#ifndef ADTRED_SEXPR_HPP_
#define ADTRED_SEXPR_HPP_

#include <string>
#include <vector>

namespace adtred {

struct SExpr {
  enum class Kind { kSymbol, kNumeral, kString, kKeyword, kList };

  Kind kind = Kind::kList;
  std::string text;  // atoms; strings without quotes
  std::vector<SExpr> items;
  int line = 0;
  int col = 0;

  bool IsSymbol(const std::string& s) const {
    return kind == Kind::kSymbol && text == s;
  }
  bool IsList() const { return kind == Kind::kList; }
  // Re-renders in single-line SMT-LIB form.
  std::string ToString() const;
};

// Reads all top-level s-expressions. Throws SyntaxError with position.
std::vector<SExpr> ParseSExprs(const std::string& text);

}  // namespace adtred

#endif  // ADTRED_SEXPR_HPP_
