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

#include "adtred/sexpr.hpp"

#include <algorithm>
#include <cctype>

#include "adtred/error.hpp"

namespace adtred {

std::string SExpr::ToString() const {
  switch (kind) {
    case Kind::kString: {
      std::string out = "\"";
      for (char c : text) {
        out += c;
        if (c == '"') out += '"';
      }
      return out + "\"";
    }
    case Kind::kList: {
      std::string out = "(";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += " ";
        out += items[i].ToString();
      }
      return out + ")";
    }
    default:
      return text;
  }
}

namespace {

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  std::vector<SExpr> ReadAll() {
    std::vector<SExpr> out;
    SkipSpace();
    while (pos_ < text_.size()) {
      out.push_back(Read());
      SkipSpace();
    }
    return out;
  }

 private:
  char Peek() const { return text_[pos_]; }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void SkipSpace() {
    while (pos_ < text_.size()) {
      const char c = Peek();
      if (c == ';') {
        while (pos_ < text_.size() && Peek() != '\n') Advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        Advance();
      } else {
        break;
      }
    }
  }

  SExpr Read() {
    SExpr e;
    e.line = line_;
    e.col = col_;
    const char c = Peek();
    if (c == '(') {
      Advance();
      e.kind = SExpr::Kind::kList;
      SkipSpace();
      while (pos_ < text_.size() && Peek() != ')') {
        e.items.push_back(Read());
        SkipSpace();
      }
      if (pos_ >= text_.size()) {
        throw SyntaxError(e.line, e.col, "unbalanced '('");
      }
      Advance();
      return e;
    }
    if (c == ')') throw SyntaxError(line_, col_, "unexpected ')'");
    if (c == '"') {
      Advance();
      e.kind = SExpr::Kind::kString;
      while (true) {
        if (pos_ >= text_.size()) {
          throw SyntaxError(e.line, e.col, "unterminated string literal");
        }
        if (Peek() == '"') {
          Advance();
          if (pos_ < text_.size() && Peek() == '"') {
            e.text += '"';
            Advance();
            continue;
          }
          break;
        }
        e.text += Peek();
        Advance();
      }
      return e;
    }
    if (c == '|') {
      Advance();
      e.kind = SExpr::Kind::kSymbol;
      while (pos_ < text_.size() && Peek() != '|') {
        e.text += Peek();
        Advance();
      }
      if (pos_ >= text_.size()) {
        throw SyntaxError(e.line, e.col, "unterminated quoted symbol");
      }
      Advance();
      return e;
    }
    while (pos_ < text_.size()) {
      const char d = Peek();
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' ||
          d == ')' || d == ';' || d == '"' || d == '|') {
        break;
      }
      e.text += d;
      Advance();
    }
    const bool numeral =
        !e.text.empty() &&
        std::all_of(e.text.begin(), e.text.end(),
                    [](char x) { return std::isdigit(static_cast<unsigned char>(x)); });
    if (numeral) {
      e.kind = SExpr::Kind::kNumeral;
    } else if (e.text[0] == ':') {
      e.kind = SExpr::Kind::kKeyword;
    } else {
      e.kind = SExpr::Kind::kSymbol;
    }
    return e;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

std::vector<SExpr> ParseSExprs(const std::string& text) {
  return Reader(text).ReadAll();
}

}  // namespace adtred
