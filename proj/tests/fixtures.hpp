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

#ifndef ADTRED_TESTS_FIXTURES_HPP_
#define ADTRED_TESTS_FIXTURES_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "adtred/parser.hpp"
#include "adtred/signature.hpp"

namespace adtred::testing {

inline const char* kListDecl =
    "(declare-datatypes ((Colour 0) (CList 0)) "
    "(((red) (green) (blue)) ((nil) (cons (head Colour) (tail CList)))))\n";

inline const char* kNatDecl =
    "(declare-datatypes ((Nat 0)) (((one) (succ (pred Nat)))))\n";

// Lists plus a two-sort cycle hanging off them.
inline const char* kTwoCycleDecl =
    "(declare-datatypes ((Colour 0) (CList 0) (S1 0) (S2 0)) "
    "(((red) (green) (blue)) ((nil) (cons (head Colour) (tail CList))) "
    "((f1 (s2 S2))) ((f2 (s1 S1)) (null) (col (list CList)))))\n";

inline const char* kThreeCycleDecl =
    "(declare-datatypes ((Colour 0) (CList 0) (S1 0) (S2 0) (S3 0)) "
    "(((red) (green) (blue)) ((nil) (cons (head Colour) (tail CList))) "
    "((f1 (s2 S2))) ((f2 (s3 S3))) "
    "((f3 (s1 S1)) (null) (col (list CList)))))\n";

inline const char* kTreeDecl =
    "(declare-datatypes ((Tree 0)) "
    "(((leaf) (node (left Tree) (right Tree)))))\n";

inline const char* kPairDecl =
    "(declare-datatypes ((Colour 0) (P 0)) "
    "(((red) (green) (blue)) ((mk (a Colour) (b Colour)))))\n";

inline Signature SigOf(const std::string& decl) {
  return ParseScript(decl).sig;
}

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string DataPath(const std::string& name) {
  return std::string(ADTRED_TEST_DATA) + "/" + name;
}

}  // namespace adtred::testing

#endif  // ADTRED_TESTS_FIXTURES_HPP_
