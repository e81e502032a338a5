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

#ifndef ADTRED_ERROR_HPP_
#define ADTRED_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace adtred {

// Base of all errors raised by the library. The CLI maps subclasses to exit
// codes: InputError -> 2, ResourceError/BackendError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or ill-typed user input (signatures, scripts, formulas).
class InputError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(int line, int col, const std::string& what)
      : InputError(std::to_string(line) + ":" + std::to_string(col) + ": " +
                   what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class TypeError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownSymbol : public InputError {
 public:
  explicit UnknownSymbol(const std::string& name)
      : InputError("unknown symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// A configured limit (term enumeration cap, branch-and-bound nodes, ...) was
// exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Failures talking to an external solver process.
class BackendError : public Error {
 public:
  using Error::Error;
};

// Violated internal invariant. Never expected on correct inputs.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace adtred

#endif  // ADTRED_ERROR_HPP_
