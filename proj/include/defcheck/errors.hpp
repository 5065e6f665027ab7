// Copyright 2026 The defcheck authors
//
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace defcheck {

/// Position of a token in a source file. line and column are 1-based.
struct SourceSpan {
  std::string file;
  int line = 1;
  int column = 1;

  std::string to_string() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, const std::string& msg)
      : Error(span.to_string() + ": error: " + msg), span_(std::move(span)) {}
  const SourceSpan& span() const { return span_; }

 private:
  SourceSpan span_;
};

class UnknownSymbolError : public Error {
 public:
  explicit UnknownSymbolError(const std::string& symbol)
      : Error("unknown symbol: " + symbol) {}
};

/// A constructor application left the depth-bounded universe.
class DepthExceededError : public Error {
 public:
  explicit DepthExceededError(const std::string& term)
      : Error("term exceeds the universe depth bound: " + term) {}
};

class UnsupportedFormError : public Error {
 public:
  explicit UnsupportedFormError(const std::string& msg) : Error(msg) {}
};

class EmptyDefinitionError : public Error {
 public:
  EmptyDefinitionError() : Error("a definition must contain at least one rule") {}
};

/// The constructor set has no constants, so its term universe is empty.
class EmptyUniverseError : public Error {
 public:
  EmptyUniverseError()
      : Error("the constructor set contains no constants; its universe is empty") {}
};

class NotStratifiedError : public Error {
 public:
  explicit NotStratifiedError(std::vector<std::string> cycle)
      : Error("definition is not stratified; recursion through negation: " +
              render(cycle)),
        cycle_(std::move(cycle)) {}
  const std::vector<std::string>& cycle() const { return cycle_; }

 private:
  static std::string render(const std::vector<std::string>& cycle) {
    std::string out;
    for (const auto& p : cycle) {
      if (!out.empty()) out += " -> ";
      out += p;
    }
    return out;
  }
  std::vector<std::string> cycle_;
};

class NotAPartitionError : public Error {
 public:
  explicit NotAPartitionError(const std::string& msg)
      : Error("not a partition: " + msg) {}
};

class UndefinedPredicateError : public Error {
 public:
  explicit UndefinedPredicateError(const std::string& pred)
      : Error("predicate is not defined by the program: " + pred) {}
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t required, std::uint64_t budget)
      : Error("enumeration budget exceeded: needs " + std::to_string(required) +
              ", budget is " + std::to_string(budget)),
        required_(required) {}
  std::uint64_t required() const { return required_; }

 private:
  std::uint64_t required_;
};

/// Ill-formed input that is not a syntax error: arity clashes, partial
/// function tables, tuples over unknown elements, and similar.
class SemanticError : public Error {
 public:
  explicit SemanticError(const std::string& msg) : Error(msg) {}
};

}  // namespace defcheck
