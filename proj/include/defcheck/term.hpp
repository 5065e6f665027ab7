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

#include <set>
#include <string>
#include <vector>

namespace defcheck {

/// A first-order term: either a variable or a function symbol applied to
/// argument terms. Constants are applications with zero arguments. Terms are
/// immutable values with structural equality and ordering.
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(std::string functor, std::vector<Term> args = {});
  static Term constant(std::string name) { return apply(std::move(name)); }

  bool is_variable() const { return variable_; }
  bool is_constant() const { return !variable_ && args_.empty(); }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }

  bool is_ground() const;

  /// depth(constant) = 0; depth(f(t1..tn)) = 1 + max depth(ti). Ground only.
  int depth() const;

  void collect_variables(std::set<std::string>& out) const;
  /// Collects every ground subterm (of a possibly non-ground term),
  /// including nested ones.
  void collect_ground_subterms(std::vector<Term>& out) const;
  /// All subterms of a ground term, including the term itself.
  void collect_subterms(std::vector<Term>& out) const;

  /// Renders with list sugar: nil -> [], cons chains -> [a,b|t], and the
  /// arithmetic sugar a*b / a+b for times/2 and plus/2.
  std::string to_string() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;

 private:
  Term() = default;

  bool variable_ = false;
  std::string name_;
  std::vector<Term> args_;
};

/// Convenience builders for the list encoding used by the source syntax:
/// [] is the constant nil and [h|t] is cons(h, t).
Term make_nil();
Term make_cons(Term head, Term tail);
Term make_list(std::vector<Term> items);  // nil-terminated

}  // namespace defcheck
