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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "defcheck/errors.hpp"
#include "defcheck/term.hpp"
#include "defcheck/vocabulary.hpp"

namespace defcheck {

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  /// "name/arity" key of the predicate.
  std::string pred_key() const {
    return predicate + "/" + std::to_string(args.size());
  }
  std::string to_string() const;
  bool operator==(const Atom&) const = default;
};

enum class LiteralKind : std::uint8_t {
  kAtom,     // p(t...)
  kNegAtom,  // not p(t...)
  kTrue,
  kFalse,
  kEq,   // s = t
  kNeq,  // s != t
};

struct Literal {
  LiteralKind kind = LiteralKind::kTrue;
  Atom atom;             // kAtom / kNegAtom
  std::vector<Term> terms;  // kEq / kNeq: exactly {lhs, rhs}

  static Literal pos(Atom a);
  static Literal neg(Atom a);
  static Literal eq(Term lhs, Term rhs);
  static Literal neq(Term lhs, Term rhs);
  static Literal truth(bool value);

  bool is_pred() const { return kind == LiteralKind::kAtom || kind == LiteralKind::kNegAtom; }
  std::string to_string() const;
  bool operator==(const Literal&) const = default;
};

struct Rule {
  Atom head;
  std::vector<Literal> body;
  SourceSpan span;

  bool is_fact() const { return body.empty(); }
  std::string to_string() const;
  bool operator==(const Rule& other) const {
    return head == other.head && body == other.body;
  }
};

/// Reference to a non-variable symbol occurring in a definition.
struct SymbolRef {
  std::string name;
  int arity = 0;
  SymbolKind kind = SymbolKind::kFunction;

  std::string key() const { return name + "/" + std::to_string(arity); }
  auto operator<=>(const SymbolRef&) const = default;
};

/// A non-empty rule set together with its defined predicates (the head
/// predicates) and its parameter symbols (every other non-variable symbol).
class Definition {
 public:
  /// Computes the defined/parameter split. Throws EmptyDefinitionError.
  static Definition classify(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  const std::set<std::string>& defined() const { return defined_; }  // pred keys
  const std::set<SymbolRef>& parameters() const { return parameters_; }
  std::set<std::string> parameter_predicates() const;

  bool defines(const std::string& pred_key) const { return defined_.count(pred_key) > 0; }
  bool has_negation() const;

 private:
  std::vector<Rule> rules_;
  std::set<std::string> defined_;
  std::set<SymbolRef> parameters_;
};

/// Predicate dependency graph of a definition: an edge (from, to) when
/// `from` occurs in the body of a rule whose head is `to`; the edge is
/// negative when some such occurrence is under negation.
class DependencyGraph {
 public:
  struct Edge {
    std::string from, to;  // pred keys
    bool negative = false;
    auto operator<=>(const Edge&) const = default;
  };

  static DependencyGraph build(const Definition& d);

  const std::set<std::string>& vertices() const { return vertices_; }
  const std::set<Edge>& edges() const { return edges_; }
  bool has_cycle() const;

 private:
  std::set<std::string> vertices_;
  std::set<Edge> edges_;
};

/// True iff the dependency graph has a cycle.
bool is_inductive(const Definition& d);

/// Strongly connected components of defined predicates in topological
/// (bottom-up) order. Throws NotStratifiedError when a component contains a
/// negative edge, reporting the offending cycle.
std::vector<std::vector<std::string>> stratify(const Definition& d);

struct PartitionViolation {
  enum class Kind : std::uint8_t { kRuleScatter, kCrossModuleCycle, kEmptyPart };
  Kind kind;
  std::string detail;
};

struct PartitionReport {
  bool ok = false;
  std::vector<PartitionViolation> violations;
};

/// Validates a split of a definition's rules into named parts: every
/// predicate must be defined by exactly one part and the part-level
/// dependency relation must be acyclic. Throws NotAPartitionError when the
/// parts overlap or miss rules of `d`.
PartitionReport validate_partition(const Definition& d,
                                   const std::vector<std::vector<Rule>>& parts,
                                   const std::vector<std::string>* part_names = nullptr);

struct NamedModule {
  std::string name;
  std::vector<std::size_t> rule_indices;  // into Program definition rules
};

/// A definition together with the constructor set of its universe axiom and
/// an optional declared partition into named modules.
class Program {
 public:
  Program(Definition definition, ConstructorSet constructors,
          std::vector<NamedModule> modules = {}, bool declared_universe = false);

  const Definition& definition() const { return definition_; }
  const ConstructorSet& constructors() const { return constructors_; }
  const std::vector<NamedModule>& modules() const { return modules_; }
  bool has_declared_universe() const { return declared_universe_; }
  bool has_partition() const { return !modules_.empty(); }

  /// Sub-definition of one named module. Throws UnknownSymbolError when the
  /// module does not exist.
  Definition module_definition(const std::string& name) const;
  std::vector<std::vector<Rule>> partition_rules() const;
  std::vector<std::string> partition_names() const;

  /// Every constant/function symbol occurring in the rules must be a
  /// constructor or interpreted by `extra_functions`; throws SemanticError.
  void check_function_coverage(const std::vector<SymbolRef>& extra_functions) const;

 private:
  Definition definition_;
  ConstructorSet constructors_;
  std::vector<NamedModule> modules_;
  bool declared_universe_ = false;
};

}  // namespace defcheck
