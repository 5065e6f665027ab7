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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "defcheck/term.hpp"
#include "defcheck/vocabulary.hpp"

namespace defcheck {

using ElemId = std::uint32_t;
inline constexpr ElemId kNoElem = 0xffffffffu;

using Tuple = std::vector<ElemId>;

struct TupleHash {
  std::size_t operator()(const Tuple& t) const {
    std::size_t h = 1469598103934665603ull;
    for (ElemId e : t) {
      h ^= e;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// A set of element tuples with insertion order preserved, O(1) membership,
/// and lazily built per-column-mask hash indexes for join probes. Indexes
/// stay valid as the relation grows.
class Relation {
 public:
  Relation() = default;

  bool insert(const Tuple& t);
  bool insert(Tuple&& t);
  bool contains(const Tuple& t) const { return seen_.count(t) > 0; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const std::vector<Tuple>& tuples() const { return tuples_; }

  /// Indexes of tuples whose positions in `mask` (bit i = argument i) equal
  /// the corresponding entries of `bound`. `bound` must have the relation's
  /// arity, with unbound positions ignored.
  void probe(std::uint32_t mask, const Tuple& bound,
             std::vector<std::uint32_t>& out) const;

  bool operator==(const Relation& other) const;

 private:
  struct MaskIndex {
    std::unordered_multimap<std::size_t, std::uint32_t> map;
    std::size_t built_upto = 0;
  };
  static std::size_t masked_hash(std::uint32_t mask, const Tuple& t);
  void top_up(std::uint32_t mask, MaskIndex& index) const;

  std::vector<Tuple> tuples_;
  std::unordered_map<Tuple, std::uint32_t, TupleHash> seen_;
  mutable std::map<std::uint32_t, MaskIndex> indexes_;
};

/// Interned ground terms. Element ids are indexes into the pool; arguments
/// of a compound term are ids of previously interned terms.
class TermPool {
 public:
  ElemId intern(SymbolId functor, std::span<const ElemId> args);
  /// Lookup without interning; kNoElem when the term was never interned.
  ElemId find(SymbolId functor, std::span<const ElemId> args) const;

  std::size_t size() const { return nodes_.size(); }
  SymbolId functor(ElemId id) const { return nodes_[id].functor; }
  std::span<const ElemId> args(ElemId id) const {
    const Node& n = nodes_[id];
    return {argstore_.data() + n.args_begin, n.nargs};
  }
  int depth(ElemId id) const { return nodes_[id].depth; }

 private:
  struct Node {
    SymbolId functor;
    std::uint32_t args_begin;
    std::uint16_t nargs;
    std::uint16_t depth;
  };
  struct Key {
    SymbolId functor;
    std::span<const ElemId> args;
  };
  std::size_t key_hash(SymbolId functor, std::span<const ElemId> args) const;

  std::vector<Node> nodes_;
  std::vector<ElemId> argstore_;
  std::unordered_multimap<std::size_t, ElemId> intern_;
};

enum class UniverseRestriction : std::uint8_t {
  kNone,   // every ground term up to the depth bound
  kLists,  // constants plus nil-terminated cons-lists of constants
};

struct UniverseOptions {
  UniverseRestriction restriction = UniverseRestriction::kNone;
  std::uint64_t element_budget = 1ull << 22;
};

enum class Builtin : std::uint8_t { kNone, kProduct, kSum };

/// Interpretation of one non-constructor function symbol.
struct FunctionValue {
  Builtin builtin = Builtin::kNone;
  std::unordered_map<Tuple, ElemId, TupleHash> table;
  ElemId default_value = kNoElem;
};

/// A first-order interpretation. Extensional structures have a named finite
/// domain; term-generated structures have a domain of interned ground terms
/// over a constructor set, cut off at a depth bound (and optionally
/// restricted further), with constructors interpreted as term formation.
class Structure {
 public:
  enum class Form : std::uint8_t { kExtensional, kTermGenerated };

  static Structure make_extensional(Vocabulary vocab,
                                    std::vector<std::string> domain);
  static Structure make_term_generated(Vocabulary vocab, ConstructorSet cf,
                                       int depth_bound,
                                       UniverseOptions opts = {});
  /// Term-generated structure whose domain is exactly the subterm closure of
  /// `seed_terms` (plus all constants of `cf`), capped at `depth_bound`.
  static Structure make_term_generated_closure(Vocabulary vocab,
                                               ConstructorSet cf,
                                               int depth_bound,
                                               const std::vector<Term>& seed_terms);

  Form form() const { return form_; }
  bool is_extensional() const { return form_ == Form::kExtensional; }
  const Vocabulary& vocabulary() const { return vocab_; }
  Vocabulary& mutable_vocabulary() { return vocab_; }

  // --- domain -------------------------------------------------------------
  std::size_t domain_size() const { return domain_.size(); }
  const std::vector<ElemId>& domain() const { return domain_; }
  bool in_domain(ElemId e) const;
  std::string element_name(ElemId e) const;
  /// Extensional only: element by name.
  std::optional<ElemId> find_element(const std::string& name) const;

  // --- term-generated specifics -------------------------------------------
  const ConstructorSet& constructors() const { return cf_; }
  int depth_bound() const { return depth_bound_; }
  UniverseRestriction restriction() const { return restriction_; }
  /// True when the domain is all of the (unbounded) term universe, i.e. the
  /// constructor set has no functors and no restriction cuts anything off.
  bool universe_complete() const;
  Term element_term(ElemId e) const;
  /// Ground term -> domain element; nullopt when the term lies outside the
  /// active domain (depth bound or restriction).
  std::optional<ElemId> find_term(const Term& ground) const;
  const TermPool& pool() const { return pool_; }
  /// Domain elements whose top functor is `f` (arity >= 1; term-generated).
  std::span<const ElemId> elements_with_functor(SymbolId f) const;
  /// Domain elements of form f(..) whose argument `pos` equals `arg`.
  std::span<const ElemId> elements_with_arg(SymbolId f, int pos, ElemId arg) const;

  // --- interpretation setup -----------------------------------------------
  void set_constant(const std::string& name, ElemId value);
  Relation& add_predicate(const std::string& name, int arity);
  void set_predicate(const std::string& name, int arity, Relation value);
  void set_function_table(const std::string& name, int arity,
                          std::unordered_map<Tuple, ElemId, TupleHash> table,
                          ElemId default_value = kNoElem);
  void set_function_builtin(const std::string& name, int arity, Builtin builtin,
                            ElemId default_value);

  /// Validates totality of extensional functions and membership of all
  /// interpreted values in the domain; throws SemanticError on violation.
  void validate() const;

  // --- interpretation access ----------------------------------------------
  bool has_predicate(SymbolId p) const { return preds_.count(p) > 0; }
  const Relation& predicate_value(SymbolId p) const;
  const std::map<SymbolId, Relation>& predicates() const { return preds_; }
  bool has_constant(SymbolId c) const;
  ElemId constant_value(SymbolId c) const;
  bool has_function(SymbolId f) const;
  bool is_constructor_symbol(SymbolId f) const;
  const FunctionValue* function_value(SymbolId f) const;

  /// Applies a function symbol to domain elements. For constructors the
  /// result is the formed term, or nullopt when it leaves the active domain.
  /// Interpreted functions are total and never return nullopt.
  std::optional<ElemId> apply_function(SymbolId f, std::span<const ElemId> args) const;

  // --- whole-structure helpers ----------------------------------------------
  /// Copy with the given defined-predicate values replacing existing ones.
  Structure with_predicates(const std::map<SymbolId, Relation>& values) const;
  /// Copy without the given predicate symbols.
  Structure without_predicates(const std::vector<SymbolId>& preds) const;

 private:
  Structure() = default;
  void build_full_universe(std::uint64_t budget);
  void build_lists_universe(std::uint64_t budget);
  void register_domain_element(ElemId e);
  ElemId numeral_element(std::uint64_t value) const;

  Form form_ = Form::kExtensional;
  Vocabulary vocab_;

  std::vector<ElemId> domain_;
  std::vector<bool> in_domain_;  // by ElemId

  // Extensional.
  std::vector<std::string> names_;
  std::map<std::string, ElemId> by_name_;

  // Term-generated.
  ConstructorSet cf_;
  int depth_bound_ = 0;
  UniverseRestriction restriction_ = UniverseRestriction::kNone;
  TermPool pool_;
  std::map<SymbolId, std::vector<ElemId>> functor_elems_;
  std::map<std::uint64_t, std::vector<ElemId>> arg_index_;  // (f,pos,arg) packed
  std::map<std::uint64_t, ElemId> numerals_;                // value -> element

  std::map<SymbolId, Relation> preds_;
  std::map<SymbolId, ElemId> consts_;
  std::map<SymbolId, FunctionValue> funcs_;
};

/// Tarskian evaluation of a term in a structure under a variable assignment.
/// Throws DepthExceededError when a constructor application leaves a
/// term-generated domain, UnknownSymbolError for unassigned variables or
/// uninterpreted symbols.
ElemId evaluate_term(const Structure& m,
                     const std::map<std::string, ElemId>& assignment,
                     const Term& t);

}  // namespace defcheck
