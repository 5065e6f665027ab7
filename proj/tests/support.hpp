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

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "defcheck/definition.hpp"
#include "defcheck/engine.hpp"
#include "defcheck/parser.hpp"
#include "defcheck/structure.hpp"

namespace defcheck::test {

// --- worked examples used across the suites --------------------------------

inline const char* kReachRules = R"(
r(X,Y) :- g(X,Y).
r(X,Z) :- r(X,Y), g(Y,Z).
)";

inline const char* kReachStructure = R"(
domain: a, b, c.
pred g/2 = { (a,b), (b,a), (c,c) }.
pred r/2 = { (a,a), (b,b), (c,c), (a,b), (b,a) }.
)";

inline const char* kSiblingRule =
    "sibling(X,Y) :- child_of(X,P), child_of(Y,P), X \\== Y.\n";

inline const char* kFamilyProgram = R"(
#universe constructors: tessa, jonah, david.
sibling(X,Y) :- child_of(X,P), child_of(Y,P), X \== Y.
child_of(tessa,david).
child_of(jonah,david).
)";

inline const char* kFamilyModules = R"(
#universe constructors: tessa, jonah, david.
#module child_of {
  child_of(tessa,david).
  child_of(jonah,david).
}
#module sibling {
  sibling(X,Y) :- child_of(X,P), child_of(Y,P), X \== Y.
}
)";

inline const char* kMemberRules = R"(
member(X,[X|T]).
member(X,[H|T]) :- member(X,T).
)";

inline const char* kMemberProgram = R"(
#universe constructors: nil, cons/2, 0..3.
member(X,[X|T]).
member(X,[H|T]) :- member(X,T).
)";

inline const char* kCompressProgram = R"(
#universe constructors: nil, cons/2, 1..3.
member(X,[X|T]).
member(X,[H|T]) :- member(X,T).
compress([],[]).
compress([X|T],[X|T1]) :- compress(T,T1), not member(X,T1).
compress([X|T],T1) :- compress(T,T1), member(X,T1).
)";

inline const char* kListproductRules = R"(
listproduct([],1).
listproduct([H|T], H*P) :- listproduct(T,P).
)";

// M with the interpreted product functor, lists restricted so that the
// depth-4 universe stays enumerable.
inline const char* kTimesStructure = R"(
universe: constructors nil, cons/2, 0..30 depth 4 restrict lists.
func times/2 = builtin product default nil.
)";

inline Structure ex1_structure() { return parse_structure(kReachStructure); }

inline Definition reach_definition() { return parse_definition(kReachRules); }

// --- helpers ----------------------------------------------------------------

inline Tuple tuple_of(const Structure& m, const std::vector<std::string>& names) {
  Tuple t;
  for (const std::string& n : names) t.push_back(*m.find_element(n));
  return t;
}

inline Relation relation_of(const Structure& m,
                            const std::vector<std::vector<std::string>>& rows) {
  Relation rel;
  for (const auto& row : rows) rel.insert(tuple_of(m, row));
  return rel;
}

inline const Relation& pred_value(const Structure& m, const std::string& name, int arity) {
  return m.predicate_value(m.vocabulary().find(SymbolKind::kPredicate, name, arity));
}

/// Renames an extensional structure's domain by the permutation
/// new_names[i] = name of element i; interpretations carry over pointwise.
inline Structure rename_extensional(const Structure& m,
                                    const std::vector<std::string>& new_names) {
  Vocabulary vocab;
  Structure out = Structure::make_extensional(vocab, new_names);
  for (SymbolId id = 0; id < m.vocabulary().size(); ++id) {
    const Symbol& s = m.vocabulary().symbol(id);
    if (s.kind == SymbolKind::kPredicate) {
      if (!m.has_predicate(id)) continue;
      Relation rel;
      for (const Tuple& t : m.predicate_value(id).tuples()) {
        Tuple mapped;
        for (ElemId e : t) mapped.push_back(e);  // same indices, new names
        rel.insert(std::move(mapped));
      }
      out.set_predicate(s.name, s.arity, std::move(rel));
    } else if (s.arity == 0 && m.has_constant(id)) {
      out.set_constant(s.name, m.constant_value(id));
    } else if (const FunctionValue* fv = m.function_value(id)) {
      out.set_function_table(s.name, s.arity, fv->table, fv->default_value);
    }
  }
  return out;
}

/// Applies a domain permutation: element e becomes perm[e]. Tuples, constant
/// values and function graphs are mapped pointwise; element names keep their
/// positions (so the permuted structure genuinely differs unless trivial).
inline Structure permute_extensional(const Structure& m, const std::vector<ElemId>& perm) {
  Vocabulary vocab;
  std::vector<std::string> names;
  for (ElemId e = 0; e < m.domain_size(); ++e) names.push_back(m.element_name(e));
  Structure out = Structure::make_extensional(vocab, names);
  for (SymbolId id = 0; id < m.vocabulary().size(); ++id) {
    const Symbol& s = m.vocabulary().symbol(id);
    if (s.kind == SymbolKind::kPredicate) {
      if (!m.has_predicate(id)) continue;
      Relation rel;
      for (const Tuple& t : m.predicate_value(id).tuples()) {
        Tuple mapped;
        for (ElemId e : t) mapped.push_back(perm[e]);
        rel.insert(std::move(mapped));
      }
      out.set_predicate(s.name, s.arity, std::move(rel));
    } else if (s.arity == 0 && m.has_constant(id)) {
      out.set_constant(s.name, perm[m.constant_value(id)]);
    } else if (const FunctionValue* fv = m.function_value(id)) {
      std::unordered_map<Tuple, ElemId, TupleHash> table;
      for (const auto& [key, value] : fv->table) {
        Tuple mapped;
        for (ElemId e : key) mapped.push_back(perm[e]);
        table[mapped] = perm[value];
      }
      ElemId dflt = fv->default_value == kNoElem ? kNoElem : perm[fv->default_value];
      out.set_function_table(s.name, s.arity, std::move(table), dflt);
    }
  }
  return out;
}

// --- random generation for property tests -----------------------------------

inline Relation random_relation(std::mt19937& rng, std::size_t domain, int arity,
                                double density = 0.4) {
  Relation rel;
  std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  while (true) {
    if (coin(rng) < density) {
      Tuple t;
      for (std::size_t i : idx) t.push_back(static_cast<ElemId>(i));
      rel.insert(std::move(t));
    }
    std::size_t k = idx.size();
    while (k > 0) {
      if (++idx[k - 1] < domain) break;
      idx[k - 1] = 0;
      --k;
    }
    if (k == 0 || arity == 0) break;
  }
  return rel;
}

/// A random extensional structure interpreting p/1 and q/2 (and optionally
/// the constants named in `constants`).
inline Structure random_structure(std::mt19937& rng, std::size_t domain_size,
                                  const std::vector<std::string>& constants = {}) {
  Vocabulary vocab;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < domain_size; ++i)
    names.push_back(std::string(1, static_cast<char>('a' + i)));
  Structure m = Structure::make_extensional(vocab, names);
  m.set_predicate("p", 1, random_relation(rng, domain_size, 1));
  m.set_predicate("q", 2, random_relation(rng, domain_size, 2));
  std::uniform_int_distribution<std::size_t> pick(0, domain_size - 1);
  for (const std::string& c : constants)
    m.set_constant(c, static_cast<ElemId>(pick(rng)));
  return m;
}

/// A random negation-free definition over defined p/1, q/2 with parameter
/// predicates g/1, h/2 and variables X, Y.
inline Definition random_definition(std::mt19937& rng, int max_rules = 3) {
  std::uniform_int_distribution<int> nrules(1, max_rules);
  std::uniform_int_distribution<int> nlits(0, 2);
  std::uniform_int_distribution<int> pick_head(0, 1);
  std::uniform_int_distribution<int> pick_lit(0, 6);
  std::uniform_int_distribution<int> pick_var(0, 1);
  auto var = [&] { return Term::variable(pick_var(rng) ? "Y" : "X"); };
  std::vector<Rule> rules;
  const int n = nrules(rng);
  for (int i = 0; i < n; ++i) {
    Rule r;
    if (pick_head(rng))
      r.head = {"p", {var()}};
    else
      r.head = {"q", {var(), var()}};
    const int k = nlits(rng);
    for (int j = 0; j < k; ++j) {
      switch (pick_lit(rng)) {
        case 0: r.body.push_back(Literal::pos({"p", {var()}})); break;
        case 1: r.body.push_back(Literal::pos({"q", {var(), var()}})); break;
        case 2: r.body.push_back(Literal::pos({"g", {var()}})); break;
        case 3: r.body.push_back(Literal::pos({"h", {var(), var()}})); break;
        case 4: r.body.push_back(Literal::neq(var(), var())); break;
        case 5: r.body.push_back(Literal::eq(var(), var())); break;
        default: r.body.push_back(Literal::pos({"g", {var()}})); break;
      }
    }
    rules.push_back(std::move(r));
  }
  return Definition::classify(std::move(rules));
}

/// Structure interpreting every parameter predicate of `d` (drawn from the
/// random_definition pool g/1, h/2, p/1, q/2), plus the defined predicates
/// too when with_defined.
inline Structure random_param_structure(std::mt19937& rng, std::size_t domain_size,
                                        const Definition& d, bool with_defined) {
  Vocabulary vocab;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < domain_size; ++i)
    names.push_back(std::string(1, static_cast<char>('a' + i)));
  Structure m = Structure::make_extensional(vocab, names);
  auto add = [&](const std::string& key) {
    const auto slash = key.rfind('/');
    const int arity = std::stoi(key.substr(slash + 1));
    m.set_predicate(key.substr(0, slash), arity,
                    random_relation(rng, domain_size, arity));
  };
  for (const std::string& key : d.parameter_predicates()) add(key);
  if (with_defined)
    for (const std::string& key : d.defined()) add(key);
  return m;
}

inline std::vector<std::string> sorted_keys(const Interpretation& s) {
  std::vector<std::string> keys;
  for (const auto& [k, rel] : s)
    if (!rel.empty()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace defcheck::test
