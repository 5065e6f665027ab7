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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "defcheck/errors.hpp"
#include "defcheck/oracle.hpp"
#include "defcheck/parser.hpp"
#include "support.hpp"

using namespace defcheck;
using namespace defcheck::test;

TEST_CASE("the brute-force oracle confirms minimal satisfaction of reachability") {
  CHECK(brute_force_minimal_check(ex1_structure(), reach_definition()));

  Structure extra = parse_structure(R"(
domain: a, b, c.
pred g/2 = { (a,b), (b,a), (c,c) }.
pred r/2 = { (a,a), (b,b), (c,c), (a,b), (b,a), (a,c), (b,c) }.
)");
  CHECK_FALSE(brute_force_minimal_check(extra, reach_definition()));

  Structure missing = parse_structure(R"(
domain: a, b, c.
pred g/2 = { (a,b), (b,a), (c,c) }.
pred r/2 = { (a,b) }.
)");
  CHECK_FALSE(brute_force_minimal_check(missing, reach_definition()));
}

TEST_CASE("the brute-force oracle rejects unsupported inputs") {
  Structure tg = parse_structure("universe: constructors nil depth 0.\npred p/1 = { }.\n");
  CHECK_THROWS_AS(brute_force_minimal_check(tg, parse_definition("p(nil).\n")),
                  UnsupportedFormError);
  Structure m = ex1_structure();
  CHECK_THROWS_AS(
      brute_force_minimal_check(m, parse_definition("r(X,Y) :- not g(X,Y).\n")),
      UnsupportedFormError);
  OracleOptions tiny;
  tiny.candidate_budget = 4;  // r/2 over three elements needs 2^9 candidates
  CHECK_THROWS_AS(brute_force_minimal_check(m, reach_definition(), tiny),
                  BudgetExceededError);
}

TEST_CASE("oracle and engine agree on random inputs") {
  std::mt19937 rng(61);
  int positives = 0;
  for (int trial = 0; trial < 150; ++trial) {
    Definition d = random_definition(rng);
    Structure m = random_param_structure(rng, 2, d, true);
    if (trial % 2 == 0) m = unique_expansion(d, m).structure;
    const bool oracle = brute_force_minimal_check(m, d);
    const bool engine = satisfies_def(m, d).holds;
    CHECK(oracle == engine);
    positives += oracle ? 1 : 0;
  }
  CHECK(positives >= 40);  // both verdicts genuinely occur
}

TEST_CASE("oracle and engine agree on an exhaustive single-rule sweep") {
  // All single-rule definitions with bodies of at most one literal from a
  // small pool, against every structure over a two-element domain.
  const std::vector<std::string> heads = {"p(X)", "q(X,Y)", "q(X,X)"};
  const std::vector<std::string> bodies = {"",          "p(X)",  "p(Y)",
                                           "q(X,Y)",    "q(Y,X)", "q(Y,Y)",
                                           "X \\== Y",  "X = Y",  "true"};
  for (const std::string& head : heads) {
    for (const std::string& body : bodies) {
      const std::string text =
          body.empty() ? head + ".\n" : head + " :- " + body + ".\n";
      Definition d = parse_definition(text);
      // Enumerate all assignments of p/1 and q/2 over {a, b}.
      for (int pv = 0; pv < 4; ++pv) {
        for (int qv = 0; qv < 16; ++qv) {
          Vocabulary vocab;
          Structure m = Structure::make_extensional(vocab, {"a", "b"});
          Relation p_rel, q_rel;
          for (int i = 0; i < 2; ++i)
            if (pv & (1 << i)) p_rel.insert(Tuple{static_cast<ElemId>(i)});
          for (int i = 0; i < 4; ++i)
            if (qv & (1 << i))
              q_rel.insert(Tuple{static_cast<ElemId>(i / 2), static_cast<ElemId>(i % 2)});
          m.set_predicate("p", 1, std::move(p_rel));
          m.set_predicate("q", 2, std::move(q_rel));
          CHECK(brute_force_minimal_check(m, d) == satisfies_def(m, d).holds);
        }
      }
    }
  }
}

TEST_CASE("completion of the reachability definition renders as expected") {
  CompletionTheory ct = clark_completion(reach_definition());
  REQUIRE(ct.equivalences().size() == 1);
  CHECK(ct.equivalences()[0].first == "r/2");
  CHECK(ct.equivalences()[0].second ==
        "r(X1,X2) <-> g(X1,X2) | exists Y. (r(X1,Y) & g(Y,X2))");
}

TEST_CASE("completion of the sibling definition") {
  CompletionTheory ct = clark_completion(parse_definition(kSiblingRule));
  REQUIRE(ct.equivalences().size() == 1);
  CHECK(ct.equivalences()[0].second ==
        "sibling(X1,X2) <-> exists P. (child_of(X1,P) & child_of(X2,P) & X1 != X2)");
}

TEST_CASE("completion of a single ground fact is an equality") {
  CompletionTheory ct = clark_completion(parse_definition("p(a).\n"));
  REQUIRE(ct.equivalences().size() == 1);
  CHECK(ct.equivalences()[0].second == "p(X1) <-> X1 = a");
}

TEST_CASE("completion models of reachability include the non-minimal ones") {
  // By hand from the fixpoint equation R = G u (R;G) over the example edges:
  // the extras (a,c) and (b,c) are independently self-supporting via the
  // loop at c, and (c,a),(c,b) support each other through the 2-cycle on
  // a,b. That gives 4 x 2 = 8 supported assignments.
  Structure params = parse_structure(R"(
domain: a, b, c.
pred g/2 = { (a,b), (b,a), (c,c) }.
)");
  CompletionTheory ct = clark_completion(reach_definition());
  const auto models = enumerate_completion_models(ct, params);
  CHECK(models.size() == 8);

  const Relation base = relation_of(
      params, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "a"}});
  Relation footnote = base;
  footnote.insert(tuple_of(params, {"a", "c"}));
  footnote.insert(tuple_of(params, {"b", "c"}));

  bool saw_least = false, saw_footnote = false;
  for (const Interpretation& model : models) {
    const Relation& r = model.at("r/2");
    for (const Tuple& t : base.tuples()) CHECK(r.contains(t));
    saw_least = saw_least || r == base;
    saw_footnote = saw_footnote || r == footnote;
  }
  CHECK(saw_least);
  CHECK(saw_footnote);

  // The definitional reading accepts exactly one of the eight.
  int accepted = 0;
  for (const Interpretation& model : models) {
    Structure m = params;
    m.set_predicate("r", 2, model.at("r/2"));
    accepted += satisfies_def(m, reach_definition()).holds ? 1 : 0;
  }
  CHECK(accepted == 1);
}

TEST_CASE("a non-recursive completion has exactly one model") {
  Structure params = parse_structure(R"(
domain: tessa, jonah, david.
pred child_of/2 = { (tessa,david), (jonah,david) }.
)");
  CompletionTheory ct = clark_completion(parse_definition(kSiblingRule));
  const auto models = enumerate_completion_models(ct, params);
  REQUIRE(models.size() == 1);
  CHECK(models[0].at("sibling/2") ==
        relation_of(params, {{"tessa", "jonah"}, {"jonah", "tessa"}}));
}

TEST_CASE("the least fixpoint always satisfies its own completion") {
  std::mt19937 rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    Definition d = random_definition(rng);
    Structure params = random_param_structure(rng, 2, d, false);
    Expansion e = unique_expansion(d, params);
    CompletionTheory ct = clark_completion(d);
    const auto models = enumerate_completion_models(ct, params);
    bool found = false;
    for (const Interpretation& model : models) {
      bool same = true;
      for (const std::string& key : d.defined()) {
        const auto slash = key.rfind('/');
        const SymbolId p = e.structure.vocabulary().find(
            SymbolKind::kPredicate, key.substr(0, slash),
            std::stoi(key.substr(slash + 1)));
        same = same && model.at(key) == e.structure.predicate_value(p);
      }
      found = found || same;
    }
    CHECK(found);
  }
}

TEST_CASE("negation is out of scope for the completion oracle") {
  CHECK_THROWS_AS(clark_completion(parse_definition("p(X) :- not q(X,X).\n")),
                  UnsupportedFormError);
}

TEST_CASE("the entailment gap between the two readings of the member rules") {
  Program p = parse_program(kMemberProgram);
  const std::vector<Atom> atoms = {
      parse_literal("member(0,[1,2,3])").atom,
      parse_literal("member(1,[1,2,3])").atom,
      parse_literal("unrelated(0)").atom,
  };
  GapReport report = horn_entailment_gap_report(p, atoms, 4);
  CHECK(report.all_true_model_verified);
  REQUIRE(report.rows.size() == 3);

  CHECK(report.rows[0].accepted);
  CHECK_FALSE(report.rows[0].in_lhm);
  CHECK_FALSE(report.rows[0].horn_entails_atom);
  CHECK_FALSE(report.rows[0].horn_entails_negation);

  CHECK(report.rows[1].accepted);
  CHECK(report.rows[1].in_lhm);
  CHECK(report.rows[1].horn_entails_atom);
  CHECK_FALSE(report.rows[1].horn_entails_negation);

  CHECK_FALSE(report.rows[2].accepted);
}
