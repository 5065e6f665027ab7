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
#include <set>

#include "defcheck/engine.hpp"
#include "defcheck/errors.hpp"
#include "defcheck/herbrand.hpp"
#include "defcheck/isomorphism.hpp"
#include "defcheck/parser.hpp"
#include "support.hpp"

using namespace defcheck;
using namespace defcheck::test;

TEST_CASE("term universe of a constructor set without constants is empty") {
  ConstructorSet cf;
  cf.add("cons", 2);
  for (int k = 0; k <= 3; ++k) CHECK(herbrand_universe(cf, k).empty());
}

TEST_CASE("term universe of a single constant") {
  ConstructorSet cf;
  cf.add("nil", 0);
  const auto u = herbrand_universe(cf, 5);
  REQUIRE(u.size() == 1);
  CHECK(u[0] == make_nil());
}

TEST_CASE("term universe of {0, cons/2} at depth 1") {
  // By hand: depth 0 gives the constant 0, depth 1 adds cons(0,0).
  ConstructorSet cf;
  cf.add("0", 0);
  cf.add("cons", 2);
  const auto u = herbrand_universe(cf, 1);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == Term::constant("0"));
  CHECK(u[1] == Term::apply("cons", {Term::constant("0"), Term::constant("0")}));
}

TEST_CASE("term universe is monotone in the depth bound") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ConstructorSet cf;
    std::uniform_int_distribution<int> consts(0, 2), functors(0, 1);
    const int nc = consts(rng);
    for (int i = 0; i < nc; ++i) cf.add("c" + std::to_string(i), 0);
    if (functors(rng)) cf.add("f", 1);
    if (functors(rng)) cf.add("g", 2);
    std::vector<Term> prev;
    for (int k = 0; k <= 3; ++k) {
      const auto u = herbrand_universe(cf, k);
      const std::set<Term> now(u.begin(), u.end());
      for (const Term& t : prev) CHECK(now.count(t) == 1);
      CHECK(u.empty() == !cf.has_constants());
      prev = u;
    }
  }
}

TEST_CASE("interpreted product evaluates over the numeral constructors") {
  Structure m = parse_structure(
      "universe: constructors nil, cons/2, 0..30 depth 1.\n"
      "func times/2 = builtin product default nil.\n");
  CHECK(m.element_name(evaluate_term(m, {}, parse_term("5*6"))) == "30");
  CHECK(m.element_name(evaluate_term(m, {}, parse_term("[]*2"))) == "[]");
  CHECK(m.element_name(evaluate_term(m, {}, parse_term("times(2,[])"))) == "[]");
}

TEST_CASE("variable lookup under an assignment") {
  Structure m = ex1_structure();
  const ElemId a = *m.find_element("a");
  CHECK(evaluate_term(m, {{"X", a}}, Term::variable("X")) == a);
  CHECK_THROWS_AS(evaluate_term(m, {}, Term::variable("X")), UnknownSymbolError);
}

TEST_CASE("constructor application beyond the depth bound") {
  Structure m = parse_structure(
      "universe: constructors nil, cons/2, 0..1 depth 1.\n");
  CHECK(m.find_term(parse_term("cons(0,0)")).has_value());
  CHECK_THROWS_AS(evaluate_term(m, {}, parse_term("cons(0,cons(0,0))")),
                  DepthExceededError);
  CHECK_THROWS_AS(evaluate_term(m, {}, parse_term("foo(0)")), UnknownSymbolError);
}

TEST_CASE("literal evaluation in the reachability example") {
  Structure m = ex1_structure();
  CHECK(evaluate_literal(m, {}, parse_literal("g(a,b)")));
  CHECK_FALSE(evaluate_literal(m, {}, parse_literal("g(a,c)")));
  CHECK(evaluate_literal(m, {}, parse_literal("true")));
  CHECK_FALSE(evaluate_literal(m, {}, parse_literal("false")));
  const ElemId a = *m.find_element("a");
  CHECK_FALSE(evaluate_literal(m, {{"X", a}, {"Y", a}},
                               Literal::neq(Term::variable("X"), Term::variable("Y"))));
  CHECK(evaluate_literal(m, {{"X", a}, {"Y", a}},
                         Literal::eq(Term::variable("X"), Term::variable("Y"))));
}

TEST_CASE("isomorphism: reflexivity on the reachability structure") {
  Structure m = ex1_structure();
  Vocabulary sigma;
  sigma.add_predicate("g", 2);
  sigma.add_predicate("r", 2);
  auto bij = find_isomorphism(m, m, sigma);
  REQUIRE(bij.has_value());
  for (ElemId e = 0; e < m.domain_size(); ++e) CHECK((*bij)(e) == e);
}

TEST_CASE("isomorphism: renamed copy is found and verified") {
  Structure m = ex1_structure();
  Structure n = rename_extensional(m, {"x", "y", "z"});
  Vocabulary sigma;
  sigma.add_predicate("g", 2);
  sigma.add_predicate("r", 2);
  auto bij = find_isomorphism(m, n, sigma);
  REQUIRE(bij.has_value());
  // Pointwise image check of g under the bijection.
  for (const Tuple& t : pred_value(m, "g", 2).tuples()) {
    Tuple image = {(*bij)(t[0]), (*bij)(t[1])};
    CHECK(pred_value(n, "g", 2).contains(image));
  }
}

TEST_CASE("isomorphism: cardinality mismatch yields no bijection") {
  Vocabulary v;
  Structure m = Structure::make_extensional(v, {"a", "b", "c"});
  m.set_predicate("p", 1, {});
  Vocabulary w;
  Structure n = Structure::make_extensional(w, {"a", "b"});
  n.set_predicate("p", 1, {});
  Vocabulary sigma;
  sigma.add_predicate("p", 1);
  CHECK_FALSE(find_isomorphism(m, n, sigma).has_value());
}

TEST_CASE("isomorphism: term-generated structures are rejected") {
  Structure tg = parse_structure("universe: constructors nil depth 0.\n");
  Vocabulary sigma;
  CHECK_THROWS_AS(find_isomorphism(tg, tg, sigma), UnsupportedFormError);
}

TEST_CASE("every domain permutation yields an isomorphic structure") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 4);
    const std::size_t n = size(rng);
    Structure m = random_structure(rng, n, {"c"});
    std::vector<ElemId> perm(n);
    for (ElemId e = 0; e < n; ++e) perm[e] = e;
    std::shuffle(perm.begin(), perm.end(), rng);
    Structure p = permute_extensional(m, perm);
    Vocabulary sigma;
    sigma.add_predicate("p", 1);
    sigma.add_predicate("q", 2);
    sigma.add_function("c", 0);
    CHECK(find_isomorphism(m, p, sigma).has_value());
    // Symmetry: the inverse direction succeeds as well.
    CHECK(find_isomorphism(p, m, sigma).has_value());
  }
}

TEST_CASE("isomorphism existence is symmetric on independent structures") {
  std::mt19937 rng(13);
  Vocabulary sigma;
  sigma.add_predicate("p", 1);
  sigma.add_predicate("q", 2);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 3);
    const std::size_t n = size(rng);
    Structure a = random_structure(rng, n);
    Structure b = random_structure(rng, n);
    CHECK(find_isomorphism(a, b, sigma).has_value() ==
          find_isomorphism(b, a, sigma).has_value());
  }
}

TEST_CASE("universe axiom holds for the structure named by three constants") {
  Structure m = parse_structure(R"(
domain: tessa, jonah, david.
const tessa = tessa.
const jonah = jonah.
const david = david.
pred child_of/2 = { (tessa, david), (jonah, david) }.
)");
  ConstructorSet cf;
  cf.add("tessa", 0);
  cf.add("jonah", 0);
  cf.add("david", 0);
  const auto verdict = satisfies_herbrand_axiom(m, cf);
  CHECK(verdict.holds);
  CHECK_FALSE(verdict.truncated);
}

TEST_CASE("universe axiom holds for the product structure despite the extra functor") {
  Structure m = parse_structure(kTimesStructure);
  ConstructorSet cf;
  cf.add("nil", 0);
  cf.add("cons", 2);
  for (int i = 0; i <= 30; ++i) cf.add(std::to_string(i), 0);
  const auto verdict = satisfies_herbrand_axiom(m, cf);
  CHECK(verdict.holds);
  CHECK(verdict.truncated);  // finite cut of an infinite term universe
}

TEST_CASE("universe axiom fails for the one-element collapse structure") {
  // Every constant names the same element; the data structures collapse.
  Structure m = parse_structure(R"(
domain: a.
const nil = a.
const c0 = a.
const c1 = a.
func cons/2 = { } default a.
pred member/2 = { (a,a) }.
)");
  ConstructorSet consts_only;
  consts_only.add("nil", 0);
  consts_only.add("c0", 0);
  consts_only.add("c1", 0);
  CHECK_FALSE(satisfies_herbrand_axiom(m, consts_only).holds);

  ConstructorSet with_functor = consts_only;
  with_functor.add("cons", 2);
  CHECK_FALSE(satisfies_herbrand_axiom(m, with_functor).holds);
}

TEST_CASE("universe axiom fails for a different constructor set") {
  Structure tg = parse_structure("universe: constructors nil, cons/2 depth 2.\n");
  ConstructorSet other;
  other.add("nil", 0);
  CHECK_FALSE(satisfies_herbrand_axiom(tg, other).holds);
  ConstructorSet same;
  same.add("nil", 0);
  same.add("cons", 2);
  CHECK(satisfies_herbrand_axiom(tg, same).holds);
}

TEST_CASE("universe axiom verdict is isomorphism-invariant") {
  std::mt19937 rng(17);
  ConstructorSet cf;
  cf.add("c0", 0);
  cf.add("c1", 0);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<std::size_t> size(1, 3);
    const std::size_t n = size(rng);
    Structure m = random_structure(rng, n, {"c0", "c1"});
    std::vector<ElemId> perm(n);
    for (ElemId e = 0; e < n; ++e) perm[e] = e;
    std::shuffle(perm.begin(), perm.end(), rng);
    Structure p = permute_extensional(m, perm);
    CHECK(satisfies_herbrand_axiom(m, cf).holds == satisfies_herbrand_axiom(p, cf).holds);
  }
}
