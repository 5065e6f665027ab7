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

#include "defcheck/errors.hpp"
#include "defcheck/parser.hpp"
#include "defcheck/printer.hpp"
#include "support.hpp"

using namespace defcheck;
using namespace defcheck::test;

TEST_CASE("the two membership clauses parse and desugar") {
  Program p = parse_program(kMemberRules);
  REQUIRE(p.definition().rules().size() == 2);
  CHECK(p.definition().defined() == std::set<std::string>{"member/2"});
  const Rule& base = p.definition().rules()[0];
  CHECK(base.head.args[1] ==
        Term::apply("cons", {Term::variable("X"), Term::variable("T")}));
  CHECK(base.body.empty());
  // Without a directive the constructor set is inferred from the rules:
  // only the list functor occurs, so there is no constant at all.
  CHECK(p.constructors().contains("cons", 2));
  CHECK_FALSE(p.constructors().has_constants());
}

TEST_CASE("disequality spellings all parse to the same literal") {
  for (const char* op : {"\\==", "\\=", "!="}) {
    const std::string text =
        std::string("sibling(X,Y) :- child_of(X,P), child_of(Y,P), X ") + op + " Y.\n";
    Definition d = parse_definition(text);
    REQUIRE(d.rules().size() == 1);
    const Rule& r = d.rules()[0];
    REQUIRE(r.body.size() == 3);
    CHECK(r.body[2].kind == LiteralKind::kNeq);
    CHECK(r.body[2].terms[0] == Term::variable("X"));
    CHECK(r.body[2].terms[1] == Term::variable("Y"));
  }
}

TEST_CASE("list literals desugar to cons/nil chains") {
  CHECK(parse_term("[1,2,3]") ==
        make_list({Term::constant("1"), Term::constant("2"), Term::constant("3")}));
  CHECK(parse_term("[H|T]") ==
        Term::apply("cons", {Term::variable("H"), Term::variable("T")}));
  CHECK(parse_term("[1,2|T]") ==
        make_cons(Term::constant("1"), make_cons(Term::constant("2"), Term::variable("T"))));
  CHECK(parse_term("[]") == make_nil());
  // Round trip through the printer.
  CHECK(parse_term(parse_term("[1,2,3]").to_string()) == parse_term("[1,2,3]"));
  CHECK(parse_term("[1|2]").to_string() == "[1|2]");
}

TEST_CASE("arithmetic sugar parses to the interpreted functors") {
  CHECK(parse_term("H*P") ==
        Term::apply("times", {Term::variable("H"), Term::variable("P")}));
  CHECK(parse_term("1+2") ==
        Term::apply("plus", {Term::constant("1"), Term::constant("2")}));
}

TEST_CASE("malformed input reports a position") {
  try {
    parse_program("p(X :-\n");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.span().line == 1);
    CHECK(e.span().column >= 5);
  }
}

TEST_CASE("a symbol cannot be used at two arities") {
  CHECK_THROWS_AS(parse_program("p(a).\np(a,b).\n"), ParseError);
  CHECK_THROWS_AS(parse_program("p(f(a)).\np(f(a,b)).\n"), ParseError);
  CHECK_THROWS_AS(parse_program("q :- p.\nq :- p(a).\n"), ParseError);
}

TEST_CASE("a name cannot be both a predicate and a function") {
  CHECK_THROWS_AS(parse_program("p(a).\nq(X) :- r(p(X)).\n"), ParseError);
}

TEST_CASE("the universe directive with numeral range sugar") {
  Program p = parse_program(kMemberProgram);
  CHECK(p.has_declared_universe());
  CHECK(p.constructors().contains("nil", 0));
  CHECK(p.constructors().contains("cons", 2));
  for (int i = 0; i <= 3; ++i) CHECK(p.constructors().contains(std::to_string(i), 0));
  CHECK_FALSE(p.constructors().contains("4", 0));
}

TEST_CASE("module blocks declare a partition") {
  Program p = parse_program(kFamilyModules);
  REQUIRE(p.modules().size() == 2);
  CHECK(p.modules()[0].name == "child_of");
  CHECK(p.modules()[0].rule_indices.size() == 2);
  CHECK(p.modules()[1].name == "sibling");
  CHECK(p.modules()[1].rule_indices.size() == 1);
}

TEST_CASE("plain rules cannot be mixed with module blocks") {
  CHECK_THROWS_AS(parse_program(R"(
#module m { p(a). }
q(b).
)"),
                  ParseError);
}

TEST_CASE("negated equality atoms are rejected, not guessed at") {
  CHECK_THROWS_AS(parse_program("p(X) :- not X = Y.\n"), ParseError);
  CHECK_THROWS_AS(parse_program("p(X) :- not true.\n"), ParseError);
}

TEST_CASE("facts are rules with empty bodies") {
  Program p = parse_program("child_of(tessa,david).\n");
  REQUIRE(p.definition().rules().size() == 1);
  CHECK(p.definition().rules()[0].is_fact());
}

TEST_CASE("the reachability example structure parses") {
  Structure m = ex1_structure();
  CHECK(m.is_extensional());
  CHECK(m.domain_size() == 3);
  CHECK(pred_value(m, "g", 2).size() == 3);
  CHECK(pred_value(m, "r", 2).size() == 5);
  CHECK(pred_value(m, "g", 2).contains(tuple_of(m, {"a", "b"})));
}

TEST_CASE("capitalised predicate names are fine in structure files") {
  Structure m = parse_structure(R"(
domain: a, b, c.
pred G/2 = { (a,b), (b,a), (c,c) }.
)");
  CHECK(pred_value(m, "G", 2).size() == 3);
}

TEST_CASE("the interpreted-product structure declaration parses") {
  Structure m = parse_structure(kTimesStructure);
  CHECK_FALSE(m.is_extensional());
  CHECK(m.restriction() == UniverseRestriction::kLists);
  CHECK(m.depth_bound() == 4);
  CHECK(m.find_term(parse_term("[5,3,2]")).has_value());
  CHECK_FALSE(m.find_term(parse_term("cons(cons(1,1),nil)")).has_value());
}

TEST_CASE("an empty domain is a syntax error") {
  CHECK_THROWS_AS(parse_structure("domain: .\n"), ParseError);
}

TEST_CASE("partial function tables without a default are rejected") {
  CHECK_THROWS_AS(parse_structure(R"(
domain: a, b.
func f/1 = { (a) -> b }.
)"),
                  SemanticError);
  // With a default the same table is total.
  Structure m = parse_structure(R"(
domain: a, b.
func f/1 = { (a) -> b } default a.
)");
  const SymbolId f = m.vocabulary().find(SymbolKind::kFunction, "f", 1);
  CHECK(*m.apply_function(f, Tuple{*m.find_element("b")}) == *m.find_element("a"));
}

TEST_CASE("tuples over unknown elements are rejected") {
  CHECK_THROWS_AS(parse_structure(R"(
domain: a, b.
pred p/1 = { (z) }.
)"),
                  ParseError);
  CHECK_THROWS_AS(parse_structure(R"(
universe: constructors nil, cons/2, 0..1 depth 1.
pred p/1 = { (cons(0,cons(0,0))) }.
)"),
                  ParseError);
}

TEST_CASE("parse of a pretty-printed program is a fixpoint") {
  for (const char* text : {kMemberProgram, kFamilyModules, kCompressProgram,
                           kReachRules, kListproductRules}) {
    Program p1 = parse_program(text);
    const std::string printed = print_program(p1);
    Program p2 = parse_program(printed);
    CHECK(program_equal(p1, p2));
    CHECK(print_program(p2) == printed);
  }
}

TEST_CASE("parse of a pretty-printed structure is a fixpoint") {
  const char* small_tg = R"(
universe: constructors nil, cons/2, 0..2 depth 2.
func times/2 = builtin product default nil.
pred member/2 = { (0, [0]), (1, [1,0]) }.
)";
  const char* extensional = R"(
domain: a, b, c.
const k = b.
func f/2 = { (a,a) -> b, (a,b) -> c } default a.
pred p/1 = { (c), (a) }.
pred q/2 = { (a,b) }.
)";
  for (const char* text : {kReachStructure, small_tg, extensional}) {
    Structure m1 = parse_structure(text);
    const std::string printed = print_structure(m1);
    Structure m2 = parse_structure(printed);
    CHECK(print_structure(m2) == printed);
  }
}

TEST_CASE("query literals parse in both polarities") {
  Literal pos = parse_literal("member(1,[1,2,3])");
  CHECK(pos.kind == LiteralKind::kAtom);
  CHECK(pos.atom.pred_key() == "member/2");
  Literal neg = parse_literal("not member(0,[1,2,3])");
  CHECK(neg.kind == LiteralKind::kNegAtom);
  CHECK(neg.atom.args[1] == parse_term("[1,2,3]"));
}
