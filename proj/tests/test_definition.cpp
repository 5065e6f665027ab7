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

#include <algorithm>
#include <random>

#include "defcheck/definition.hpp"
#include "defcheck/errors.hpp"
#include "defcheck/parser.hpp"
#include "support.hpp"

using namespace defcheck;
using namespace defcheck::test;

TEST_CASE("classify: sibling is defined in terms of child_of") {
  Definition d = parse_definition(kSiblingRule);
  CHECK(d.defined() == std::set<std::string>{"sibling/2"});
  CHECK(d.parameter_predicates() == std::set<std::string>{"child_of/2"});
}

TEST_CASE("classify: reachability is defined in terms of the edge relation") {
  Definition d = reach_definition();
  CHECK(d.defined() == std::set<std::string>{"r/2"});
  CHECK(d.parameter_predicates() == std::set<std::string>{"g/2"});
}

TEST_CASE("classify: list product has the interpreted functor among its parameters") {
  Definition d = parse_definition(kListproductRules);
  CHECK(d.defined() == std::set<std::string>{"listproduct/2"});
  std::set<std::string> fn_params;
  for (const SymbolRef& s : d.parameters())
    if (s.kind == SymbolKind::kFunction) fn_params.insert(s.key());
  CHECK(fn_params == std::set<std::string>{"times/2", "cons/2", "nil/0", "1/0"});
}

TEST_CASE("classify rejects an empty rule set") {
  CHECK_THROWS_AS(Definition::classify({}), EmptyDefinitionError);
}

TEST_CASE("classify is order-independent") {
  std::mt19937 rng(3);
  Definition d = parse_definition(R"(
member(X,[X|T]).
member(X,[H|T]) :- member(X,T).
compress([],[]).
compress([X|T],[X|T1]) :- compress(T,T1), not member(X,T1).
compress([X|T],T1) :- compress(T,T1), member(X,T1).
)");
  std::vector<Rule> rules = d.rules();
  for (int i = 0; i < 5; ++i) {
    std::shuffle(rules.begin(), rules.end(), rng);
    Definition shuffled = Definition::classify(rules);
    CHECK(shuffled.defined() == d.defined());
    CHECK(shuffled.parameters() == d.parameters());
  }
}

TEST_CASE("inductiveness via dependency-graph cycles") {
  CHECK(is_inductive(reach_definition()));
  CHECK_FALSE(is_inductive(parse_definition(kSiblingRule)));
  // Simultaneous induction of two predicates.
  Definition even_odd = parse_definition(R"(
even(0).
odd(s(N)) :- even(N).
even(s(N)) :- odd(N).
)");
  CHECK(is_inductive(even_odd));
}

TEST_CASE("dependency graph carries polarity") {
  Definition d = parse_definition(
      "compress([X|T],[X|T1]) :- compress(T,T1), not member(X,T1).\n");
  const DependencyGraph g = DependencyGraph::build(d);
  bool saw_negative = false, saw_positive = false;
  for (const auto& e : g.edges()) {
    if (e.from == "member/2" && e.to == "compress/2") saw_negative = e.negative;
    if (e.from == "compress/2" && e.to == "compress/2") saw_positive = !e.negative;
  }
  CHECK(saw_negative);
  CHECK(saw_positive);
}

TEST_CASE("stratification of the duplicate-removal program") {
  Definition d = parse_definition(R"(
member(X,[X|T]).
member(X,[H|T]) :- member(X,T).
compress([],[]).
compress([X|T],[X|T1]) :- compress(T,T1), not member(X,T1).
compress([X|T],T1) :- compress(T,T1), member(X,T1).
)");
  const auto strata = stratify(d);
  REQUIRE(strata.size() == 2);
  CHECK(strata[0] == std::vector<std::string>{"member/2"});
  CHECK(strata[1] == std::vector<std::string>{"compress/2"});
}

TEST_CASE("a single recursive predicate is one stratum") {
  const auto strata = stratify(reach_definition());
  REQUIRE(strata.size() == 1);
  CHECK(strata[0] == std::vector<std::string>{"r/2"});
}

TEST_CASE("negative self-dependency is not stratified") {
  Definition d = parse_definition("p :- not p.\n");
  CHECK_THROWS_WITH_AS(stratify(d), doctest::Contains("p/0"), NotStratifiedError);
}

TEST_CASE("negation through a longer cycle reports the cycle") {
  Definition d = parse_definition(R"(
p(X) :- q(X).
q(X) :- not p(X).
)");
  try {
    stratify(d);
    FAIL("expected NotStratifiedError");
  } catch (const NotStratifiedError& e) {
    CHECK(e.cycle().size() >= 3);
    CHECK(std::count(e.cycle().begin(), e.cycle().end(), "p/1") >= 1);
    CHECK(std::count(e.cycle().begin(), e.cycle().end(), "q/1") >= 1);
  }
}

TEST_CASE("negation-free definitions always stratify") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    Definition d = random_definition(rng);
    CHECK_NOTHROW(stratify(d));
  }
}

TEST_CASE("partition: the family split is a valid modularization") {
  Program p = parse_program(kFamilyModules);
  auto names = p.partition_names();
  const auto report = validate_partition(p.definition(), p.partition_rules(), &names);
  CHECK(report.ok);
  CHECK(report.violations.empty());
}

TEST_CASE("partition: scattering one predicate's rules is rejected") {
  Definition d = reach_definition();
  std::vector<std::vector<Rule>> parts = {{d.rules()[0]}, {d.rules()[1]}};
  const auto report = validate_partition(d, parts);
  CHECK_FALSE(report.ok);
  REQUIRE(report.violations.size() >= 1);
  CHECK(report.violations[0].kind == PartitionViolation::Kind::kRuleScatter);
}

TEST_CASE("partition: splitting simultaneous induction is rejected") {
  Definition d = parse_definition(R"(
even(0).
odd(s(N)) :- even(N).
even(s(N)) :- odd(N).
)");
  std::vector<Rule> evens, odds;
  for (const Rule& r : d.rules())
    (r.head.predicate == "even" ? evens : odds).push_back(r);
  const auto report = validate_partition(d, {evens, odds});
  CHECK_FALSE(report.ok);
  bool cycle = false;
  for (const auto& v : report.violations)
    cycle = cycle || v.kind == PartitionViolation::Kind::kCrossModuleCycle;
  CHECK(cycle);
}

TEST_CASE("partition: the trivial partition is always accepted") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    Definition d = random_definition(rng);
    CHECK(validate_partition(d, {d.rules()}).ok);
  }
}

TEST_CASE("partition: overlaps and omissions are not partitions") {
  Definition d = reach_definition();
  CHECK_THROWS_AS(validate_partition(d, {{d.rules()[0]}}), NotAPartitionError);
  CHECK_THROWS_AS(
      validate_partition(d, {d.rules(), {d.rules()[0]}}), NotAPartitionError);
}

TEST_CASE("accepted parts are well-formed definitions with cross-module parameters") {
  Program p = parse_program(kFamilyModules);
  auto names = p.partition_names();
  REQUIRE(validate_partition(p.definition(), p.partition_rules(), &names).ok);
  const Definition sibling = p.module_definition("sibling");
  CHECK(sibling.defined() == std::set<std::string>{"sibling/2"});
  CHECK(sibling.parameter_predicates() == std::set<std::string>{"child_of/2"});
  const Definition child_of = p.module_definition("child_of");
  CHECK(child_of.defined() == std::set<std::string>{"child_of/2"});
  CHECK(child_of.parameter_predicates().empty());
}
