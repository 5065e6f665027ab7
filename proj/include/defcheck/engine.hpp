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
#include <string>
#include <vector>

#include "defcheck/definition.hpp"
#include "defcheck/structure.hpp"

namespace defcheck {

/// Whether a result computed over a cut-off term universe coincides with
/// the result over the unbounded universe (restricted to the active domain).
struct ExactnessFlag {
  bool exact = true;
  std::string reason;

  static ExactnessFlag exact_result() { return {}; }
  static ExactnessFlag truncated(std::string why) { return {false, std::move(why)}; }
};

/// Candidate values for defined predicates, keyed by "name/arity".
using Interpretation = std::map<std::string, Relation>;

enum class EvalStrategy : std::uint8_t {
  kSemiNaive,  // delta-driven re-derivation
  kNaive,      // static grounding, full re-application per step
};

struct EvalOptions {
  EvalStrategy strategy = EvalStrategy::kSemiNaive;
  std::uint64_t instance_budget = 1ull << 24;
};

/// "Every rule is depth-non-increasing, head to body": each body term of a
/// defined-predicate atom (and each side of an (in)equality) is a syntactic
/// subterm of some head argument. Fixpoints of such definitions over a
/// subterm-closed finite sub-universe agree with the unbounded fixpoint on
/// all atoms over that sub-universe.
bool definition_subterm_closed(const Definition& d);

/// Truth of a body-style literal (predicate atom, negation, t, f, equality
/// or disequality) in a structure under an assignment. Predicate values are
/// read from the structure.
bool evaluate_literal(const Structure& m, const std::map<std::string, ElemId>& assignment,
                      const Literal& literal);

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

struct GroundLiteral {
  bool positive = true;
  std::string pred_key;
  Tuple args;
};

/// A rule instance with parameter atoms, (in)equalities and logical
/// constants already evaluated and simplified away; only literals over
/// defined predicates remain.
struct GroundRule {
  std::size_t rule_index = 0;
  std::string head_pred;
  Tuple head_args;
  std::vector<GroundLiteral> body;
};

struct Grounding {
  std::vector<GroundRule> rules;
  ExactnessFlag flag;
};

/// Instantiates all rules over the structure's domain. Instances whose
/// parameter part is false are dropped; constructor applications that leave
/// the domain surface in the exactness flag, never as a failure.
Grounding ground(const Definition& d, const Structure& m, const EvalOptions& opts = {});

// ---------------------------------------------------------------------------
// Fixpoints and traces
// ---------------------------------------------------------------------------

/// One all-rules bottom-up step: the heads of all ground rules whose bodies
/// hold in (m, s). Negated defined literals are read classically against s.
Interpretation immediate_consequence(const Definition& d, const Structure& m,
                                     const Interpretation& s,
                                     const EvalOptions& opts = {});

struct FiredInstance {
  std::size_t rule_index = 0;
  std::string head_pred;
  Tuple head_args;
};

struct TraceStep {
  int stratum = 0;
  Interpretation delta;  // atoms first derived at this step
  std::vector<FiredInstance> fired;
};

struct InductionTrace {
  std::vector<TraceStep> steps;
  Interpretation limit;
  ExactnessFlag flag;

  /// Union of the deltas of steps 0..upto (inclusive).
  Interpretation cumulative(std::size_t upto) const;
  /// 1-based step at which the atom was first derived, or nullopt.
  std::optional<std::size_t> first_derived_step(const std::string& pred_key,
                                                const Tuple& args) const;
};

/// Runs the induction process from empty defined predicates to the least
/// fixpoint, recording per-step deltas and fired rule instances. Stratified
/// definitions are traced stratum by stratum.
InductionTrace induction_process(const Definition& d, const Structure& params,
                                 const EvalOptions& opts = {});

/// Checks that `sequence` is a valid one-at-a-time derivation: every atom is
/// newly derivable from the atoms before it by a single rule application.
/// Negation-free definitions over enumerable domains only.
bool validate_derivation_sequence(const Definition& d, const Structure& params,
                                  const std::vector<Atom>& sequence,
                                  std::string* why = nullptr);

struct Expansion {
  Structure structure;
  ExactnessFlag flag;
};

/// The unique expansion of a parameter structure by least-fixpoint values of
/// all defined predicates, computed stratum by stratum. Existing values of
/// defined predicates in `params` are ignored and replaced.
Expansion unique_expansion(const Definition& d, const Structure& params,
                           const EvalOptions& opts = {});

// ---------------------------------------------------------------------------
// Satisfaction
// ---------------------------------------------------------------------------

struct FoCounterexample {
  std::size_t rule_index = 0;
  std::string instance;
};

/// Classical satisfaction: every ground rule instance, read as a material
/// implication, holds in m. m must interpret the defined predicates too.
bool satisfies_fo(const Structure& m, const Definition& d,
                  const EvalOptions& opts = {}, FoCounterexample* why = nullptr);

struct Verdict {
  bool holds = false;
  ExactnessFlag flag;
  std::string detail;
};

/// Definitional satisfaction, via the unique-expansion reduction: m's
/// defined-predicate values must equal the least fixpoint over m's
/// parameter values. The reduction is validated against the brute-force
/// minimality oracle in the test suite.
Verdict satisfies_def(const Structure& m, const Definition& d,
                      const EvalOptions& opts = {});

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

/// The least model over the program's constructor universe at the given
/// depth bound. Throws EmptyUniverseError when the constructor set has no
/// constants.
Expansion lhm(const Program& p, int depth_bound,
              UniverseRestriction restriction = UniverseRestriction::kNone,
              const EvalOptions& opts = {});

/// m is a model of the program: it satisfies the universe axiom for the
/// program's constructors and the definition. Programs without constructor
/// symbols (pure predicate definitions) have no universe component.
Verdict check_program_model(const Structure& m, const Program& p,
                            const EvalOptions& opts = {});

/// Truth of a ground literal in the program's least model at the given
/// depth bound; sound and complete for defined predicates. Evaluation runs
/// over the relevance closure of the literal when the definition is
/// depth-non-increasing (exact), over the full bounded universe otherwise.
Verdict entails_literal(const Program& p, const Literal& literal, int depth_bound,
                        const EvalOptions& opts = {});

struct SplitReport {
  PartitionReport partition;
  /// (1) m isomorphic to the least model; only checked for extensional m
  /// over constants-only constructor sets.
  std::optional<bool> isomorphic_to_lhm;
  /// (2) m satisfies the whole definition (plus the universe axiom).
  bool whole_holds = false;
  bool whole_def_only = false;  // definition component alone
  /// (3) m satisfies every declared module (plus the universe axiom).
  bool parts_hold = false;
  bool parts_def_only = false;
  std::vector<std::pair<std::string, bool>> per_module;
  bool universe_axiom_holds = false;
  bool agree() const { return whole_holds == parts_hold; }
  ExactnessFlag flag;
};

/// Evaluates the equivalent formulations of program satisfaction for a
/// declared module split and reports whether their verdicts agree.
SplitReport check_split_equivalence(const Program& p, const Structure& m,
                                    const EvalOptions& opts = {});

/// Rebuilds a term-generated structure with a small finite domain as an
/// extensional structure (elements named by their terms). Constructor sets
/// with functors are rejected with UnsupportedFormError.
Structure extensionalize(const Structure& tg);

}  // namespace defcheck
