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
#include <string>
#include <vector>

#include "defcheck/definition.hpp"
#include "defcheck/engine.hpp"
#include "defcheck/structure.hpp"

namespace defcheck {

struct OracleOptions {
  /// Cap on the number of candidate interpretations enumerated.
  std::uint64_t candidate_budget = 1ull << 24;
};

/// Literal transcription of definitional satisfaction: enumerate every
/// assignment of defined-predicate values over the domain, test classical
/// satisfaction, test pointwise minimality of m. Extensional structures and
/// negation-free definitions only. Independent of the fixpoint engine; the
/// test suite holds the two equivalent on shared inputs.
bool brute_force_minimal_check(const Structure& m, const Definition& d,
                               const OracleOptions& opts = {});

/// The if-and-only-if completion of a rule set: one equivalence per defined
/// predicate, head-argument unification rendered as equality conjuncts.
class CompletionTheory {
 public:
  explicit CompletionTheory(Definition d);

  const Definition& definition() const { return def_; }
  /// (predicate key, rendered equivalence) pairs.
  const std::vector<std::pair<std::string, std::string>>& equivalences() const {
    return rendered_;
  }
  std::string to_string() const;

 private:
  Definition def_;
  std::vector<std::pair<std::string, std::string>> rendered_;
};

CompletionTheory clark_completion(const Definition& d);

/// All assignments of defined-predicate values over the parameter
/// structure's domain satisfying every completed equivalence, in candidate
/// enumeration order (deterministic).
std::vector<Interpretation> enumerate_completion_models(const CompletionTheory& ct,
                                                        const Structure& params,
                                                        const OracleOptions& opts = {});

struct GapRow {
  Atom atom;
  bool accepted = false;  // the predicate is defined by the program
  bool in_lhm = false;
  /// Material-implication reading entails the atom itself (it is entailed
  /// exactly when the atom holds in the least model).
  bool horn_entails_atom = false;
  /// The material-implication reading never entails the negation: the
  /// all-true interpretation satisfies it and makes the atom true.
  bool horn_entails_negation = false;
  std::string note;
};

struct GapReport {
  std::vector<GapRow> rows;
  bool all_true_model_verified = false;
  ExactnessFlag flag;
};

/// For each ground atom: its truth in the least model versus what the
/// material-implication reading of the rules can conclude, exhibiting the
/// gap between the two readings on negative information.
GapReport horn_entailment_gap_report(const Program& p, const std::vector<Atom>& atoms,
                                     int depth_bound, const OracleOptions& opts = {});

}  // namespace defcheck
