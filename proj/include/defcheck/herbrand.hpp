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

#include <string>
#include <vector>

#include "defcheck/structure.hpp"
#include "defcheck/term.hpp"
#include "defcheck/vocabulary.hpp"

namespace defcheck {

/// All ground terms over the constructor set with depth <= depth_bound, in
/// (depth, structural) order. Empty exactly when `cf` has no constants.
std::vector<Term> herbrand_universe(const ConstructorSet& cf, int depth_bound);

struct HerbrandVerdict {
  bool holds = false;
  /// Set when the verdict is vacuously exact only up to the depth bound of a
  /// truncated term universe.
  bool truncated = false;
  std::string note;
};

/// Does `m` satisfy the axiom that its universe is the term universe of `cf`
/// with the members of `cf` as constructors, up to isomorphism? Only the
/// cf-reduct matters; extra symbols are unconstrained.
HerbrandVerdict satisfies_herbrand_axiom(const Structure& m, const ConstructorSet& cf);

}  // namespace defcheck
