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

#include <optional>
#include <vector>

#include "defcheck/structure.hpp"
#include "defcheck/vocabulary.hpp"

namespace defcheck {

/// A 1-1 onto mapping between two structure domains, stored as the image of
/// each element of the source domain.
struct Bijection {
  std::vector<ElemId> forward;  // indexed by source ElemId

  ElemId operator()(ElemId e) const { return forward[e]; }
  Bijection inverse() const;
};

/// Searches for a domain bijection b with b(sigma^m) = sigma^n for every
/// symbol of `sigma`. Both structures must be extensional (throws
/// UnsupportedFormError otherwise) and interpret all of `sigma` (throws
/// UnknownSymbolError). A cardinality mismatch yields nullopt. Backtracking
/// with per-element invariant pruning; complete on the small domains this
/// library targets.
std::optional<Bijection> find_isomorphism(const Structure& m, const Structure& n,
                                          const Vocabulary& sigma);

}  // namespace defcheck
