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

#include "defcheck/definition.hpp"
#include "defcheck/structure.hpp"

namespace defcheck {

/// Canonical program source. Re-parsing the output yields an equal AST, and
/// printing is idempotent from then on.
std::string print_program(const Program& p);

/// Canonical structure source (.fos), with sorted tuple listings.
std::string print_structure(const Structure& m);

/// Rendered ground atoms "pred(a,b)" of one relation, sorted.
std::vector<std::string> atom_strings(const Structure& m, const std::string& pred_name,
                                      const Relation& rel);

bool program_equal(const Program& a, const Program& b);

}  // namespace defcheck
