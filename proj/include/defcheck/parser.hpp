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
#include <string_view>

#include "defcheck/definition.hpp"
#include "defcheck/structure.hpp"

namespace defcheck {

/// Parses rule-set source (.lpd): rules `head :- lit, ..., lit.` and
/// `head.`, `%` line comments, a `#universe constructors: ...` directive,
/// and `#module name { ... }` blocks. Without the directive the constructor
/// set is inferred as all constants and functors occurring in the rules.
Program parse_program(std::string_view text, const std::string& filename = "<input>");

/// Parses structure source (.fos), extensional or term-generated.
Structure parse_structure(std::string_view text, const std::string& filename = "<input>");

/// Parses a single body-style literal, e.g. "not member(0,[1,2,3])".
Literal parse_literal(std::string_view text, const std::string& filename = "<query>");

/// Parses a single term.
Term parse_term(std::string_view text, const std::string& filename = "<term>");

/// Parses rules only and classifies them into a Definition.
Definition parse_definition(std::string_view text, const std::string& filename = "<input>");

}  // namespace defcheck
