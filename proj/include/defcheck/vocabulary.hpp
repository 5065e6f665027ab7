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
#include <string_view>
#include <vector>

#include "defcheck/errors.hpp"

namespace defcheck {

using SymbolId = std::uint32_t;
inline constexpr SymbolId kNoSymbol = 0xffffffffu;

enum class SymbolKind : std::uint8_t {
  kFunction,   // constants are functions of arity 0
  kPredicate,
};

struct Symbol {
  std::string name;
  SymbolKind kind = SymbolKind::kFunction;
  int arity = 0;

  // Numeral constants ("0", "1", ...) carry their value so interpreted
  // arithmetic builtins can recognise them.
  bool is_numeral = false;
  std::uint64_t numeral_value = 0;

  bool is_constant() const { return kind == SymbolKind::kFunction && arity == 0; }

  /// "name/arity" display form, e.g. "member/2".
  std::string key() const { return name + "/" + std::to_string(arity); }
};

/// Checks whether a symbol name is a decimal numeral.
bool is_numeral_name(std::string_view name);

/// A symbol table of function and predicate symbols. Two symbols may share a
/// name as long as (name, arity, kind) differ; source formats are stricter
/// and enforce one arity per name at parse time.
class Vocabulary {
 public:
  SymbolId add_function(const std::string& name, int arity);
  SymbolId add_predicate(const std::string& name, int arity);

  /// Returns kNoSymbol when absent.
  SymbolId find(SymbolKind kind, std::string_view name, int arity) const;
  /// Finds a function/predicate by name at any arity; kNoSymbol if absent or
  /// ambiguous across arities.
  SymbolId find_by_name(SymbolKind kind, std::string_view name) const;

  const Symbol& symbol(SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }

  std::vector<SymbolId> functions() const;
  std::vector<SymbolId> predicates() const;

  /// True when every symbol of `other` is present here with the same kind
  /// and arity.
  bool includes(const Vocabulary& other) const;

 private:
  SymbolId add(Symbol sym);

  std::vector<Symbol> symbols_;
  std::map<std::string, SymbolId> index_;  // "kind:name/arity" -> id
};

/// The designated constructor symbols of a universe. Holds constants and
/// function symbols only, never predicates; insertion order is preserved so
/// that enumeration and printing are deterministic.
class ConstructorSet {
 public:
  void add(const std::string& name, int arity);

  bool contains(std::string_view name, int arity) const;
  bool has_constants() const;
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  const std::vector<Symbol>& members() const { return members_; }
  std::vector<const Symbol*> constants() const;
  std::vector<const Symbol*> functors() const;  // arity >= 1

  bool same_symbols(const ConstructorSet& other) const;

  /// Comma-separated display form, e.g. "nil/0, cons/2, 0, 1".
  std::string to_string() const;

 private:
  std::vector<Symbol> members_;
};

}  // namespace defcheck
