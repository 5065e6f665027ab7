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

#include "defcheck/vocabulary.hpp"

#include <algorithm>

namespace defcheck {

bool is_numeral_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

namespace {

std::string index_key(SymbolKind kind, std::string_view name, int arity) {
  std::string key(kind == SymbolKind::kFunction ? "f:" : "p:");
  key += name;
  key += '/';
  key += std::to_string(arity);
  return key;
}

}  // namespace

SymbolId Vocabulary::add(Symbol sym) {
  const std::string key = index_key(sym.kind, sym.name, sym.arity);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  if (sym.arity < 0) throw SemanticError("negative arity for symbol " + sym.name);
  if (sym.kind == SymbolKind::kFunction && sym.arity == 0 &&
      is_numeral_name(sym.name)) {
    sym.is_numeral = true;
    sym.numeral_value = std::stoull(sym.name);
  }
  const SymbolId id = static_cast<SymbolId>(symbols_.size());
  symbols_.push_back(std::move(sym));
  index_.emplace(key, id);
  return id;
}

SymbolId Vocabulary::add_function(const std::string& name, int arity) {
  Symbol sym;
  sym.name = name;
  sym.kind = SymbolKind::kFunction;
  sym.arity = arity;
  return add(std::move(sym));
}

SymbolId Vocabulary::add_predicate(const std::string& name, int arity) {
  Symbol sym;
  sym.name = name;
  sym.kind = SymbolKind::kPredicate;
  sym.arity = arity;
  return add(std::move(sym));
}

SymbolId Vocabulary::find(SymbolKind kind, std::string_view name, int arity) const {
  auto it = index_.find(index_key(kind, name, arity));
  return it == index_.end() ? kNoSymbol : it->second;
}

SymbolId Vocabulary::find_by_name(SymbolKind kind, std::string_view name) const {
  SymbolId found = kNoSymbol;
  for (SymbolId id = 0; id < symbols_.size(); ++id) {
    const Symbol& s = symbols_[id];
    if (s.kind == kind && s.name == name) {
      if (found != kNoSymbol) return kNoSymbol;  // ambiguous
      found = id;
    }
  }
  return found;
}

std::vector<SymbolId> Vocabulary::functions() const {
  std::vector<SymbolId> out;
  for (SymbolId id = 0; id < symbols_.size(); ++id)
    if (symbols_[id].kind == SymbolKind::kFunction) out.push_back(id);
  return out;
}

std::vector<SymbolId> Vocabulary::predicates() const {
  std::vector<SymbolId> out;
  for (SymbolId id = 0; id < symbols_.size(); ++id)
    if (symbols_[id].kind == SymbolKind::kPredicate) out.push_back(id);
  return out;
}

bool Vocabulary::includes(const Vocabulary& other) const {
  for (const Symbol& s : other.symbols_) {
    if (find(s.kind, s.name, s.arity) == kNoSymbol) return false;
  }
  return true;
}

void ConstructorSet::add(const std::string& name, int arity) {
  if (arity < 0) throw SemanticError("negative arity for constructor " + name);
  if (contains(name, arity)) return;
  Symbol sym;
  sym.name = name;
  sym.kind = SymbolKind::kFunction;
  sym.arity = arity;
  if (arity == 0 && is_numeral_name(name)) {
    sym.is_numeral = true;
    sym.numeral_value = std::stoull(name);
  }
  members_.push_back(std::move(sym));
}

bool ConstructorSet::contains(std::string_view name, int arity) const {
  for (const Symbol& s : members_)
    if (s.arity == arity && s.name == name) return true;
  return false;
}

bool ConstructorSet::has_constants() const {
  return std::any_of(members_.begin(), members_.end(),
                     [](const Symbol& s) { return s.arity == 0; });
}

std::vector<const Symbol*> ConstructorSet::constants() const {
  std::vector<const Symbol*> out;
  for (const Symbol& s : members_)
    if (s.arity == 0) out.push_back(&s);
  return out;
}

std::vector<const Symbol*> ConstructorSet::functors() const {
  std::vector<const Symbol*> out;
  for (const Symbol& s : members_)
    if (s.arity >= 1) out.push_back(&s);
  return out;
}

bool ConstructorSet::same_symbols(const ConstructorSet& other) const {
  if (members_.size() != other.members_.size()) return false;
  for (const Symbol& s : members_)
    if (!other.contains(s.name, s.arity)) return false;
  return true;
}

std::string ConstructorSet::to_string() const {
  std::string out;
  for (const Symbol& s : members_) {
    if (!out.empty()) out += ", ";
    out += s.arity == 0 ? s.name : s.key();
  }
  return out;
}

}  // namespace defcheck
