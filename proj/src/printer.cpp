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

#include "defcheck/printer.hpp"

#include <algorithm>
#include <set>

namespace defcheck {

std::string print_program(const Program& p) {
  std::string out;
  if (p.has_declared_universe())
    out += "#universe constructors: " + p.constructors().to_string() + ".\n";

  std::set<std::size_t> in_module;
  for (const NamedModule& m : p.modules())
    for (std::size_t i : m.rule_indices) in_module.insert(i);

  for (const NamedModule& m : p.modules()) {
    out += "#module " + m.name + " {\n";
    for (std::size_t i : m.rule_indices)
      out += "  " + p.definition().rules()[i].to_string() + "\n";
    out += "}\n";
  }
  for (std::size_t i = 0; i < p.definition().rules().size(); ++i) {
    if (in_module.count(i)) continue;
    out += p.definition().rules()[i].to_string() + "\n";
  }
  return out;
}

namespace {

std::vector<std::string> sorted_tuple_strings(const Structure& m, const Relation& rel) {
  std::vector<std::string> rows;
  rows.reserve(rel.size());
  for (const Tuple& t : rel.tuples()) {
    std::string row = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) row += ", ";
      row += m.element_name(t[i]);
    }
    row += ")";
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace

std::string print_structure(const Structure& m) {
  std::string out;
  if (m.is_extensional()) {
    out += "domain: ";
    for (std::size_t i = 0; i < m.domain().size(); ++i) {
      if (i) out += ", ";
      out += m.element_name(m.domain()[i]);
    }
    out += ".\n";
  } else {
    out += "universe: constructors " + m.constructors().to_string() + " depth " +
           std::to_string(m.depth_bound());
    if (m.restriction() == UniverseRestriction::kLists) out += " restrict lists";
    out += ".\n";
  }

  const Vocabulary& vocab = m.vocabulary();
  std::vector<std::string> lines;

  if (m.is_extensional()) {
    for (SymbolId id = 0; id < vocab.size(); ++id) {
      const Symbol& s = vocab.symbol(id);
      if (s.kind == SymbolKind::kFunction && s.arity == 0 && m.has_constant(id))
        lines.push_back("const " + s.name + " = " +
                        m.element_name(m.constant_value(id)) + ".");
    }
  }
  for (SymbolId id = 0; id < vocab.size(); ++id) {
    const Symbol& s = vocab.symbol(id);
    if (s.kind != SymbolKind::kFunction || s.arity == 0) continue;
    const FunctionValue* fv = m.function_value(id);
    if (fv == nullptr) continue;
    std::string line = "func " + s.key() + " = ";
    if (fv->builtin != Builtin::kNone) {
      line += std::string("builtin ") +
              (fv->builtin == Builtin::kProduct ? "product" : "sum");
    } else {
      std::vector<std::string> rows;
      for (const auto& [key, value] : fv->table) {
        std::string row = "(";
        for (std::size_t i = 0; i < key.size(); ++i) {
          if (i) row += ", ";
          row += m.element_name(key[i]);
        }
        row += ") -> " + m.element_name(value);
        rows.push_back(std::move(row));
      }
      std::sort(rows.begin(), rows.end());
      line += "{ ";
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) line += ", ";
        line += rows[i];
      }
      line += " }";
    }
    if (fv->default_value != kNoElem)
      line += " default " + m.element_name(fv->default_value);
    line += ".";
    lines.push_back(std::move(line));
  }
  for (const auto& [pid, rel] : m.predicates()) {
    const Symbol& s = vocab.symbol(pid);
    std::string line = "pred " + s.key() + " = { ";
    const auto rows = sorted_tuple_strings(m, rel);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i) line += ", ";
      line += rows[i];
    }
    line += rows.empty() ? "}." : " }.";
    lines.push_back(std::move(line));
  }
  std::sort(lines.begin(), lines.end());
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

std::vector<std::string> atom_strings(const Structure& m, const std::string& pred_name,
                                      const Relation& rel) {
  std::vector<std::string> rows;
  rows.reserve(rel.size());
  for (const Tuple& t : rel.tuples()) {
    std::string row = pred_name;
    if (!t.empty()) {
      row += "(";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) row += ",";
        row += m.element_name(t[i]);
      }
      row += ")";
    }
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

bool program_equal(const Program& a, const Program& b) {
  if (!(a.definition().rules() == b.definition().rules())) return false;
  if (!a.constructors().same_symbols(b.constructors())) return false;
  if (a.modules().size() != b.modules().size()) return false;
  for (std::size_t i = 0; i < a.modules().size(); ++i) {
    if (a.modules()[i].name != b.modules()[i].name) return false;
    if (a.modules()[i].rule_indices != b.modules()[i].rule_indices) return false;
  }
  return true;
}

}  // namespace defcheck
