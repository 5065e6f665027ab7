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

#include "defcheck/definition.hpp"

#include <algorithm>
#include <functional>

namespace defcheck {

std::string Atom::to_string() const {
  if (args.empty()) return predicate;
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ",";
    out += args[i].to_string();
  }
  return out + ")";
}

Literal Literal::pos(Atom a) {
  Literal l;
  l.kind = LiteralKind::kAtom;
  l.atom = std::move(a);
  return l;
}

Literal Literal::neg(Atom a) {
  Literal l;
  l.kind = LiteralKind::kNegAtom;
  l.atom = std::move(a);
  return l;
}

Literal Literal::eq(Term lhs, Term rhs) {
  Literal l;
  l.kind = LiteralKind::kEq;
  l.terms = {std::move(lhs), std::move(rhs)};
  return l;
}

Literal Literal::neq(Term lhs, Term rhs) {
  Literal l;
  l.kind = LiteralKind::kNeq;
  l.terms = {std::move(lhs), std::move(rhs)};
  return l;
}

Literal Literal::truth(bool value) {
  Literal l;
  l.kind = value ? LiteralKind::kTrue : LiteralKind::kFalse;
  return l;
}

std::string Literal::to_string() const {
  switch (kind) {
    case LiteralKind::kAtom: return atom.to_string();
    case LiteralKind::kNegAtom: return "not " + atom.to_string();
    case LiteralKind::kTrue: return "true";
    case LiteralKind::kFalse: return "false";
    case LiteralKind::kEq: return terms[0].to_string() + " = " + terms[1].to_string();
    case LiteralKind::kNeq: return terms[0].to_string() + " \\== " + terms[1].to_string();
  }
  return "?";
}

std::string Rule::to_string() const {
  std::string out = head.to_string();
  if (!body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (i) out += ", ";
      out += body[i].to_string();
    }
  }
  return out + ".";
}

namespace {

void collect_term_symbols(const Term& t, std::set<SymbolRef>& out) {
  if (t.is_variable()) return;
  out.insert({t.name(), static_cast<int>(t.args().size()), SymbolKind::kFunction});
  for (const Term& a : t.args()) collect_term_symbols(a, out);
}

}  // namespace

Definition Definition::classify(std::vector<Rule> rules) {
  if (rules.empty()) throw EmptyDefinitionError();
  Definition d;
  d.rules_ = std::move(rules);
  for (const Rule& r : d.rules_) d.defined_.insert(r.head.pred_key());
  for (const Rule& r : d.rules_) {
    for (const Term& t : r.head.args) collect_term_symbols(t, d.parameters_);
    for (const Literal& l : r.body) {
      if (l.is_pred()) {
        const std::string key = l.atom.pred_key();
        if (!d.defined_.count(key))
          d.parameters_.insert({l.atom.predicate,
                                static_cast<int>(l.atom.args.size()),
                                SymbolKind::kPredicate});
        for (const Term& t : l.atom.args) collect_term_symbols(t, d.parameters_);
      } else {
        for (const Term& t : l.terms) collect_term_symbols(t, d.parameters_);
      }
    }
  }
  return d;
}

std::set<std::string> Definition::parameter_predicates() const {
  std::set<std::string> out;
  for (const SymbolRef& s : parameters_)
    if (s.kind == SymbolKind::kPredicate) out.insert(s.key());
  return out;
}

bool Definition::has_negation() const {
  for (const Rule& r : rules_)
    for (const Literal& l : r.body)
      if (l.kind == LiteralKind::kNegAtom) return true;
  return false;
}

DependencyGraph DependencyGraph::build(const Definition& d) {
  DependencyGraph g;
  for (const Rule& r : d.rules()) {
    const std::string head = r.head.pred_key();
    g.vertices_.insert(head);
    for (const Literal& l : r.body) {
      if (!l.is_pred()) continue;
      const std::string from = l.atom.pred_key();
      g.vertices_.insert(from);
      g.edges_.insert({from, head, l.kind == LiteralKind::kNegAtom});
    }
  }
  return g;
}

bool DependencyGraph::has_cycle() const {
  std::map<std::string, std::vector<std::string>> adj;
  for (const Edge& e : edges_) adj[e.from].push_back(e.to);
  std::map<std::string, int> state;  // 0 new, 1 open, 2 done
  std::function<bool(const std::string&)> visit = [&](const std::string& v) {
    state[v] = 1;
    for (const std::string& w : adj[v]) {
      if (state[w] == 1) return true;
      if (state[w] == 0 && visit(w)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (const std::string& v : vertices_)
    if (state[v] == 0 && visit(v)) return true;
  return false;
}

bool is_inductive(const Definition& d) {
  return DependencyGraph::build(d).has_cycle();
}

namespace {

struct SccResult {
  std::vector<std::vector<std::string>> components;  // topological order
  std::map<std::string, int> component_of;
};

// Tarjan over the dependency graph; components come out in reverse
// topological order and are flipped before returning.
SccResult strongly_connected_components(const DependencyGraph& g) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : g.edges()) adj[e.from].push_back(e.to);

  SccResult out;
  std::map<std::string, int> index, low;
  std::vector<std::string> stack;
  std::map<std::string, bool> on_stack;
  int counter = 0;

  std::function<void(const std::string&)> connect = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (const std::string& w : adj[v]) {
      if (!index.count(w)) {
        connect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::string> comp;
      while (true) {
        std::string w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      for (const std::string& w : comp)
        out.component_of[w] = static_cast<int>(out.components.size());
      out.components.push_back(std::move(comp));
    }
  };

  for (const std::string& v : g.vertices())
    if (!index.count(v)) connect(v);

  // Tarjan finishes a component only after everything reachable from it, so
  // the emission order is reverse topological; flip it so that an edge
  // from -> to puts `from`'s component first.
  std::reverse(out.components.begin(), out.components.end());
  for (auto& [v, c] : out.component_of)
    c = static_cast<int>(out.components.size()) - 1 - c;
  return out;
}

std::vector<std::string> find_cycle_through(
    const DependencyGraph& g, const DependencyGraph::Edge& neg,
    const std::set<std::string>& component) {
  if (neg.from == neg.to) return {neg.from, neg.to};
  // BFS path neg.to -> ... -> neg.from inside the component; closing it with
  // the negative edge from -> to yields the offending cycle.
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : g.edges())
    if (component.count(e.from) && component.count(e.to))
      adj[e.from].push_back(e.to);
  std::map<std::string, std::string> parent;
  std::vector<std::string> queue = {neg.to};
  for (std::size_t i = 0; i < queue.size() && !parent.count(neg.from); ++i) {
    for (const std::string& w : adj[queue[i]]) {
      if (w == neg.to || parent.count(w)) continue;
      parent[w] = queue[i];
      queue.push_back(w);
    }
  }
  std::vector<std::string> rev = {neg.from};
  std::string v = neg.from;
  while (v != neg.to) {
    v = parent.count(v) ? parent[v] : neg.to;
    rev.push_back(v);
  }
  std::vector<std::string> cycle(rev.rbegin(), rev.rend());  // to ... from
  cycle.push_back(neg.to);
  return cycle;
}

}  // namespace

std::vector<std::vector<std::string>> stratify(const Definition& d) {
  const DependencyGraph g = DependencyGraph::build(d);
  const SccResult scc = strongly_connected_components(g);

  for (const auto& e : g.edges()) {
    if (!e.negative) continue;
    if (scc.component_of.at(e.from) == scc.component_of.at(e.to)) {
      std::set<std::string> comp(scc.components[scc.component_of.at(e.from)].begin(),
                                 scc.components[scc.component_of.at(e.from)].end());
      throw NotStratifiedError(find_cycle_through(g, e, comp));
    }
  }

  std::vector<std::vector<std::string>> strata;
  for (const auto& comp : scc.components) {
    std::vector<std::string> defined_only;
    for (const std::string& p : comp)
      if (d.defines(p)) defined_only.push_back(p);
    if (!defined_only.empty()) strata.push_back(std::move(defined_only));
  }
  return strata;
}

PartitionReport validate_partition(const Definition& d,
                                   const std::vector<std::vector<Rule>>& parts,
                                   const std::vector<std::string>* part_names) {
  auto name_of = [&](std::size_t i) {
    if (part_names && i < part_names->size()) return (*part_names)[i];
    return "part " + std::to_string(i + 1);
  };

  // The parts must cover the rules exactly, with no overlap.
  std::vector<Rule> remaining = d.rules();
  std::size_t total = 0;
  for (const auto& part : parts) {
    total += part.size();
    for (const Rule& r : part) {
      auto it = std::find(remaining.begin(), remaining.end(), r);
      if (it == remaining.end())
        throw NotAPartitionError("rule not in the definition (or duplicated): " +
                                 r.to_string());
      remaining.erase(it);
    }
  }
  if (!remaining.empty())
    throw NotAPartitionError("rule missing from every part: " +
                             remaining.front().to_string());
  if (total != d.rules().size())
    throw NotAPartitionError("parts do not cover the rules exactly");

  PartitionReport report;
  std::map<std::string, std::set<std::size_t>> head_parts;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].empty()) {
      report.violations.push_back({PartitionViolation::Kind::kEmptyPart,
                                   name_of(i) + " contains no rules"});
      continue;
    }
    for (const Rule& r : parts[i]) head_parts[r.head.pred_key()].insert(i);
  }
  for (const auto& [pred, owners] : head_parts) {
    if (owners.size() > 1) {
      std::string detail = "rules for " + pred + " are scattered over";
      for (std::size_t i : owners) detail += " " + name_of(i);
      report.violations.push_back({PartitionViolation::Kind::kRuleScatter, detail});
    }
  }

  // Part-level dependency graph; a cross-part cycle breaks the split.
  std::map<std::string, std::size_t> defined_in;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const Rule& r : parts[i]) defined_in.emplace(r.head.pred_key(), i);
  std::vector<std::set<std::size_t>> adj(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (const Rule& r : parts[i]) {
      for (const Literal& l : r.body) {
        if (!l.is_pred()) continue;
        auto it = defined_in.find(l.atom.pred_key());
        if (it != defined_in.end() && it->second != i) adj[it->second].insert(i);
      }
    }
  }
  std::vector<int> state(parts.size(), 0);
  std::vector<std::size_t> path;
  std::function<bool(std::size_t)> visit = [&](std::size_t v) -> bool {
    state[v] = 1;
    path.push_back(v);
    for (std::size_t w : adj[v]) {
      if (state[w] == 1) {
        std::string detail = "cyclic dependency across";
        for (auto it = std::find(path.begin(), path.end(), w); it != path.end(); ++it)
          detail += " " + name_of(*it);
        detail += " " + name_of(w);
        report.violations.push_back(
            {PartitionViolation::Kind::kCrossModuleCycle, detail});
        return true;
      }
      if (state[w] == 0 && visit(w)) return true;
    }
    path.pop_back();
    state[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < parts.size(); ++v)
    if (state[v] == 0 && visit(v)) break;

  report.ok = report.violations.empty();
  return report;
}

Program::Program(Definition definition, ConstructorSet constructors,
                 std::vector<NamedModule> modules, bool declared_universe)
    : definition_(std::move(definition)),
      constructors_(std::move(constructors)),
      modules_(std::move(modules)),
      declared_universe_(declared_universe) {}

Definition Program::module_definition(const std::string& name) const {
  for (const NamedModule& m : modules_) {
    if (m.name != name) continue;
    std::vector<Rule> rules;
    for (std::size_t i : m.rule_indices) rules.push_back(definition_.rules()[i]);
    return Definition::classify(std::move(rules));
  }
  throw UnknownSymbolError("module " + name);
}

std::vector<std::vector<Rule>> Program::partition_rules() const {
  std::vector<std::vector<Rule>> parts;
  for (const NamedModule& m : modules_) {
    std::vector<Rule> rules;
    for (std::size_t i : m.rule_indices) rules.push_back(definition_.rules()[i]);
    parts.push_back(std::move(rules));
  }
  return parts;
}

std::vector<std::string> Program::partition_names() const {
  std::vector<std::string> names;
  for (const NamedModule& m : modules_) names.push_back(m.name);
  return names;
}

void Program::check_function_coverage(const std::vector<SymbolRef>& extra_functions) const {
  for (const SymbolRef& s : definition_.parameters()) {
    if (s.kind != SymbolKind::kFunction) continue;
    if (constructors_.contains(s.name, s.arity)) continue;
    bool interpreted = false;
    for (const SymbolRef& e : extra_functions)
      if (e.kind == SymbolKind::kFunction && e.name == s.name && e.arity == s.arity)
        interpreted = true;
    if (!interpreted)
      throw SemanticError("symbol " + s.key() +
                          " is neither a constructor nor an interpreted function");
  }
}

}  // namespace defcheck
