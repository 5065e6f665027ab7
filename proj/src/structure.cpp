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

#include "defcheck/structure.hpp"

#include <algorithm>
#include <limits>

#include "defcheck/errors.hpp"

namespace defcheck {

// ---------------------------------------------------------------------------
// Relation
// ---------------------------------------------------------------------------

bool Relation::insert(const Tuple& t) { return insert(Tuple(t)); }

bool Relation::insert(Tuple&& t) {
  auto [it, fresh] = seen_.emplace(std::move(t), static_cast<std::uint32_t>(tuples_.size()));
  if (!fresh) return false;
  tuples_.push_back(it->first);
  return true;
}

std::size_t Relation::masked_hash(std::uint32_t mask, const Tuple& t) {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (mask & (1u << i)) {
      h ^= t[i];
      h *= 1099511628211ull;
    }
  }
  return h;
}

void Relation::top_up(std::uint32_t mask, MaskIndex& index) const {
  for (std::size_t i = index.built_upto; i < tuples_.size(); ++i)
    index.map.emplace(masked_hash(mask, tuples_[i]), static_cast<std::uint32_t>(i));
  index.built_upto = tuples_.size();
}

void Relation::probe(std::uint32_t mask, const Tuple& bound,
                     std::vector<std::uint32_t>& out) const {
  out.clear();
  MaskIndex& index = indexes_[mask];
  top_up(mask, index);
  auto [lo, hi] = index.map.equal_range(masked_hash(mask, bound));
  for (auto it = lo; it != hi; ++it) {
    const Tuple& t = tuples_[it->second];
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; ++i)
      if ((mask & (1u << i)) && t[i] != bound[i]) ok = false;
    if (ok) out.push_back(it->second);
  }
}

bool Relation::operator==(const Relation& other) const {
  if (size() != other.size()) return false;
  for (const Tuple& t : tuples_)
    if (!other.contains(t)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// TermPool
// ---------------------------------------------------------------------------

std::size_t TermPool::key_hash(SymbolId functor, std::span<const ElemId> args) const {
  std::size_t h = 1469598103934665603ull;
  h ^= functor;
  h *= 1099511628211ull;
  for (ElemId a : args) {
    h ^= a;
    h *= 1099511628211ull;
  }
  return h;
}

ElemId TermPool::find(SymbolId functor, std::span<const ElemId> args) const {
  auto [lo, hi] = intern_.equal_range(key_hash(functor, args));
  for (auto it = lo; it != hi; ++it) {
    const ElemId id = it->second;
    if (nodes_[id].functor != functor) continue;
    auto have = this->args(id);
    if (have.size() == args.size() &&
        std::equal(have.begin(), have.end(), args.begin()))
      return id;
  }
  return kNoElem;
}

ElemId TermPool::intern(SymbolId functor, std::span<const ElemId> args) {
  ElemId existing = find(functor, args);
  if (existing != kNoElem) return existing;
  Node n;
  n.functor = functor;
  n.args_begin = static_cast<std::uint32_t>(argstore_.size());
  n.nargs = static_cast<std::uint16_t>(args.size());
  int depth = 0;
  for (ElemId a : args) depth = std::max(depth, nodes_[a].depth + 1);
  n.depth = static_cast<std::uint16_t>(depth);
  argstore_.insert(argstore_.end(), args.begin(), args.end());
  const ElemId id = static_cast<ElemId>(nodes_.size());
  nodes_.push_back(n);
  intern_.emplace(key_hash(functor, args), id);
  return id;
}

// ---------------------------------------------------------------------------
// Structure: construction
// ---------------------------------------------------------------------------

Structure Structure::make_extensional(Vocabulary vocab,
                                      std::vector<std::string> domain) {
  if (domain.empty()) throw SemanticError("a structure needs a non-empty universe");
  Structure m;
  m.form_ = Form::kExtensional;
  m.vocab_ = std::move(vocab);
  m.names_ = std::move(domain);
  for (ElemId e = 0; e < m.names_.size(); ++e) {
    if (!m.by_name_.emplace(m.names_[e], e).second)
      throw SemanticError("duplicate domain element: " + m.names_[e]);
    m.domain_.push_back(e);
  }
  m.in_domain_.assign(m.names_.size(), true);
  return m;
}

void Structure::register_domain_element(ElemId e) {
  if (in_domain_.size() <= e) in_domain_.resize(e + 1, false);
  if (in_domain_[e]) return;
  in_domain_[e] = true;
  domain_.push_back(e);
  const SymbolId f = pool_.functor(e);
  const Symbol& sym = vocab_.symbol(f);
  if (sym.arity >= 1) {
    functor_elems_[f].push_back(e);
    auto args = pool_.args(e);
    for (std::size_t pos = 0; pos < args.size() && pos < 4; ++pos) {
      const std::uint64_t key =
          (static_cast<std::uint64_t>(f) << 34) |
          (static_cast<std::uint64_t>(pos) << 32) | args[pos];
      arg_index_[key].push_back(e);
    }
  } else if (sym.is_numeral) {
    numerals_[sym.numeral_value] = e;
  }
}

Structure Structure::make_term_generated(Vocabulary vocab, ConstructorSet cf,
                                         int depth_bound, UniverseOptions opts) {
  if (!cf.has_constants()) throw EmptyUniverseError();
  if (depth_bound < 0) throw SemanticError("negative depth bound");
  Structure m;
  m.form_ = Form::kTermGenerated;
  m.vocab_ = std::move(vocab);
  for (const Symbol& s : cf.members()) m.vocab_.add_function(s.name, s.arity);
  m.cf_ = std::move(cf);
  m.depth_bound_ = depth_bound;
  m.restriction_ = opts.restriction;
  if (opts.restriction == UniverseRestriction::kLists)
    m.build_lists_universe(opts.element_budget);
  else
    m.build_full_universe(opts.element_budget);
  return m;
}

void Structure::build_full_universe(std::uint64_t budget) {
  // Constants first, in declaration order.
  for (const Symbol* c : cf_.constants()) {
    const SymbolId id = vocab_.find(SymbolKind::kFunction, c->name, 0);
    register_domain_element(pool_.intern(id, {}));
  }
  std::size_t level_begin = 0;
  for (int d = 1; d <= depth_bound_; ++d) {
    const std::size_t level_end = domain_.size();
    bool grew = false;
    for (const Symbol* f : cf_.functors()) {
      const SymbolId fid = vocab_.find(SymbolKind::kFunction, f->name, f->arity);
      // All argument tuples over elements of depth < d with at least one
      // argument of depth d-1, i.e. exactly the terms of depth d.
      Tuple args(static_cast<std::size_t>(f->arity), 0);
      std::vector<std::size_t> idx(static_cast<std::size_t>(f->arity), 0);
      const std::size_t n = level_end;
      if (n == 0) continue;
      while (true) {
        bool has_new = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
          args[i] = domain_[idx[i]];
          if (idx[i] >= level_begin) has_new = true;
        }
        if (has_new || d == 1) {
          // d == 1: level_begin is 0, every tuple is over constants.
          if (domain_.size() >= budget)
            throw BudgetExceededError(domain_.size() + 1, budget);
          register_domain_element(pool_.intern(fid, args));
          grew = true;
        }
        std::size_t k = idx.size();
        while (k > 0) {
          if (++idx[k - 1] < n) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    level_begin = level_end;
    if (!grew) break;
  }
}

void Structure::build_lists_universe(std::uint64_t budget) {
  const auto functors = cf_.functors();
  if (functors.size() != 1 || functors[0]->arity != 2)
    throw SemanticError(
        "the lists universe restriction needs exactly one binary constructor");
  const SymbolId fid =
      vocab_.find(SymbolKind::kFunction, functors[0]->name, functors[0]->arity);

  std::vector<ElemId> consts;
  for (const Symbol* c : cf_.constants()) {
    const SymbolId id = vocab_.find(SymbolKind::kFunction, c->name, 0);
    const ElemId e = pool_.intern(id, {});
    register_domain_element(e);
    consts.push_back(e);
  }
  // Lists terminate at nil when declared, else at the first constant.
  ElemId terminator = consts.front();
  const SymbolId nil_id = vocab_.find(SymbolKind::kFunction, "nil", 0);
  if (nil_id != kNoSymbol && cf_.contains("nil", 0))
    terminator = pool_.find(nil_id, {});

  std::vector<ElemId> tails = {terminator};
  for (int len = 1; len <= depth_bound_; ++len) {
    std::vector<ElemId> next;
    next.reserve(tails.size() * consts.size());
    for (ElemId tail : tails) {
      for (ElemId head : consts) {
        if (domain_.size() >= budget)
          throw BudgetExceededError(domain_.size() + 1, budget);
        Tuple args = {head, tail};
        const ElemId e = pool_.intern(fid, args);
        register_domain_element(e);
        next.push_back(e);
      }
    }
    tails = std::move(next);
  }
}

Structure Structure::make_term_generated_closure(Vocabulary vocab,
                                                 ConstructorSet cf,
                                                 int depth_bound,
                                                 const std::vector<Term>& seed_terms) {
  if (!cf.has_constants()) throw EmptyUniverseError();
  Structure m;
  m.form_ = Form::kTermGenerated;
  m.vocab_ = std::move(vocab);
  for (const Symbol& s : cf.members()) m.vocab_.add_function(s.name, s.arity);
  m.cf_ = std::move(cf);
  m.depth_bound_ = depth_bound;
  m.restriction_ = UniverseRestriction::kNone;

  std::vector<Term> closure;
  for (const Symbol* c : m.cf_.constants()) closure.push_back(Term::constant(c->name));
  for (const Term& t : seed_terms) t.collect_subterms(closure);
  std::sort(closure.begin(), closure.end(),
            [](const Term& a, const Term& b) {
              const int da = a.depth(), db = b.depth();
              if (da != db) return da < db;
              return a < b;
            });
  closure.erase(std::unique(closure.begin(), closure.end()), closure.end());

  for (const Term& t : closure) {
    if (t.depth() > depth_bound) continue;
    const SymbolId f = m.vocab_.find(SymbolKind::kFunction, t.name(),
                                     static_cast<int>(t.args().size()));
    if (f == kNoSymbol || !m.cf_.contains(t.name(), static_cast<int>(t.args().size())))
      throw UnknownSymbolError(t.name() + "/" + std::to_string(t.args().size()));
    Tuple args;
    for (const Term& a : t.args()) {
      auto sub = m.find_term(a);
      if (!sub) throw SemanticError("closure universe misses a subterm of " + t.to_string());
      args.push_back(*sub);
    }
    m.register_domain_element(m.pool_.intern(f, args));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Structure: domain access
// ---------------------------------------------------------------------------

bool Structure::in_domain(ElemId e) const {
  return e < in_domain_.size() && in_domain_[e];
}

std::string Structure::element_name(ElemId e) const {
  if (form_ == Form::kExtensional) return names_.at(e);
  return element_term(e).to_string();
}

std::optional<ElemId> Structure::find_element(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

bool Structure::universe_complete() const {
  if (form_ == Form::kExtensional) return false;
  return cf_.functors().empty();
}

Term Structure::element_term(ElemId e) const {
  const Symbol& sym = vocab_.symbol(pool_.functor(e));
  std::vector<Term> args;
  for (ElemId a : pool_.args(e)) args.push_back(element_term(a));
  return Term::apply(sym.name, std::move(args));
}

std::optional<ElemId> Structure::find_term(const Term& ground) const {
  const SymbolId f = vocab_.find(SymbolKind::kFunction, ground.name(),
                                 static_cast<int>(ground.args().size()));
  if (f == kNoSymbol) return std::nullopt;
  Tuple args;
  for (const Term& a : ground.args()) {
    auto sub = find_term(a);
    if (!sub) return std::nullopt;
    args.push_back(*sub);
  }
  const ElemId e = pool_.find(f, args);
  if (e == kNoElem || !in_domain(e)) return std::nullopt;
  return e;
}

std::span<const ElemId> Structure::elements_with_functor(SymbolId f) const {
  static const std::vector<ElemId> kEmpty;
  auto it = functor_elems_.find(f);
  return it == functor_elems_.end() ? std::span<const ElemId>(kEmpty)
                                    : std::span<const ElemId>(it->second);
}

std::span<const ElemId> Structure::elements_with_arg(SymbolId f, int pos,
                                                     ElemId arg) const {
  static const std::vector<ElemId> kEmpty;
  const std::uint64_t key = (static_cast<std::uint64_t>(f) << 34) |
                            (static_cast<std::uint64_t>(pos) << 32) | arg;
  auto it = arg_index_.find(key);
  return it == arg_index_.end() ? std::span<const ElemId>(kEmpty)
                                : std::span<const ElemId>(it->second);
}

// ---------------------------------------------------------------------------
// Structure: interpretation
// ---------------------------------------------------------------------------

void Structure::set_constant(const std::string& name, ElemId value) {
  if (form_ != Form::kExtensional)
    throw SemanticError("constants of a term-generated structure are constructors");
  if (!in_domain(value)) throw SemanticError("constant value outside the domain");
  consts_[vocab_.add_function(name, 0)] = value;
}

Relation& Structure::add_predicate(const std::string& name, int arity) {
  return preds_[vocab_.add_predicate(name, arity)];
}

void Structure::set_predicate(const std::string& name, int arity, Relation value) {
  preds_[vocab_.add_predicate(name, arity)] = std::move(value);
}

void Structure::set_function_table(const std::string& name, int arity,
                                   std::unordered_map<Tuple, ElemId, TupleHash> table,
                                   ElemId default_value) {
  FunctionValue fv;
  fv.table = std::move(table);
  fv.default_value = default_value;
  funcs_[vocab_.add_function(name, arity)] = std::move(fv);
}

void Structure::set_function_builtin(const std::string& name, int arity,
                                     Builtin builtin, ElemId default_value) {
  if (!in_domain(default_value))
    throw SemanticError("builtin default element outside the domain");
  FunctionValue fv;
  fv.builtin = builtin;
  fv.default_value = default_value;
  funcs_[vocab_.add_function(name, arity)] = std::move(fv);
}

const Relation& Structure::predicate_value(SymbolId p) const {
  auto it = preds_.find(p);
  if (it == preds_.end())
    throw UnknownSymbolError(vocab_.symbol(p).key());
  return it->second;
}

bool Structure::has_constant(SymbolId c) const {
  if (form_ == Form::kExtensional) return consts_.count(c) > 0;
  const Symbol& sym = vocab_.symbol(c);
  return sym.arity == 0 && cf_.contains(sym.name, 0);
}

ElemId Structure::constant_value(SymbolId c) const {
  if (form_ == Form::kExtensional) {
    auto it = consts_.find(c);
    if (it == consts_.end()) throw UnknownSymbolError(vocab_.symbol(c).key());
    return it->second;
  }
  const ElemId e = pool_.find(c, {});
  if (e == kNoElem) throw UnknownSymbolError(vocab_.symbol(c).key());
  return e;
}

bool Structure::is_constructor_symbol(SymbolId f) const {
  if (form_ != Form::kTermGenerated) return false;
  const Symbol& sym = vocab_.symbol(f);
  return sym.kind == SymbolKind::kFunction && cf_.contains(sym.name, sym.arity);
}

bool Structure::has_function(SymbolId f) const {
  return funcs_.count(f) > 0 || is_constructor_symbol(f) ||
         (form_ == Form::kExtensional && consts_.count(f) > 0);
}

const FunctionValue* Structure::function_value(SymbolId f) const {
  auto it = funcs_.find(f);
  return it == funcs_.end() ? nullptr : &it->second;
}

ElemId Structure::numeral_element(std::uint64_t value) const {
  auto it = numerals_.find(value);
  return it == numerals_.end() ? kNoElem : it->second;
}

std::optional<ElemId> Structure::apply_function(SymbolId f,
                                                std::span<const ElemId> args) const {
  if (is_constructor_symbol(f)) {
    const ElemId e = pool_.find(f, args);
    if (e == kNoElem || !in_domain(e)) return std::nullopt;
    return e;
  }
  auto it = funcs_.find(f);
  if (it == funcs_.end()) {
    if (form_ == Form::kExtensional && args.empty()) {
      auto c = consts_.find(f);
      if (c != consts_.end()) return c->second;
    }
    throw UnknownSymbolError(vocab_.symbol(f).key());
  }
  const FunctionValue& fv = it->second;
  if (fv.builtin != Builtin::kNone) {
    const Symbol& a = vocab_.symbol(pool_.functor(args[0]));
    const Symbol& b = vocab_.symbol(pool_.functor(args[1]));
    if (a.is_numeral && b.is_numeral && args.size() == 2) {
      std::uint64_t value = 0;
      if (fv.builtin == Builtin::kProduct) {
        if (b.numeral_value != 0 &&
            a.numeral_value > std::numeric_limits<std::uint64_t>::max() / b.numeral_value)
          return fv.default_value;
        value = a.numeral_value * b.numeral_value;
      } else {
        value = a.numeral_value + b.numeral_value;
      }
      const ElemId e = numeral_element(value);
      // Products that leave the declared numeral range take the default
      // element; the declared range caps what the structure can represent.
      return e == kNoElem ? fv.default_value : e;
    }
    return fv.default_value;
  }
  Tuple key(args.begin(), args.end());
  auto hit = fv.table.find(key);
  if (hit != fv.table.end()) return hit->second;
  if (fv.default_value == kNoElem)
    throw SemanticError("function " + vocab_.symbol(f).key() +
                        " has no value for a tuple and no default");
  return fv.default_value;
}

// ---------------------------------------------------------------------------
// Structure: validation and copies
// ---------------------------------------------------------------------------

void Structure::validate() const {
  for (const auto& [pid, rel] : preds_) {
    const Symbol& sym = vocab_.symbol(pid);
    for (const Tuple& t : rel.tuples()) {
      if (t.size() != static_cast<std::size_t>(sym.arity))
        throw SemanticError("tuple arity mismatch for " + sym.key());
      for (ElemId e : t)
        if (!in_domain(e))
          throw SemanticError("tuple of " + sym.key() + " uses an element outside the domain");
    }
  }
  for (const auto& [fid, fv] : funcs_) {
    const Symbol& sym = vocab_.symbol(fid);
    for (const auto& [t, v] : fv.table) {
      if (t.size() != static_cast<std::size_t>(sym.arity))
        throw SemanticError("table arity mismatch for " + sym.key());
      for (ElemId e : t)
        if (!in_domain(e)) throw SemanticError("table key of " + sym.key() + " outside the domain");
      if (!in_domain(v)) throw SemanticError("table value of " + sym.key() + " outside the domain");
    }
    if (fv.default_value != kNoElem && !in_domain(fv.default_value))
      throw SemanticError("default of " + sym.key() + " outside the domain");
    if (fv.builtin == Builtin::kNone && fv.default_value == kNoElem) {
      // A finite table must then be total.
      std::uint64_t need = 1;
      for (int i = 0; i < sym.arity; ++i) need *= domain_.size();
      if (fv.table.size() < need)
        throw SemanticError("function " + sym.key() +
                            " is partial: missing tuples and no default");
    }
  }
  for (const auto& [cid, v] : consts_) {
    if (!in_domain(v))
      throw SemanticError("constant " + vocab_.symbol(cid).name + " outside the domain");
  }
}

Structure Structure::with_predicates(const std::map<SymbolId, Relation>& values) const {
  Structure out = *this;
  for (const auto& [pid, rel] : values) out.preds_[pid] = rel;
  return out;
}

Structure Structure::without_predicates(const std::vector<SymbolId>& preds) const {
  Structure out = *this;
  for (SymbolId p : preds) out.preds_.erase(p);
  return out;
}

// ---------------------------------------------------------------------------
// Term evaluation
// ---------------------------------------------------------------------------

ElemId evaluate_term(const Structure& m,
                     const std::map<std::string, ElemId>& assignment,
                     const Term& t) {
  if (t.is_variable()) {
    auto it = assignment.find(t.name());
    if (it == assignment.end()) throw UnknownSymbolError("variable " + t.name());
    return it->second;
  }
  // Extensional structures admit bare domain-element names in ground input.
  if (t.args().empty() && m.is_extensional()) {
    const SymbolId c = m.vocabulary().find(SymbolKind::kFunction, t.name(), 0);
    if (c != kNoSymbol && m.has_constant(c)) return m.constant_value(c);
    if (auto e = m.find_element(t.name())) return *e;
    throw UnknownSymbolError(t.name());
  }
  const SymbolId f = m.vocabulary().find(SymbolKind::kFunction, t.name(),
                                         static_cast<int>(t.args().size()));
  if (f == kNoSymbol) throw UnknownSymbolError(t.name() + "/" + std::to_string(t.args().size()));
  Tuple args;
  for (const Term& a : t.args()) args.push_back(evaluate_term(m, assignment, a));
  auto v = m.apply_function(f, args);
  if (!v) throw DepthExceededError(t.to_string());
  return *v;
}

}  // namespace defcheck
