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

#include "defcheck/isomorphism.hpp"

#include <algorithm>

#include "defcheck/errors.hpp"

namespace defcheck {

Bijection Bijection::inverse() const {
  Bijection out;
  out.forward.assign(forward.size(), kNoElem);
  for (ElemId e = 0; e < forward.size(); ++e) out.forward[forward[e]] = e;
  return out;
}

namespace {

struct SymbolTriple {
  SymbolId in_m;
  SymbolId in_n;
  SymbolKind kind;
  int arity;
};

// Per-element occurrence counts per (symbol, position): a cheap invariant
// that must agree between paired elements.
std::vector<std::vector<int>> element_profiles(const Structure& s,
                                               const std::vector<SymbolTriple>& symbols,
                                               bool use_m) {
  std::vector<std::vector<int>> profile(s.domain_size());
  for (auto& p : profile) p.reserve(symbols.size() * 2);
  for (const SymbolTriple& sym : symbols) {
    const SymbolId id = use_m ? sym.in_m : sym.in_n;
    std::vector<std::vector<int>> counts(s.domain_size(),
                                         std::vector<int>(static_cast<std::size_t>(sym.arity) + 1, 0));
    if (sym.kind == SymbolKind::kPredicate) {
      for (const Tuple& t : s.predicate_value(id).tuples())
        for (std::size_t i = 0; i < t.size(); ++i) counts[t[i]][i]++;
    } else if (sym.arity == 0) {
      counts[s.constant_value(id)][0]++;
    } else {
      const FunctionValue* fv = s.function_value(id);
      if (fv == nullptr) throw UnknownSymbolError(s.vocabulary().symbol(id).key());
      // Profile the full graph of the function, default included.
      std::vector<std::size_t> idx(static_cast<std::size_t>(sym.arity), 0);
      const std::size_t n = s.domain_size();
      while (true) {
        Tuple args;
        for (std::size_t i : idx) args.push_back(s.domain()[i]);
        const ElemId v = *s.apply_function(id, args);
        for (std::size_t i = 0; i < args.size(); ++i) counts[args[i]][i]++;
        counts[v][static_cast<std::size_t>(sym.arity)]++;
        std::size_t k = idx.size();
        while (k > 0) {
          if (++idx[k - 1] < n) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    for (std::size_t e = 0; e < s.domain_size(); ++e)
      for (int c : counts[e]) profile[e].push_back(c);
  }
  return profile;
}

class IsoSearch {
 public:
  IsoSearch(const Structure& m, const Structure& n,
            std::vector<SymbolTriple> symbols)
      : m_(m), n_(n), symbols_(std::move(symbols)) {
    map_.assign(m_.domain_size(), kNoElem);
    used_.assign(n_.domain_size(), false);
    profile_m_ = element_profiles(m_, symbols_, true);
    profile_n_ = element_profiles(n_, symbols_, false);
  }

  std::optional<Bijection> run() {
    // Constants force their pairing up front.
    for (const SymbolTriple& sym : symbols_) {
      if (sym.kind != SymbolKind::kFunction || sym.arity != 0) continue;
      const ElemId a = m_.constant_value(sym.in_m);
      const ElemId b = n_.constant_value(sym.in_n);
      if (map_[a] != kNoElem) {
        if (map_[a] != b) return std::nullopt;
        continue;
      }
      if (used_[b] || profile_m_[a] != profile_n_[b]) return std::nullopt;
      map_[a] = b;
      used_[b] = true;
    }
    if (extend(0)) {
      Bijection bij;
      bij.forward = map_;
      return bij;
    }
    return std::nullopt;
  }

 private:
  bool extend(ElemId next) {
    while (next < map_.size() && map_[next] != kNoElem) ++next;
    if (next == map_.size()) return verify();
    for (ElemId cand = 0; cand < used_.size(); ++cand) {
      if (used_[cand] || profile_m_[next] != profile_n_[cand]) continue;
      map_[next] = cand;
      used_[cand] = true;
      if (partial_ok(next) && extend(next + 1)) return true;
      map_[next] = kNoElem;
      used_[cand] = false;
    }
    return false;
  }

  bool mapped(const Tuple& t) const {
    return std::all_of(t.begin(), t.end(),
                       [&](ElemId e) { return map_[e] != kNoElem; });
  }

  Tuple image(const Tuple& t) const {
    Tuple out;
    out.reserve(t.size());
    for (ElemId e : t) out.push_back(map_[e]);
    return out;
  }

  // Checks every predicate tuple and function entry that became fully mapped
  // by the newest assignment.
  bool partial_ok(ElemId newest) {
    for (const SymbolTriple& sym : symbols_) {
      if (sym.kind != SymbolKind::kPredicate) continue;
      for (const Tuple& t : m_.predicate_value(sym.in_m).tuples()) {
        if (std::find(t.begin(), t.end(), newest) == t.end()) continue;
        if (!mapped(t)) continue;
        if (!n_.predicate_value(sym.in_n).contains(image(t))) return false;
      }
    }
    return true;
  }

  bool verify() const {
    for (const SymbolTriple& sym : symbols_) {
      if (sym.kind == SymbolKind::kPredicate) {
        const Relation& rm = m_.predicate_value(sym.in_m);
        const Relation& rn = n_.predicate_value(sym.in_n);
        if (rm.size() != rn.size()) return false;
        for (const Tuple& t : rm.tuples())
          if (!rn.contains(image(t))) return false;
      } else if (sym.arity == 0) {
        if (map_[m_.constant_value(sym.in_m)] != n_.constant_value(sym.in_n))
          return false;
      } else {
        std::vector<std::size_t> idx(static_cast<std::size_t>(sym.arity), 0);
        const std::size_t dn = m_.domain_size();
        while (true) {
          Tuple args;
          for (std::size_t i : idx) args.push_back(m_.domain()[i]);
          const ElemId v = *m_.apply_function(sym.in_m, args);
          if (*n_.apply_function(sym.in_n, image(args)) != map_[v]) return false;
          std::size_t k = idx.size();
          while (k > 0) {
            if (++idx[k - 1] < dn) break;
            idx[k - 1] = 0;
            --k;
          }
          if (k == 0) break;
        }
      }
    }
    return true;
  }

  const Structure& m_;
  const Structure& n_;
  std::vector<SymbolTriple> symbols_;
  std::vector<ElemId> map_;
  std::vector<bool> used_;
  std::vector<std::vector<int>> profile_m_, profile_n_;
};

}  // namespace

std::optional<Bijection> find_isomorphism(const Structure& m, const Structure& n,
                                          const Vocabulary& sigma) {
  if (!m.is_extensional() || !n.is_extensional())
    throw UnsupportedFormError(
        "isomorphism search works on extensional structures; compare "
        "term-generated structures symbolically");
  if (m.domain_size() != n.domain_size()) return std::nullopt;

  std::vector<SymbolTriple> symbols;
  for (SymbolId id = 0; id < sigma.size(); ++id) {
    const Symbol& s = sigma.symbol(id);
    const SymbolId in_m = m.vocabulary().find(s.kind, s.name, s.arity);
    const SymbolId in_n = n.vocabulary().find(s.kind, s.name, s.arity);
    if (in_m == kNoSymbol || in_n == kNoSymbol) throw UnknownSymbolError(s.key());
    symbols.push_back({in_m, in_n, s.kind, s.arity});
  }
  return IsoSearch(m, n, std::move(symbols)).run();
}

}  // namespace defcheck
