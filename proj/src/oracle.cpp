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

#include "defcheck/oracle.hpp"

#include <algorithm>
#include <map>

#include "defcheck/herbrand.hpp"

namespace defcheck {

namespace {

// Bit-level encoding of all defined-predicate assignments over a finite
// domain: one bit per possible tuple, one uint64 per candidate.
struct BitSpace {
  struct PredSpace {
    std::string key;
    int arity = 0;
    int first_bit = 0;
    std::vector<Tuple> tuples;  // bit i - first_bit  <->  tuples[i]
  };
  std::vector<PredSpace> preds;
  int bits = 0;

  static BitSpace build(const Definition& d, const Structure& m,
                        std::uint64_t budget) {
    BitSpace space;
    for (const std::string& key : d.defined()) {
      PredSpace ps;
      ps.key = key;
      ps.arity = std::stoi(key.substr(key.rfind('/') + 1));
      ps.first_bit = space.bits;
      std::uint64_t count = 1;
      for (int i = 0; i < ps.arity; ++i) count *= m.domain_size();
      if (count > 63 || space.bits + static_cast<int>(count) > 63)
        throw BudgetExceededError(~0ull, budget);
      Tuple t(static_cast<std::size_t>(ps.arity), 0);
      std::vector<std::size_t> idx(static_cast<std::size_t>(ps.arity), 0);
      while (true) {
        for (std::size_t i = 0; i < idx.size(); ++i) t[i] = m.domain()[idx[i]];
        ps.tuples.push_back(t);
        std::size_t k = idx.size();
        while (k > 0) {
          if (++idx[k - 1] < m.domain_size()) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
      space.bits += static_cast<int>(ps.tuples.size());
      space.preds.push_back(std::move(ps));
    }
    if (space.bits > 0 && (1ull << space.bits) > budget)
      throw BudgetExceededError(1ull << space.bits, budget);
    return space;
  }

  int bit_of(const std::string& key, const Tuple& args) const {
    for (const PredSpace& ps : preds) {
      if (ps.key != key) continue;
      for (std::size_t i = 0; i < ps.tuples.size(); ++i)
        if (ps.tuples[i] == args) return ps.first_bit + static_cast<int>(i);
    }
    throw UnknownSymbolError(key);
  }

  Interpretation decode(std::uint64_t candidate) const {
    Interpretation out;
    for (const PredSpace& ps : preds) {
      Relation& rel = out[ps.key];
      for (std::size_t i = 0; i < ps.tuples.size(); ++i)
        if (candidate & (1ull << (ps.first_bit + static_cast<int>(i))))
          rel.insert(ps.tuples[i]);
    }
    return out;
  }
};

struct BitInstance {
  int head_bit = 0;
  std::uint64_t pos_mask = 0;
  std::uint64_t neg_mask = 0;
};

std::vector<BitInstance> bit_instances(const Definition& d, const Structure& m,
                                       const BitSpace& space) {
  std::vector<BitInstance> out;
  for (const GroundRule& r : ground(d, m).rules) {
    BitInstance inst;
    inst.head_bit = space.bit_of(r.head_pred, r.head_args);
    for (const GroundLiteral& l : r.body) {
      const int bit = space.bit_of(l.pred_key, l.args);
      (l.positive ? inst.pos_mask : inst.neg_mask) |= 1ull << bit;
    }
    out.push_back(inst);
  }
  return out;
}

bool satisfies_implications(const std::vector<BitInstance>& instances,
                            std::uint64_t candidate) {
  for (const BitInstance& inst : instances) {
    const bool body = (candidate & inst.pos_mask) == inst.pos_mask &&
                      (candidate & inst.neg_mask) == 0;
    if (body && !(candidate & (1ull << inst.head_bit))) return false;
  }
  return true;
}

std::uint64_t one_step(const std::vector<BitInstance>& instances,
                       std::uint64_t candidate) {
  std::uint64_t out = 0;
  for (const BitInstance& inst : instances) {
    const bool body = (candidate & inst.pos_mask) == inst.pos_mask &&
                      (candidate & inst.neg_mask) == 0;
    if (body) out |= 1ull << inst.head_bit;
  }
  return out;
}

std::uint64_t encode_structure(const Structure& m, const BitSpace& space) {
  std::uint64_t bits = 0;
  for (const BitSpace::PredSpace& ps : space.preds) {
    const auto slash = ps.key.rfind('/');
    const SymbolId p = m.vocabulary().find(SymbolKind::kPredicate,
                                           ps.key.substr(0, slash), ps.arity);
    if (p == kNoSymbol) throw UnknownSymbolError(ps.key);
    for (const Tuple& t : m.predicate_value(p).tuples())
      bits |= 1ull << space.bit_of(ps.key, t);
  }
  return bits;
}

}  // namespace

bool brute_force_minimal_check(const Structure& m, const Definition& d,
                               const OracleOptions& opts) {
  if (!m.is_extensional())
    throw UnsupportedFormError("the brute-force oracle runs on extensional structures");
  if (d.has_negation())
    throw UnsupportedFormError("the brute-force oracle runs on negation-free definitions");

  const BitSpace space = BitSpace::build(d, m, opts.candidate_budget);
  const auto instances = bit_instances(d, m, space);
  const std::uint64_t m_bits = encode_structure(m, space);

  if (!satisfies_implications(instances, m_bits)) return false;
  const std::uint64_t total = space.bits == 0 ? 1 : (1ull << space.bits);
  for (std::uint64_t n = 0; n < total; ++n) {
    if (!satisfies_implications(instances, n)) continue;
    if ((m_bits & ~n) != 0) return false;  // m exceeds a satisfying assignment
  }
  return true;
}

// ---------------------------------------------------------------------------
// Completion
// ---------------------------------------------------------------------------

namespace {

Term substitute(const Term& t, const std::map<std::string, Term>& sub) {
  if (t.is_variable()) {
    auto it = sub.find(t.name());
    return it == sub.end() ? t : it->second;
  }
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(substitute(a, sub));
  return Term::apply(t.name(), std::move(args));
}

std::string render_literal(const Literal& l, const std::map<std::string, Term>& sub) {
  switch (l.kind) {
    case LiteralKind::kAtom:
    case LiteralKind::kNegAtom: {
      Atom a = l.atom;
      for (Term& t : a.args) t = substitute(t, sub);
      return (l.kind == LiteralKind::kNegAtom ? "not " : "") + a.to_string();
    }
    case LiteralKind::kTrue:
      return "true";
    case LiteralKind::kFalse:
      return "false";
    case LiteralKind::kEq:
      return substitute(l.terms[0], sub).to_string() + " = " +
             substitute(l.terms[1], sub).to_string();
    case LiteralKind::kNeq:
      return substitute(l.terms[0], sub).to_string() + " != " +
             substitute(l.terms[1], sub).to_string();
  }
  return "?";
}

}  // namespace

CompletionTheory::CompletionTheory(Definition d) : def_(std::move(d)) {
  if (def_.has_negation())
    throw UnsupportedFormError("completion is built for negation-free definitions");
  for (const std::string& key : def_.defined()) {
    const auto slash = key.rfind('/');
    const std::string name = key.substr(0, slash);
    const int arity = std::stoi(key.substr(slash + 1));

    std::vector<std::string> head_vars;
    for (int i = 0; i < arity; ++i) head_vars.push_back("X" + std::to_string(i + 1));

    std::string rhs;
    for (const Rule& r : def_.rules()) {
      if (r.head.pred_key() != key) continue;
      // Are the head arguments pairwise distinct variables?
      bool distinct_vars = true;
      std::set<std::string> seen;
      for (const Term& t : r.head.args)
        distinct_vars = distinct_vars && t.is_variable() && seen.insert(t.name()).second;

      std::map<std::string, Term> sub;
      std::vector<std::string> conjuncts;
      std::set<std::string> rule_vars;
      for (const Term& t : r.head.args) t.collect_variables(rule_vars);
      for (const Literal& l : r.body) {
        if (l.is_pred())
          for (const Term& t : l.atom.args) t.collect_variables(rule_vars);
        else
          for (const Term& t : l.terms) t.collect_variables(rule_vars);
      }

      std::vector<std::string> exists_vars;
      if (distinct_vars) {
        for (int i = 0; i < arity; ++i)
          sub.emplace(r.head.args[static_cast<std::size_t>(i)].name(),
                      Term::variable(head_vars[static_cast<std::size_t>(i)]));
        for (const std::string& v : rule_vars)
          if (!sub.count(v)) exists_vars.push_back(v);
      } else {
        // Keep the unification explicit: Xi = t_i for each head position.
        int fresh = 0;
        for (const std::string& v : rule_vars) {
          sub.emplace(v, Term::variable("Y" + std::to_string(++fresh)));
          exists_vars.push_back("Y" + std::to_string(fresh));
        }
        for (int i = 0; i < arity; ++i)
          conjuncts.push_back(head_vars[static_cast<std::size_t>(i)] + " = " +
                              substitute(r.head.args[static_cast<std::size_t>(i)], sub)
                                  .to_string());
      }
      for (const Literal& l : r.body) conjuncts.push_back(render_literal(l, sub));
      if (conjuncts.empty()) conjuncts.push_back("true");

      std::string disjunct;
      for (std::size_t i = 0; i < conjuncts.size(); ++i) {
        if (i) disjunct += " & ";
        disjunct += conjuncts[i];
      }
      if (!exists_vars.empty()) {
        std::string ex = "exists ";
        for (std::size_t i = 0; i < exists_vars.size(); ++i) {
          if (i) ex += ",";
          ex += exists_vars[i];
        }
        disjunct = ex + ". (" + disjunct + ")";
      } else if (conjuncts.size() > 1) {
        disjunct = "(" + disjunct + ")";
      }
      rhs += rhs.empty() ? disjunct : " | " + disjunct;
    }

    std::string lhs = name;
    if (arity > 0) {
      lhs += "(";
      for (int i = 0; i < arity; ++i) {
        if (i) lhs += ",";
        lhs += head_vars[static_cast<std::size_t>(i)];
      }
      lhs += ")";
    }
    rendered_.emplace_back(key, lhs + " <-> " + rhs);
  }
}

std::string CompletionTheory::to_string() const {
  std::string out;
  for (const auto& [key, eq] : rendered_) out += eq + "\n";
  return out;
}

CompletionTheory clark_completion(const Definition& d) { return CompletionTheory(d); }

std::vector<Interpretation> enumerate_completion_models(const CompletionTheory& ct,
                                                        const Structure& params,
                                                        const OracleOptions& opts) {
  if (!params.is_extensional())
    throw UnsupportedFormError("completion models are enumerated over extensional structures");
  const Definition& d = ct.definition();
  const BitSpace space = BitSpace::build(d, params, opts.candidate_budget);
  const auto instances = bit_instances(d, params, space);

  // An assignment satisfies the completed equivalences exactly when it is a
  // fixpoint of the one-step operator: every head holds iff some rule body
  // supports it.
  std::vector<Interpretation> models;
  const std::uint64_t total = space.bits == 0 ? 1 : (1ull << space.bits);
  for (std::uint64_t n = 0; n < total; ++n)
    if (one_step(instances, n) == n) models.push_back(space.decode(n));
  return models;
}

GapReport horn_entailment_gap_report(const Program& p, const std::vector<Atom>& atoms,
                                     int depth_bound, const OracleOptions& opts) {
  if (p.definition().has_negation())
    throw UnsupportedFormError("the material-implication gap is read off negation-free programs");
  GapReport report;
  EvalOptions eval_opts;
  eval_opts.instance_budget = opts.candidate_budget;

  // One all-true witness over a shared closure universe: it satisfies every
  // implication, so no negated defined atom is ever entailed by them.
  {
    std::vector<Term> seeds;
    for (const Rule& r : p.definition().rules()) {
      for (const Term& t : r.head.args) t.collect_ground_subterms(seeds);
      for (const Literal& l : r.body) {
        if (l.is_pred())
          for (const Term& t : l.atom.args) t.collect_ground_subterms(seeds);
        else
          for (const Term& t : l.terms) t.collect_ground_subterms(seeds);
      }
    }
    for (const Atom& a : atoms)
      for (const Term& t : a.args)
        if (t.is_ground() && t.depth() <= depth_bound) seeds.push_back(t);
    Vocabulary vocab;
    Structure all_true = Structure::make_term_generated_closure(
        vocab, p.constructors(), depth_bound, seeds);
    for (const std::string& key : p.definition().defined()) {
      const auto slash = key.rfind('/');
      const int arity = std::stoi(key.substr(slash + 1));
      Relation& rel = all_true.add_predicate(key.substr(0, slash), arity);
      std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
      while (true) {
        Tuple t;
        for (std::size_t i : idx) t.push_back(all_true.domain()[i]);
        rel.insert(std::move(t));
        std::size_t k = idx.size();
        while (k > 0) {
          if (++idx[k - 1] < all_true.domain_size()) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0 || arity == 0) break;
      }
    }
    report.all_true_model_verified = satisfies_fo(all_true, p.definition(), eval_opts);
  }

  report.flag = ExactnessFlag::exact_result();
  for (const Atom& atom : atoms) {
    GapRow row;
    row.atom = atom;
    if (!p.definition().defines(atom.pred_key())) {
      row.accepted = false;
      row.note = "predicate is not defined by the program; it carries no information";
      report.rows.push_back(std::move(row));
      continue;
    }
    row.accepted = true;
    Verdict v = entails_literal(p, Literal::pos(atom), depth_bound, eval_opts);
    row.in_lhm = v.holds;
    if (!v.flag.exact) report.flag = v.flag;
    row.horn_entails_atom = v.holds;
    row.horn_entails_negation = false;
    row.note = v.holds
                   ? "holds in the least model; the implications entail it too"
                   : "false in the least model, yet satisfiable together with the "
                     "implications (all-true witness)";
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace defcheck
