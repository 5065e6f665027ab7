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

#include "defcheck/engine.hpp"

#include <algorithm>
#include <functional>

#include "defcheck/herbrand.hpp"
#include "defcheck/isomorphism.hpp"

namespace defcheck {

namespace {

// ===========================================================================
// Compiled rules
// ===========================================================================

struct CTerm {
  int var = -1;                  // >= 0: variable index, the fields below unused
  ElemId fixed = kNoElem;        // direct domain element (extensional names)
  SymbolId functor = kNoSymbol;  // application
  bool constructor = false;      // invertible term-formation pattern
  std::vector<CTerm> args;

  bool is_var() const { return var >= 0; }
  bool is_fixed() const { return fixed != kNoElem; }
};

struct CAtom {
  int pred = -1;  // index into the predicate table
  std::vector<CTerm> args;
};

struct CLit {
  LiteralKind kind = LiteralKind::kTrue;
  CAtom atom;
  CTerm lhs, rhs;
  bool is_pred() const { return kind == LiteralKind::kAtom || kind == LiteralKind::kNegAtom; }
  bool positive_pred() const { return kind == LiteralKind::kAtom; }
};

struct CRule {
  CAtom head;
  std::vector<CLit> body;
  int num_vars = 0;
  std::vector<std::string> var_names;
  std::size_t rule_index = 0;
};

struct PredInfo {
  std::string key;
  std::string name;
  int arity = 0;
  bool defined = false;        // defined by the (sub)definition being evaluated
  SymbolId in_m = kNoSymbol;   // interpreted symbol in the structure, if any
};

enum class Mode : std::uint8_t {
  kEval,    // defined predicates read from the evolving store
  kGround,  // defined predicates stay symbolic
  kFo,      // every predicate read from the structure
};

class Compiler {
 public:
  Compiler(const Definition& d, const Structure& m, Mode mode) : m_(m) {
    for (const Rule& r : d.rules()) pred_index(r.head.pred_key(), r.head, d);
    for (std::size_t i = 0; i < d.rules().size(); ++i) {
      const Rule& r = d.rules()[i];
      CRule cr;
      cr.rule_index = i;
      std::map<std::string, int> vars;
      cr.head.pred = pred_index(r.head.pred_key(), r.head, d);
      for (const Term& t : r.head.args) cr.head.args.push_back(compile_term(t, vars, cr));
      for (const Literal& l : r.body) {
        CLit cl;
        cl.kind = l.kind;
        if (l.is_pred()) {
          cl.atom.pred = pred_index(l.atom.pred_key(), l.atom, d);
          for (const Term& t : l.atom.args)
            cl.atom.args.push_back(compile_term(t, vars, cr));
        } else if (l.kind == LiteralKind::kEq || l.kind == LiteralKind::kNeq) {
          cl.lhs = compile_term(l.terms[0], vars, cr);
          cl.rhs = compile_term(l.terms[1], vars, cr);
        }
        cr.body.push_back(std::move(cl));
      }
      cr.num_vars = static_cast<int>(vars.size());
      rules_.push_back(std::move(cr));
    }
    if (mode == Mode::kFo) {
      for (PredInfo& p : preds_)
        if (p.in_m == kNoSymbol) throw UnknownSymbolError(p.key);
    } else {
      for (const PredInfo& p : preds_)
        if (!p.defined && p.in_m == kNoSymbol) throw UnknownSymbolError(p.key);
    }
  }

  const std::vector<CRule>& rules() const { return rules_; }
  const std::vector<PredInfo>& preds() const { return preds_; }

 private:
  int pred_index(const std::string& key, const Atom& atom, const Definition& d) {
    auto it = by_key_.find(key);
    if (it != by_key_.end()) return it->second;
    PredInfo info;
    info.key = key;
    info.name = atom.predicate;
    info.arity = static_cast<int>(atom.args.size());
    info.defined = d.defines(key);
    info.in_m = m_.vocabulary().find(SymbolKind::kPredicate, atom.predicate, info.arity);
    const int idx = static_cast<int>(preds_.size());
    preds_.push_back(std::move(info));
    by_key_.emplace(key, idx);
    return idx;
  }

  CTerm compile_term(const Term& t, std::map<std::string, int>& vars, CRule& cr) {
    CTerm ct;
    if (t.is_variable()) {
      auto [it, fresh] = vars.emplace(t.name(), static_cast<int>(vars.size()));
      if (fresh) cr.var_names.push_back(t.name());
      ct.var = it->second;
      return ct;
    }
    const int arity = static_cast<int>(t.args().size());
    const SymbolId f = m_.vocabulary().find(SymbolKind::kFunction, t.name(), arity);
    if (f != kNoSymbol && m_.has_function(f)) {
      ct.functor = f;
      ct.constructor = m_.is_constructor_symbol(f);
      for (const Term& a : t.args()) ct.args.push_back(compile_term(a, vars, cr));
      return ct;
    }
    if (arity == 0 && m_.is_extensional()) {
      if (auto e = m_.find_element(t.name())) {
        ct.fixed = *e;
        return ct;
      }
    }
    throw UnknownSymbolError(t.name() + "/" + std::to_string(arity));
  }

  const Structure& m_;
  std::vector<CRule> rules_;
  std::vector<PredInfo> preds_;
  std::map<std::string, int> by_key_;
};

// ===========================================================================
// Plans
// ===========================================================================

struct PStep {
  enum class K : std::uint8_t { kScan, kCheck, kGenerate, kEnumerate } kind = K::kCheck;
  int lit = -1;                        // kScan / kCheck
  std::uint32_t scan_mask = 0;         // kScan: positions bound at plan time
  const CTerm* gen_pattern = nullptr;  // kGenerate
  int gen_narrow_arg = -1;             // kGenerate: bound argument for the index
  int enum_var = -1;                   // kEnumerate
};

struct RulePlan {
  const CRule* rule = nullptr;
  std::vector<PStep> steps;
  int delta_lit = -1;
};

void collect_vars(const CTerm& t, std::vector<bool>& out) {
  if (t.is_var()) {
    out[t.var] = true;
    return;
  }
  for (const CTerm& a : t.args) collect_vars(a, out);
}

bool vars_subset(const CTerm& t, const std::vector<bool>& bound) {
  if (t.is_var()) return bound[t.var];
  for (const CTerm& a : t.args)
    if (!vars_subset(a, bound)) return false;
  return true;
}

// Structurally matchable against a domain element without evaluation.
bool pattern_matchable(const CTerm& t) {
  if (t.is_var() || t.is_fixed()) return true;
  if (!t.constructor) return false;
  for (const CTerm& a : t.args)
    if (!pattern_matchable(a)) return false;
  return true;
}

// An atom is scannable when every argument is either structurally
// matchable or evaluable from variables that other arguments of the same
// atom (or earlier steps) bind.
bool atom_scannable(const CAtom& atom, const std::vector<bool>& bound) {
  std::vector<bool> reach = bound;
  for (const CTerm& a : atom.args)
    if (pattern_matchable(a)) collect_vars(a, reach);
  for (const CTerm& a : atom.args)
    if (!pattern_matchable(a) && !vars_subset(a, reach)) return false;
  return true;
}

class Planner {
 public:
  Planner(const CRule& rule, const std::vector<PredInfo>& preds, Mode mode,
          bool term_generated)
      : rule_(rule), preds_(preds), mode_(mode), tg_(term_generated) {}

  RulePlan build(int delta_lit) {
    RulePlan plan;
    plan.rule = &rule_;
    plan.delta_lit = delta_lit;
    bound_.assign(static_cast<std::size_t>(rule_.num_vars), false);
    done_.assign(rule_.body.size(), false);

    if (delta_lit >= 0) place_scan(plan, delta_lit);

    while (true) {
      if (place_checkable(plan)) continue;
      if (place_scannable(plan)) continue;
      if (!all_vars_needed_bound()) {
        if (tg_ && place_generate(plan)) continue;
        place_enumerate(plan);
        continue;
      }
      break;
    }
    // Everything must be checkable by now.
    while (place_checkable(plan)) {
    }
    for (std::size_t i = 0; i < rule_.body.size(); ++i) {
      if (done_[i]) continue;
      if (mode_ == Mode::kGround && rule_.body[i].is_pred() &&
          preds_[rule_.body[i].atom.pred].defined)
        continue;  // stays symbolic; emit() evaluates its arguments
      throw UnsupportedFormError("cannot schedule literal " +
                                 std::to_string(i + 1) + " of a rule");
    }
    return plan;
  }

 private:
  bool lit_relational(const CLit& l) const {
    if (!l.positive_pred()) return false;
    const PredInfo& p = preds_[l.atom.pred];
    if (mode_ == Mode::kGround && p.defined) return false;
    return true;
  }

  void place_scan(RulePlan& plan, int lit) {
    const CLit& l = rule_.body[static_cast<std::size_t>(lit)];
    if (!atom_scannable(l.atom, bound_))
      throw UnsupportedFormError("cannot seed a scan from this literal");
    PStep step;
    step.kind = PStep::K::kScan;
    step.lit = lit;
    for (std::size_t i = 0; i < l.atom.args.size(); ++i)
      if (vars_subset(l.atom.args[i], bound_)) step.scan_mask |= 1u << i;
    for (const CTerm& a : l.atom.args)
      if (pattern_matchable(a)) collect_vars(a, bound_);
    // Evaluable-only arguments become bound too once matching succeeds? No:
    // they are compared by value, their variables were bound already.
    done_[static_cast<std::size_t>(lit)] = true;
    plan.steps.push_back(step);
  }

  bool place_checkable(RulePlan& plan) {
    for (std::size_t i = 0; i < rule_.body.size(); ++i) {
      if (done_[i]) continue;
      const CLit& l = rule_.body[i];
      bool ready = false;
      switch (l.kind) {
        case LiteralKind::kTrue:
        case LiteralKind::kFalse:
          ready = true;
          break;
        case LiteralKind::kEq:
        case LiteralKind::kNeq:
          ready = vars_subset(l.lhs, bound_) && vars_subset(l.rhs, bound_);
          break;
        case LiteralKind::kAtom:
        case LiteralKind::kNegAtom: {
          if (mode_ == Mode::kGround && preds_[l.atom.pred].defined) break;
          ready = true;
          for (const CTerm& a : l.atom.args) ready = ready && vars_subset(a, bound_);
          break;
        }
      }
      if (ready) {
        PStep step;
        step.kind = PStep::K::kCheck;
        step.lit = static_cast<int>(i);
        plan.steps.push_back(step);
        done_[i] = true;
        return true;
      }
    }
    return false;
  }

  bool place_scannable(RulePlan& plan) {
    int best = -1;
    int best_bound = -1;
    for (std::size_t i = 0; i < rule_.body.size(); ++i) {
      if (done_[i]) continue;
      const CLit& l = rule_.body[i];
      if (!lit_relational(l) || !atom_scannable(l.atom, bound_)) continue;
      int n = 0;
      for (const CTerm& a : l.atom.args)
        if (vars_subset(a, bound_)) ++n;
      if (n > best_bound) {
        best_bound = n;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) return false;
    place_scan(plan, best);
    return true;
  }

  bool all_vars_needed_bound() const {
    std::vector<bool> needed(static_cast<std::size_t>(rule_.num_vars), false);
    for (const CTerm& a : rule_.head.args) collect_vars(a, needed);
    for (std::size_t i = 0; i < rule_.body.size(); ++i) {
      const CLit& l = rule_.body[i];
      if (l.is_pred())
        for (const CTerm& a : l.atom.args) collect_vars(a, needed);
      if (l.kind == LiteralKind::kEq || l.kind == LiteralKind::kNeq) {
        collect_vars(l.lhs, needed);
        collect_vars(l.rhs, needed);
      }
    }
    for (int v = 0; v < rule_.num_vars; ++v)
      if (needed[static_cast<std::size_t>(v)] && !bound_[static_cast<std::size_t>(v)])
        return false;
    return true;
  }

  bool place_generate(RulePlan& plan) {
    for (const CTerm& h : rule_.head.args) {
      if (h.is_var() || h.is_fixed()) continue;
      if (!h.constructor || !pattern_matchable(h)) continue;
      if (vars_subset(h, bound_)) continue;
      PStep step;
      step.kind = PStep::K::kGenerate;
      step.gen_pattern = &h;
      for (std::size_t i = 0; i < h.args.size() && i < 4; ++i) {
        if (vars_subset(h.args[i], bound_)) {
          step.gen_narrow_arg = static_cast<int>(i);
          break;
        }
      }
      collect_vars(h, bound_);
      plan.steps.push_back(step);
      return true;
    }
    return false;
  }

  void place_enumerate(RulePlan& plan) {
    std::vector<bool> needed(static_cast<std::size_t>(rule_.num_vars), false);
    for (const CTerm& a : rule_.head.args) collect_vars(a, needed);
    for (const CLit& l : rule_.body) {
      if (l.is_pred())
        for (const CTerm& a : l.atom.args) collect_vars(a, needed);
      if (l.kind == LiteralKind::kEq || l.kind == LiteralKind::kNeq) {
        collect_vars(l.lhs, needed);
        collect_vars(l.rhs, needed);
      }
    }
    for (int v = 0; v < rule_.num_vars; ++v) {
      if (!needed[static_cast<std::size_t>(v)] || bound_[static_cast<std::size_t>(v)])
        continue;
      PStep step;
      step.kind = PStep::K::kEnumerate;
      step.enum_var = v;
      bound_[static_cast<std::size_t>(v)] = true;
      plan.steps.push_back(step);
      return;
    }
    throw UnsupportedFormError("planner found no variable to enumerate");
  }

  const CRule& rule_;
  const std::vector<PredInfo>& preds_;
  Mode mode_;
  bool tg_;
  std::vector<bool> bound_;
  std::vector<bool> done_;
};

// ===========================================================================
// Execution
// ===========================================================================

struct EvalState {
  const Structure* m = nullptr;
  const std::vector<PredInfo>* preds = nullptr;
  Mode mode = Mode::kEval;
  const Interpretation* store = nullptr;  // defined predicates (kEval)
  const Interpretation* delta = nullptr;  // semi-naive delta (kEval)
  std::uint64_t budget = 1ull << 24;
  std::uint64_t work = 0;
  std::uint64_t truncation_hits = 0;

  void charge(std::uint64_t n = 1) {
    work += n;
    if (work > budget) throw BudgetExceededError(work, budget);
  }

  const Relation& relation_of(int pred, bool from_delta) const {
    static const Relation kEmpty;
    const PredInfo& p = (*preds)[static_cast<std::size_t>(pred)];
    if (mode == Mode::kEval && p.defined) {
      const Interpretation* src = from_delta ? delta : store;
      if (src == nullptr) return kEmpty;
      auto it = src->find(p.key);
      return it == src->end() ? kEmpty : it->second;
    }
    return m->predicate_value(p.in_m);
  }
};

class Executor {
 public:
  Executor(EvalState& st, const RulePlan& plan) : st_(st), plan_(plan) {
    binding_.assign(static_cast<std::size_t>(plan.rule->num_vars), kNoElem);
  }

  // emit(binding) is called for each satisfied body assignment.
  template <typename Emit>
  void run(Emit&& emit) {
    exec(0, emit);
  }

  std::optional<ElemId> eval_term(const CTerm& t) {
    if (t.is_var()) return binding_[static_cast<std::size_t>(t.var)];
    if (t.is_fixed()) return t.fixed;
    Tuple args;
    args.reserve(t.args.size());
    for (const CTerm& a : t.args) {
      auto v = eval_term(a);
      if (!v) return std::nullopt;
      args.push_back(*v);
    }
    auto out = st_.m->apply_function(t.functor, args);
    if (!out) ++st_.truncation_hits;
    return out;
  }

  const Tuple& binding() const { return binding_; }

 private:
  struct TrailMark {
    std::size_t size;
  };

  TrailMark mark() const { return {trail_.size()}; }

  void undo(TrailMark m) {
    while (trail_.size() > m.size) {
      binding_[trail_.back()] = kNoElem;
      trail_.pop_back();
    }
  }

  bool bind(int var, ElemId e) {
    ElemId& slot = binding_[static_cast<std::size_t>(var)];
    if (slot != kNoElem) return slot == e;
    slot = e;
    trail_.push_back(static_cast<std::size_t>(var));
    return true;
  }

  bool match(ElemId e, const CTerm& t) {
    if (t.is_var()) return bind(t.var, e);
    if (t.is_fixed()) return t.fixed == e;
    if (t.constructor) {
      const TermPool& pool = st_.m->pool();
      if (pool.functor(e) != t.functor) return false;
      auto args = pool.args(e);
      for (std::size_t i = 0; i < args.size(); ++i)
        if (!match(args[i], t.args[i])) return false;
      return true;
    }
    auto v = eval_term(t);
    return v && *v == e;
  }

  // Two-pass argument matching: structural patterns first, then evaluated
  // comparisons whose variables the first pass bound.
  bool match_args(const Tuple& tuple, const std::vector<CTerm>& args,
                  std::uint32_t skip_mask) {
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (skip_mask & (1u << i)) continue;
      if (pattern_matchable(args[i]) && !match(tuple[i], args[i])) return false;
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (skip_mask & (1u << i)) continue;
      if (!pattern_matchable(args[i]) && !match(tuple[i], args[i])) return false;
    }
    return true;
  }

  bool check_literal(const CLit& l) {
    switch (l.kind) {
      case LiteralKind::kTrue:
        return true;
      case LiteralKind::kFalse:
        return false;
      case LiteralKind::kEq:
      case LiteralKind::kNeq: {
        auto a = eval_term(l.lhs);
        auto b = eval_term(l.rhs);
        if (!a || !b) return false;  // non-denoting over this domain
        return (l.kind == LiteralKind::kEq) == (*a == *b);
      }
      case LiteralKind::kAtom:
      case LiteralKind::kNegAtom: {
        Tuple args;
        args.reserve(l.atom.args.size());
        for (const CTerm& t : l.atom.args) {
          auto v = eval_term(t);
          if (!v) return false;
          args.push_back(*v);
        }
        const bool holds = st_.relation_of(l.atom.pred, false).contains(args);
        return l.kind == LiteralKind::kAtom ? holds : !holds;
      }
    }
    return false;
  }

  template <typename Emit>
  void exec(std::size_t step_idx, Emit& emit) {
    if (step_idx == plan_.steps.size()) {
      emit(*this);
      return;
    }
    const PStep& step = plan_.steps[step_idx];
    switch (step.kind) {
      case PStep::K::kCheck: {
        st_.charge();
        if (check_literal(plan_.rule->body[static_cast<std::size_t>(step.lit)]))
          exec(step_idx + 1, emit);
        return;
      }
      case PStep::K::kScan: {
        const CLit& l = plan_.rule->body[static_cast<std::size_t>(step.lit)];
        const bool from_delta = step.lit == plan_.delta_lit;
        const Relation& rel = st_.relation_of(l.atom.pred, from_delta);
        if (step.scan_mask != 0) {
          Tuple key(l.atom.args.size(), 0);
          bool ok = true;
          for (std::size_t i = 0; i < l.atom.args.size() && ok; ++i) {
            if (!(step.scan_mask & (1u << i))) continue;
            auto v = eval_term(l.atom.args[i]);
            if (!v)
              ok = false;
            else
              key[i] = *v;
          }
          if (!ok) return;
          rel.probe(step.scan_mask, key, probe_hits_);
          // probe_hits_ is reused across recursion levels; copy out first.
          std::vector<std::uint32_t> hits = probe_hits_;
          for (std::uint32_t idx : hits) {
            st_.charge();
            const TrailMark mk = mark();
            if (match_args(rel.tuples()[idx], l.atom.args, step.scan_mask))
              exec(step_idx + 1, emit);
            undo(mk);
          }
        } else {
          for (const Tuple& t : rel.tuples()) {
            st_.charge();
            const TrailMark mk = mark();
            if (match_args(t, l.atom.args, 0)) exec(step_idx + 1, emit);
            undo(mk);
          }
        }
        return;
      }
      case PStep::K::kGenerate: {
        const CTerm& pat = *step.gen_pattern;
        std::span<const ElemId> candidates;
        if (step.gen_narrow_arg >= 0) {
          auto v = eval_term(pat.args[static_cast<std::size_t>(step.gen_narrow_arg)]);
          if (!v) return;
          candidates = st_.m->elements_with_arg(pat.functor, step.gen_narrow_arg, *v);
        } else {
          candidates = st_.m->elements_with_functor(pat.functor);
        }
        for (ElemId e : candidates) {
          st_.charge();
          const TrailMark mk = mark();
          if (match(e, pat)) exec(step_idx + 1, emit);
          undo(mk);
        }
        return;
      }
      case PStep::K::kEnumerate: {
        for (ElemId e : st_.m->domain()) {
          st_.charge();
          const TrailMark mk = mark();
          if (bind(step.enum_var, e)) exec(step_idx + 1, emit);
          undo(mk);
        }
        return;
      }
    }
  }

  EvalState& st_;
  const RulePlan& plan_;
  Tuple binding_;
  std::vector<std::size_t> trail_;
  std::vector<std::uint32_t> probe_hits_;
};

// ===========================================================================
// Fixpoint drivers
// ===========================================================================

struct StratumResult {
  Interpretation relations;
};

// All plans of one rule for semi-naive evaluation.
struct RulePlans {
  RulePlan base;                    // delta-free plan (round 0 / naive step)
  std::vector<RulePlan> variants;   // one per positive defined body literal
  bool rerun_every_round = false;   // fallback when no variant is seedable
  bool has_defined_positive = false;
};

std::vector<RulePlans> build_all_plans(const Compiler& comp, const Structure& m,
                                       Mode mode) {
  std::vector<RulePlans> out;
  const bool tg = !m.is_extensional();
  for (const CRule& rule : comp.rules()) {
    RulePlans plans;
    Planner base_planner(rule, comp.preds(), mode, tg);
    plans.base = base_planner.build(-1);
    for (std::size_t i = 0; mode == Mode::kEval && i < rule.body.size(); ++i) {
      const CLit& l = rule.body[i];
      if (!l.positive_pred() || !comp.preds()[l.atom.pred].defined) continue;
      plans.has_defined_positive = true;
      try {
        Planner p(rule, comp.preds(), mode, tg);
        plans.variants.push_back(p.build(static_cast<int>(i)));
      } catch (const UnsupportedFormError&) {
        plans.rerun_every_round = true;
      }
    }
    out.push_back(std::move(plans));
  }
  return out;
}

// Semi-naive least fixpoint of one stratum. Deltas per round equal the
// all-rules immediate-consequence steps from the empty interpretation.
StratumResult seminaive_fixpoint(const Definition& stratum_def, const Structure& m,
                                 const EvalOptions& opts, std::uint64_t& truncation_hits,
                                 InductionTrace* trace, int stratum_index) {
  Compiler comp(stratum_def, m, Mode::kEval);
  auto plans = build_all_plans(comp, m, Mode::kEval);

  Interpretation store;
  for (const std::string& key : stratum_def.defined()) store[key];

  EvalState st;
  st.m = &m;
  st.preds = &comp.preds();
  st.mode = Mode::kEval;
  st.store = &store;
  st.budget = opts.instance_budget;

  Interpretation delta_prev;
  auto run_round = [&](bool base_round) {
    Interpretation delta_next;
    std::vector<FiredInstance> fired;
    st.delta = &delta_prev;
    auto fire = [&](const RulePlan& plan) {
      Executor ex(st, plan);
      ex.run([&](Executor& e) {
        Tuple head;
        head.reserve(plan.rule->head.args.size());
        for (const CTerm& t : plan.rule->head.args) {
          auto v = e.eval_term(t);
          if (!v) return;
          head.push_back(*v);
        }
        const PredInfo& hp = comp.preds()[plan.rule->head.pred];
        if (store.at(hp.key).contains(head)) return;
        if (delta_next[hp.key].insert(head) && trace != nullptr)
          fired.push_back({plan.rule->rule_index, hp.key, std::move(head)});
      });
    };
    for (const RulePlans& rp : plans) {
      if (base_round) {
        fire(rp.base);
      } else if (rp.rerun_every_round) {
        fire(rp.base);
      } else {
        for (const RulePlan& v : rp.variants) fire(v);
      }
    }
    // Publish the round: the store advances only between rounds, so every
    // scan in a round reads the same snapshot.
    bool grew = false;
    for (auto& [key, rel] : delta_next) {
      for (const Tuple& t : rel.tuples()) store[key].insert(t);
      grew = grew || !rel.empty();
    }
    if (grew && trace != nullptr) {
      TraceStep step;
      step.stratum = stratum_index;
      step.delta = delta_next;
      step.fired = std::move(fired);
      trace->steps.push_back(std::move(step));
    }
    delta_prev = std::move(delta_next);
    return grew;
  };

  run_round(true);
  while (run_round(false)) {
  }
  truncation_hits += st.truncation_hits;
  return {std::move(store)};
}

// Ground-rule application: one all-rules step over a static grounding.
Interpretation apply_ground_rules(const std::vector<GroundRule>& rules,
                                  const Interpretation& s) {
  Interpretation out;
  for (const GroundRule& r : rules) {
    bool holds = true;
    for (const GroundLiteral& l : r.body) {
      auto it = s.find(l.pred_key);
      const bool present = it != s.end() && it->second.contains(l.args);
      if (present != l.positive) {
        holds = false;
        break;
      }
    }
    if (holds) out[r.head_pred].insert(r.head_args);
  }
  return out;
}

bool interp_equal(const Interpretation& a, const Interpretation& b) {
  auto nonempty = [](const Interpretation& x) {
    std::size_t n = 0;
    for (const auto& [k, rel] : x) n += rel.size();
    return n;
  };
  if (nonempty(a) != nonempty(b)) return false;
  for (const auto& [key, rel] : a) {
    if (rel.empty()) continue;
    auto it = b.find(key);
    if (it == b.end() || !(it->second == rel)) return false;
  }
  return true;
}

// Naive least fixpoint: static grounding, then iterated full application.
StratumResult naive_fixpoint(const Definition& stratum_def, const Structure& m,
                             const EvalOptions& opts, std::uint64_t& truncation_hits) {
  Grounding g = ground(stratum_def, m, opts);
  if (!g.flag.exact) ++truncation_hits;
  Interpretation s;
  for (const std::string& key : stratum_def.defined()) s[key];
  while (true) {
    Interpretation next = apply_ground_rules(g.rules, s);
    for (const std::string& key : stratum_def.defined()) next[key];
    if (interp_equal(next, s)) break;
    s = std::move(next);
  }
  return {std::move(s)};
}

Definition stratum_definition(const Definition& d, const std::vector<std::string>& preds) {
  std::set<std::string> in_stratum(preds.begin(), preds.end());
  std::vector<Rule> rules;
  for (const Rule& r : d.rules())
    if (in_stratum.count(r.head.pred_key())) rules.push_back(r);
  return Definition::classify(std::move(rules));
}

ExactnessFlag result_flag(const Definition& d, const Structure& m) {
  if (m.is_extensional() || m.universe_complete()) return ExactnessFlag::exact_result();
  if (definition_subterm_closed(d)) return ExactnessFlag::exact_result();
  return ExactnessFlag::truncated(
      "rules are not depth-non-increasing and the universe is cut off at depth " +
      std::to_string(m.depth_bound()));
}

// Stratified evaluation shared by unique_expansion / induction_process.
std::pair<Structure, Interpretation> evaluate_strata(const Definition& d,
                                                     const Structure& params,
                                                     const EvalOptions& opts,
                                                     InductionTrace* trace) {
  const auto strata = stratify(d);
  Structure work = params;
  Interpretation all;
  std::uint64_t truncation_hits = 0;
  int stratum_index = 0;
  for (const auto& stratum : strata) {
    Definition sub = stratum_definition(d, stratum);
    StratumResult result =
        opts.strategy == EvalStrategy::kNaive
            ? naive_fixpoint(sub, work, opts, truncation_hits)
            : seminaive_fixpoint(sub, work, opts, truncation_hits, trace, stratum_index);
    for (const std::string& key : sub.defined()) {
      Relation rel = result.relations[key];
      const auto slash = key.rfind('/');
      const std::string name = key.substr(0, slash);
      const int arity = std::stoi(key.substr(slash + 1));
      work.set_predicate(name, arity, rel);
      all[key] = std::move(rel);
    }
    ++stratum_index;
  }
  return {std::move(work), std::move(all)};
}

}  // namespace

// ===========================================================================
// Public operations
// ===========================================================================

bool definition_subterm_closed(const Definition& d) {
  auto contains = [](const Term& hay, const Term& needle) {
    std::function<bool(const Term&)> walk = [&](const Term& t) {
      if (t == needle) return true;
      if (t.is_variable()) return false;
      for (const Term& a : t.args())
        if (walk(a)) return true;
      return false;
    };
    return walk(hay);
  };
  for (const Rule& r : d.rules()) {
    auto covered = [&](const Term& t) {
      for (const Term& h : r.head.args)
        if (contains(h, t)) return true;
      return t.is_ground();
    };
    for (const Literal& l : r.body) {
      if (l.is_pred()) {
        if (!d.defines(l.atom.pred_key())) continue;
        for (const Term& t : l.atom.args)
          if (!covered(t)) return false;
      } else if (l.kind == LiteralKind::kEq || l.kind == LiteralKind::kNeq) {
        for (const Term& t : l.terms)
          if (!covered(t)) return false;
      }
    }
  }
  return true;
}

bool evaluate_literal(const Structure& m, const std::map<std::string, ElemId>& assignment,
                      const Literal& literal) {
  switch (literal.kind) {
    case LiteralKind::kTrue:
      return true;
    case LiteralKind::kFalse:
      return false;
    case LiteralKind::kEq:
    case LiteralKind::kNeq: {
      const ElemId a = evaluate_term(m, assignment, literal.terms[0]);
      const ElemId b = evaluate_term(m, assignment, literal.terms[1]);
      return (literal.kind == LiteralKind::kEq) == (a == b);
    }
    case LiteralKind::kAtom:
    case LiteralKind::kNegAtom: {
      const Atom& atom = literal.atom;
      const SymbolId p = m.vocabulary().find(SymbolKind::kPredicate, atom.predicate,
                                             static_cast<int>(atom.args.size()));
      if (p == kNoSymbol) throw UnknownSymbolError(atom.pred_key());
      Tuple args;
      for (const Term& t : atom.args) args.push_back(evaluate_term(m, assignment, t));
      const bool holds = m.predicate_value(p).contains(args);
      return literal.kind == LiteralKind::kAtom ? holds : !holds;
    }
  }
  return false;
}

Grounding ground(const Definition& d, const Structure& m, const EvalOptions& opts) {
  Compiler comp(d, m, Mode::kGround);
  const bool tg = !m.is_extensional();

  EvalState st;
  st.m = &m;
  st.preds = &comp.preds();
  st.mode = Mode::kGround;
  st.budget = opts.instance_budget;

  Grounding out;
  for (const CRule& rule : comp.rules()) {
    Planner planner(rule, comp.preds(), Mode::kGround, tg);
    RulePlan plan = planner.build(-1);
    Executor ex(st, plan);
    ex.run([&](Executor& e) {
      GroundRule gr;
      gr.rule_index = rule.rule_index;
      const PredInfo& hp = comp.preds()[rule.head.pred];
      gr.head_pred = hp.key;
      for (const CTerm& t : rule.head.args) {
        auto v = e.eval_term(t);
        if (!v) return;
        gr.head_args.push_back(*v);
      }
      for (const CLit& l : rule.body) {
        if (!l.is_pred() || !comp.preds()[l.atom.pred].defined) continue;
        GroundLiteral gl;
        gl.positive = l.kind == LiteralKind::kAtom;
        gl.pred_key = comp.preds()[l.atom.pred].key;
        for (const CTerm& t : l.atom.args) {
          auto v = e.eval_term(t);
          if (!v) return;
          gl.args.push_back(*v);
        }
        gr.body.push_back(std::move(gl));
      }
      out.rules.push_back(std::move(gr));
    });
  }
  out.flag = result_flag(d, m);
  return out;
}

Interpretation immediate_consequence(const Definition& d, const Structure& m,
                                     const Interpretation& s, const EvalOptions& opts) {
  Compiler comp(d, m, Mode::kEval);
  auto plans = build_all_plans(comp, m, Mode::kEval);

  EvalState st;
  st.m = &m;
  st.preds = &comp.preds();
  st.mode = Mode::kEval;
  st.store = &s;
  st.budget = opts.instance_budget;

  Interpretation out;
  for (const std::string& key : d.defined()) out[key];
  for (const RulePlans& rp : plans) {
    Executor ex(st, rp.base);
    ex.run([&](Executor& e) {
      const RulePlan& plan = rp.base;
      Tuple head;
      for (const CTerm& t : plan.rule->head.args) {
        auto v = e.eval_term(t);
        if (!v) return;
        head.push_back(*v);
      }
      out[comp.preds()[plan.rule->head.pred].key].insert(std::move(head));
    });
  }
  return out;
}

Interpretation InductionTrace::cumulative(std::size_t upto) const {
  Interpretation out;
  for (std::size_t i = 0; i <= upto && i < steps.size(); ++i)
    for (const auto& [key, rel] : steps[i].delta)
      for (const Tuple& t : rel.tuples()) out[key].insert(t);
  return out;
}

std::optional<std::size_t> InductionTrace::first_derived_step(
    const std::string& pred_key, const Tuple& args) const {
  for (std::size_t i = 0; i < steps.size(); ++i) {
    auto it = steps[i].delta.find(pred_key);
    if (it != steps[i].delta.end() && it->second.contains(args)) return i + 1;
  }
  return std::nullopt;
}

InductionTrace induction_process(const Definition& d, const Structure& params,
                                 const EvalOptions& opts) {
  InductionTrace trace;
  EvalOptions eval_opts = opts;
  eval_opts.strategy = EvalStrategy::kSemiNaive;  // deltas equal all-rules steps
  if (!d.has_negation()) {
    // Negation-free: all rules step together, whatever the dependencies.
    std::uint64_t hits = 0;
    StratumResult result = seminaive_fixpoint(d, params, eval_opts, hits, &trace, 0);
    trace.limit = std::move(result.relations);
  } else {
    auto [work, all] = evaluate_strata(d, params, eval_opts, &trace);
    trace.limit = std::move(all);
  }
  trace.flag = result_flag(d, params);
  return trace;
}

bool validate_derivation_sequence(const Definition& d, const Structure& params,
                                  const std::vector<Atom>& sequence, std::string* why) {
  if (d.has_negation())
    throw UnsupportedFormError("one-at-a-time validation needs a negation-free definition");
  Grounding g = ground(d, params);
  Interpretation state;
  for (const Atom& atom : sequence) {
    Tuple args;
    for (const Term& t : atom.args)
      args.push_back(evaluate_term(params, {}, t));
    const std::string key = atom.pred_key();
    if (state.count(key) && state[key].contains(args)) {
      if (why) *why = atom.to_string() + " was already derived";
      return false;
    }
    bool derivable = false;
    for (const GroundRule& r : g.rules) {
      if (r.head_pred != key || r.head_args != args) continue;
      bool body_ok = true;
      for (const GroundLiteral& l : r.body) {
        const bool present = state.count(l.pred_key) && state[l.pred_key].contains(l.args);
        if (present != l.positive) {
          body_ok = false;
          break;
        }
      }
      if (body_ok) {
        derivable = true;
        break;
      }
    }
    if (!derivable) {
      if (why) *why = atom.to_string() + " is not derivable at its position";
      return false;
    }
    state[key].insert(args);
  }
  return true;
}

Expansion unique_expansion(const Definition& d, const Structure& params,
                           const EvalOptions& opts) {
  auto [work, all] = evaluate_strata(d, params, opts, nullptr);
  return {std::move(work), result_flag(d, params)};
}

bool satisfies_fo(const Structure& m, const Definition& d, const EvalOptions& opts,
                  FoCounterexample* why) {
  Compiler comp(d, m, Mode::kFo);
  EvalState st;
  st.m = &m;
  st.preds = &comp.preds();
  st.mode = Mode::kFo;
  st.budget = opts.instance_budget;

  const bool tg = !m.is_extensional();
  for (const CRule& rule : comp.rules()) {
    Planner planner(rule, comp.preds(), Mode::kFo, tg);
    RulePlan plan = planner.build(-1);
    bool violated = false;
    Executor ex(st, plan);
    ex.run([&](Executor& e) {
      if (violated) return;
      Tuple head;
      for (const CTerm& t : rule.head.args) {
        auto v = e.eval_term(t);
        if (!v) return;  // head not over this domain; no instance to check
        head.push_back(*v);
      }
      const PredInfo& hp = comp.preds()[rule.head.pred];
      if (!m.predicate_value(hp.in_m).contains(head)) {
        violated = true;
        if (why) {
          why->rule_index = rule.rule_index;
          std::string inst = hp.name;
          if (!head.empty()) {
            inst += "(";
            for (std::size_t i = 0; i < head.size(); ++i) {
              if (i) inst += ",";
              inst += m.element_name(head[i]);
            }
            inst += ")";
          }
          why->instance = "body holds but " + inst + " does not";
        }
      }
    });
    if (violated) return false;
  }
  return true;
}

Verdict satisfies_def(const Structure& m, const Definition& d, const EvalOptions& opts) {
  // m must interpret its defined predicates; fetch them first.
  std::map<std::string, const Relation*> given;
  for (const std::string& key : d.defined()) {
    const auto slash = key.rfind('/');
    const SymbolId p = m.vocabulary().find(SymbolKind::kPredicate, key.substr(0, slash),
                                           std::stoi(key.substr(slash + 1)));
    if (p == kNoSymbol) throw UnknownSymbolError(key);
    given[key] = &m.predicate_value(p);
  }
  Expansion exp = unique_expansion(d, m, opts);
  Verdict verdict;
  verdict.flag = exp.flag;
  verdict.holds = true;
  for (const std::string& key : d.defined()) {
    const auto slash = key.rfind('/');
    const SymbolId p = exp.structure.vocabulary().find(
        SymbolKind::kPredicate, key.substr(0, slash), std::stoi(key.substr(slash + 1)));
    if (!(exp.structure.predicate_value(p) == *given[key])) {
      verdict.holds = false;
      verdict.detail = key + " differs from the least fixpoint";
      break;
    }
  }
  return verdict;
}

Expansion lhm(const Program& p, int depth_bound, UniverseRestriction restriction,
              const EvalOptions& opts) {
  if (!p.constructors().has_constants()) throw EmptyUniverseError();
  p.check_function_coverage({});
  if (!p.definition().parameter_predicates().empty()) {
    std::string missing;
    for (const std::string& k : p.definition().parameter_predicates())
      missing += (missing.empty() ? "" : ", ") + k;
    throw SemanticError("parameter predicates (" + missing +
                        ") need a structure; the program alone does not fix them");
  }
  Vocabulary vocab;
  UniverseOptions uopts;
  uopts.restriction = restriction;
  Structure universe = Structure::make_term_generated(vocab, p.constructors(),
                                                      depth_bound, uopts);
  return unique_expansion(p.definition(), universe, opts);
}

Verdict check_program_model(const Structure& m, const Program& p,
                            const EvalOptions& opts) {
  Verdict def = satisfies_def(m, p.definition(), opts);
  // A program without constructor symbols carries no universe axiom.
  if (p.constructors().empty() && !p.has_declared_universe()) {
    if (!def.holds && def.detail.empty()) def.detail = "definition fails";
    return def;
  }
  const HerbrandVerdict herb = satisfies_herbrand_axiom(m, p.constructors());
  Verdict out;
  out.holds = def.holds && herb.holds;
  out.flag = def.flag;
  if (herb.truncated && out.flag.exact)
    out.flag = ExactnessFlag::truncated(herb.note);
  if (!herb.holds)
    out.detail = "universe axiom fails: " + herb.note;
  else if (!def.holds)
    out.detail = def.detail;
  return out;
}

namespace {

std::vector<Term> rule_ground_seeds(const Definition& d) {
  std::vector<Term> seeds;
  for (const Rule& r : d.rules()) {
    for (const Term& t : r.head.args) t.collect_ground_subterms(seeds);
    for (const Literal& l : r.body) {
      if (l.is_pred())
        for (const Term& t : l.atom.args) t.collect_ground_subterms(seeds);
      else
        for (const Term& t : l.terms) t.collect_ground_subterms(seeds);
    }
  }
  return seeds;
}

}  // namespace

Verdict entails_literal(const Program& p, const Literal& literal, int depth_bound,
                        const EvalOptions& opts) {
  if (!literal.is_pred())
    throw SemanticError("queries are (possibly negated) predicate literals");
  const Atom& atom = literal.atom;
  for (const Term& t : atom.args)
    if (!t.is_ground()) throw SemanticError("query literals must be ground");
  if (!p.definition().defines(atom.pred_key()))
    throw UndefinedPredicateError(atom.pred_key());
  if (!p.constructors().has_constants()) throw EmptyUniverseError();
  p.check_function_coverage({});
  for (const Term& t : atom.args)
    if (t.depth() > depth_bound)
      throw SemanticError("query term " + t.to_string() +
                          " exceeds the depth bound; raise --depth");

  const bool closed = definition_subterm_closed(p.definition());
  Structure universe = [&] {
    if (closed) {
      // Depth-non-increasing rules: every derivation of the query stays
      // within the subterm closure of the query and the rules' own ground
      // terms, so this small universe decides the query exactly.
      std::vector<Term> seeds = rule_ground_seeds(p.definition());
      for (const Term& t : atom.args) seeds.push_back(t);
      Vocabulary vocab;
      return Structure::make_term_generated_closure(vocab, p.constructors(),
                                                    depth_bound, seeds);
    }
    Vocabulary vocab;
    UniverseOptions uopts;
    uopts.element_budget = opts.instance_budget;
    return Structure::make_term_generated(vocab, p.constructors(), depth_bound, uopts);
  }();

  Expansion exp = unique_expansion(p.definition(), universe, opts);
  Tuple args;
  for (const Term& t : atom.args) {
    auto e = exp.structure.find_term(t);
    if (!e) throw UnknownSymbolError(t.to_string());
    args.push_back(*e);
  }
  const SymbolId pred = exp.structure.vocabulary().find(
      SymbolKind::kPredicate, atom.predicate, static_cast<int>(atom.args.size()));
  const bool in_model = exp.structure.predicate_value(pred).contains(args);

  Verdict verdict;
  verdict.holds = literal.kind == LiteralKind::kAtom ? in_model : !in_model;
  verdict.flag = closed ? ExactnessFlag::exact_result() : exp.flag;
  return verdict;
}

SplitReport check_split_equivalence(const Program& p, const Structure& m,
                                    const EvalOptions& opts) {
  if (!p.has_partition())
    throw SemanticError("the program declares no module split");
  SplitReport report;
  const auto names = p.partition_names();
  report.partition = validate_partition(p.definition(), p.partition_rules(), &names);
  if (!report.partition.ok) return report;

  const bool has_universe_axiom =
      !p.constructors().empty() || p.has_declared_universe();
  HerbrandVerdict herb;
  herb.holds = true;
  if (has_universe_axiom) herb = satisfies_herbrand_axiom(m, p.constructors());
  report.universe_axiom_holds = herb.holds;

  Verdict whole = satisfies_def(m, p.definition(), opts);
  report.whole_def_only = whole.holds;
  report.whole_holds = whole.holds && herb.holds;
  report.flag = whole.flag;

  bool parts = true;
  for (const NamedModule& mod : p.modules()) {
    Verdict v = satisfies_def(m, p.module_definition(mod.name), opts);
    report.per_module.emplace_back(mod.name, v.holds);
    parts = parts && v.holds;
  }
  report.parts_def_only = parts;
  report.parts_hold = parts && herb.holds;

  // (1) is decidable here only for finite constants-only universes.
  if (m.is_extensional() && p.constructors().has_constants() &&
      p.constructors().functors().empty() &&
      p.definition().parameter_predicates().empty()) {
    Expansion model = lhm(p, 0, UniverseRestriction::kNone, opts);
    Structure ext = extensionalize(model.structure);
    Vocabulary sigma;
    for (const Symbol* c : p.constructors().constants()) sigma.add_function(c->name, 0);
    for (const std::string& key : p.definition().defined()) {
      const auto slash = key.rfind('/');
      sigma.add_predicate(key.substr(0, slash), std::stoi(key.substr(slash + 1)));
    }
    report.isomorphic_to_lhm = find_isomorphism(m, ext, sigma).has_value();
  }
  return report;
}

Structure extensionalize(const Structure& tg) {
  if (tg.is_extensional()) return tg;
  if (!tg.constructors().functors().empty())
    throw UnsupportedFormError(
        "a universe with functors has no faithful extensional rendering here");
  Vocabulary vocab;
  std::vector<std::string> names;
  for (ElemId e : tg.domain()) names.push_back(tg.element_name(e));
  Structure out = Structure::make_extensional(vocab, names);
  std::map<ElemId, ElemId> remap;
  for (ElemId e : tg.domain()) remap[e] = *out.find_element(tg.element_name(e));
  for (const Symbol* c : tg.constructors().constants())
    out.set_constant(c->name, remap.at(tg.constant_value(
                                  tg.vocabulary().find(SymbolKind::kFunction, c->name, 0))));
  for (const auto& [pid, rel] : tg.predicates()) {
    const Symbol& sym = tg.vocabulary().symbol(pid);
    Relation copy;
    for (const Tuple& t : rel.tuples()) {
      Tuple mapped;
      for (ElemId e : t) mapped.push_back(remap.at(e));
      copy.insert(std::move(mapped));
    }
    out.set_predicate(sym.name, sym.arity, std::move(copy));
  }
  return out;
}

}  // namespace defcheck
