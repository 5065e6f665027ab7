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

#include "defcheck/herbrand.hpp"

#include <algorithm>

#include "defcheck/errors.hpp"
#include "defcheck/isomorphism.hpp"

namespace defcheck {

std::vector<Term> herbrand_universe(const ConstructorSet& cf, int depth_bound) {
  std::vector<Term> universe;
  for (const Symbol* c : cf.constants()) universe.push_back(Term::constant(c->name));
  if (universe.empty()) return universe;

  std::size_t level_begin = 0;
  for (int d = 1; d <= depth_bound; ++d) {
    const std::size_t level_end = universe.size();
    for (const Symbol* f : cf.functors()) {
      std::vector<std::size_t> idx(static_cast<std::size_t>(f->arity), 0);
      while (true) {
        bool fresh = d == 1;
        for (std::size_t i : idx) fresh = fresh || i >= level_begin;
        if (fresh) {
          std::vector<Term> args;
          for (std::size_t i : idx) args.push_back(universe[i]);
          universe.push_back(Term::apply(f->name, std::move(args)));
        }
        std::size_t k = idx.size();
        while (k > 0) {
          if (++idx[k - 1] < level_end) break;
          idx[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    if (universe.size() == level_end) break;
    level_begin = level_end;
  }
  std::sort(universe.begin(), universe.end(), [](const Term& a, const Term& b) {
    const int da = a.depth(), db = b.depth();
    if (da != db) return da < db;
    return a < b;
  });
  return universe;
}

HerbrandVerdict satisfies_herbrand_axiom(const Structure& m, const ConstructorSet& cf) {
  HerbrandVerdict verdict;
  if (m.form() == Structure::Form::kTermGenerated) {
    if (!m.constructors().same_symbols(cf)) {
      verdict.holds = false;
      verdict.note = "structure is generated by a different constructor set";
      return verdict;
    }
    verdict.holds = true;
    if (!m.universe_complete()) {
      verdict.truncated = true;
      verdict.note = "universe cut off at depth " + std::to_string(m.depth_bound());
    }
    return verdict;
  }

  // Extensional: an infinite term universe can never match a finite domain.
  if (!cf.functors().empty()) {
    verdict.holds = false;
    verdict.note = "constructor set has functors; the term universe is infinite";
    return verdict;
  }
  if (!cf.has_constants()) {
    verdict.holds = false;
    verdict.note = "empty term universe";
    return verdict;
  }
  // The constants must denote pairwise distinct elements exhausting the
  // domain, i.e. the cf-reduct must be isomorphic to the term structure of
  // the constants.
  Vocabulary sigma;
  std::vector<std::string> names;
  for (const Symbol* c : cf.constants()) {
    sigma.add_function(c->name, 0);
    names.push_back(c->name);
  }
  Structure herb = Structure::make_extensional(sigma, names);
  for (const std::string& name : names) herb.set_constant(name, *herb.find_element(name));
  verdict.holds = find_isomorphism(m, herb, sigma).has_value();
  if (!verdict.holds)
    verdict.note = "constants do not denote pairwise distinct elements exhausting the domain";
  return verdict;
}

}  // namespace defcheck
