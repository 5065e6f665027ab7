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

#include "defcheck/term.hpp"

#include <algorithm>

namespace defcheck {

Term Term::variable(std::string name) {
  Term t;
  t.variable_ = true;
  t.name_ = std::move(name);
  return t;
}

Term Term::apply(std::string functor, std::vector<Term> args) {
  Term t;
  t.variable_ = false;
  t.name_ = std::move(functor);
  t.args_ = std::move(args);
  return t;
}

bool Term::is_ground() const {
  if (variable_) return false;
  return std::all_of(args_.begin(), args_.end(),
                     [](const Term& a) { return a.is_ground(); });
}

int Term::depth() const {
  if (args_.empty()) return 0;
  int max_child = 0;
  for (const Term& a : args_) max_child = std::max(max_child, a.depth());
  return 1 + max_child;
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (variable_) {
    out.insert(name_);
    return;
  }
  for (const Term& a : args_) a.collect_variables(out);
}

void Term::collect_ground_subterms(std::vector<Term>& out) const {
  if (variable_) return;
  if (is_ground()) {
    collect_subterms(out);
    return;
  }
  for (const Term& a : args_) a.collect_ground_subterms(out);
}

void Term::collect_subterms(std::vector<Term>& out) const {
  out.push_back(*this);
  for (const Term& a : args_) a.collect_subterms(out);
}

namespace {

bool is_cons(const Term& t) {
  return !t.is_variable() && t.name() == "cons" && t.args().size() == 2;
}

bool is_nil(const Term& t) {
  return !t.is_variable() && t.name() == "nil" && t.args().empty();
}

}  // namespace

std::string Term::to_string() const {
  if (variable_) return name_;
  if (is_nil(*this)) return "[]";
  if (is_cons(*this)) {
    std::string out = "[" + args_[0].to_string();
    const Term* tail = &args_[1];
    while (is_cons(*tail)) {
      out += "," + tail->args()[0].to_string();
      tail = &tail->args()[1];
    }
    if (!is_nil(*tail)) out += "|" + tail->to_string();
    return out + "]";
  }
  if (args_.size() == 2 && (name_ == "times" || name_ == "plus")) {
    const char* op = name_ == "times" ? "*" : "+";
    auto wrap = [](const Term& t) {
      std::string s = t.to_string();
      if (!t.is_variable() && t.args().size() == 2 &&
          (t.name() == "times" || t.name() == "plus"))
        return "(" + s + ")";
      return s;
    };
    return wrap(args_[0]) + op + wrap(args_[1]);
  }
  if (args_.empty()) return name_;
  std::string out = name_ + "(";
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ",";
    out += args_[i].to_string();
  }
  return out + ")";
}

bool Term::operator==(const Term& other) const {
  return variable_ == other.variable_ && name_ == other.name_ &&
         args_ == other.args_;
}

bool Term::operator<(const Term& other) const {
  if (variable_ != other.variable_) return variable_ < other.variable_;
  if (args_.size() != other.args_.size()) return args_.size() < other.args_.size();
  if (name_ != other.name_) return name_ < other.name_;
  return args_ < other.args_;
}

Term make_nil() { return Term::constant("nil"); }

Term make_cons(Term head, Term tail) {
  std::vector<Term> args;
  args.push_back(std::move(head));
  args.push_back(std::move(tail));
  return Term::apply("cons", std::move(args));
}

Term make_list(std::vector<Term> items) {
  Term out = make_nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    out = make_cons(std::move(*it), std::move(out));
  return out;
}

}  // namespace defcheck
