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

#include "defcheck/parser.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace defcheck {

namespace {

enum class Tok : std::uint8_t {
  kName,     // lowercase-initial identifier
  kVar,      // uppercase/underscore-initial identifier
  kNat,      // decimal numeral
  kLParen, kRParen, kLBracket, kRBracket, kLBrace, kRBrace,
  kComma, kDot, kDotDot, kBar, kColonDash, kColon, kSlash,
  kEq, kNeq, kStar, kPlus, kArrow, kHash,
  kEnd,
};

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::string filename)
      : text_(text), file_(std::move(filename)) {
    next();
  }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    next();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(current_.span, msg);
  }

 private:
  SourceSpan here() const { return {file_, line_, col_}; }

  char at(std::size_t i) const { return i < text_.size() ? text_[i] : '\0'; }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[pos_ + i] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
    pos_ += n;
  }

  void next() {
    // Skip whitespace and % comments.
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
    current_.span = here();
    if (pos_ >= text_.size()) {
      current_.kind = Tok::kEnd;
      current_.text.clear();
      return;
    }
    const char c = text_[pos_];
    auto single = [&](Tok k) {
      current_.kind = k;
      current_.text = std::string(1, c);
      advance(1);
    };
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      current_.kind = Tok::kNat;
      current_.text = std::string(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      current_.text = std::string(text_.substr(pos_, end - pos_));
      current_.kind = (std::isupper(static_cast<unsigned char>(c)) || c == '_')
                          ? Tok::kVar
                          : Tok::kName;
      advance(end - pos_);
      return;
    }
    switch (c) {
      case '(': single(Tok::kLParen); return;
      case ')': single(Tok::kRParen); return;
      case '[': single(Tok::kLBracket); return;
      case ']': single(Tok::kRBracket); return;
      case '{': single(Tok::kLBrace); return;
      case '}': single(Tok::kRBrace); return;
      case ',': single(Tok::kComma); return;
      case '|': single(Tok::kBar); return;
      case '/': single(Tok::kSlash); return;
      case '*': single(Tok::kStar); return;
      case '+': single(Tok::kPlus); return;
      case '#': single(Tok::kHash); return;
      case '=': single(Tok::kEq); return;
      case '.':
        if (at(pos_ + 1) == '.') {
          current_.kind = Tok::kDotDot;
          current_.text = "..";
          advance(2);
        } else {
          single(Tok::kDot);
        }
        return;
      case ':':
        if (at(pos_ + 1) == '-') {
          current_.kind = Tok::kColonDash;
          current_.text = ":-";
          advance(2);
        } else {
          single(Tok::kColon);
        }
        return;
      case '-':
        if (at(pos_ + 1) == '>') {
          current_.kind = Tok::kArrow;
          current_.text = "->";
          advance(2);
          return;
        }
        break;
      case '!':
        if (at(pos_ + 1) == '=') {
          current_.kind = Tok::kNeq;
          current_.text = "!=";
          advance(2);
          return;
        }
        break;
      case '\\':
        if (at(pos_ + 1) == '=' && at(pos_ + 2) == '=') {
          current_.kind = Tok::kNeq;
          current_.text = "\\==";
          advance(3);
          return;
        }
        if (at(pos_ + 1) == '=') {
          current_.kind = Tok::kNeq;
          current_.text = "\\=";
          advance(2);
          return;
        }
        break;
      default:
        break;
    }
    throw ParseError(here(), std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::string file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;
};

// Tracks the single arity each name may be used at within one source unit.
class ArityTable {
 public:
  void use(const std::string& name, int arity, bool predicate, const SourceSpan& span) {
    auto& slot = predicate ? preds_ : funcs_;
    auto [it, fresh] = slot.emplace(name, arity);
    if (!fresh && it->second != arity)
      throw ParseError(span, "symbol " + name + " used at arities " +
                                 std::to_string(it->second) + " and " +
                                 std::to_string(arity));
    auto other = (predicate ? funcs_ : preds_).find(name);
    if (other != (predicate ? funcs_ : preds_).end())
      throw ParseError(span, "symbol " + name +
                                 " used both as a predicate and as a function");
  }

 private:
  std::map<std::string, int> preds_, funcs_;
};

class TermParser {
 public:
  TermParser(Lexer& lex, ArityTable* arities) : lex_(lex), arities_(arities) {}

  Term parse() { return additive(); }

 private:
  Term additive() {
    Term t = multiplicative();
    while (lex_.peek().kind == Tok::kPlus) {
      const SourceSpan span = lex_.take().span;
      Term rhs = multiplicative();
      if (arities_) arities_->use("plus", 2, false, span);
      t = Term::apply("plus", {std::move(t), std::move(rhs)});
    }
    return t;
  }

  Term multiplicative() {
    Term t = primary();
    while (lex_.peek().kind == Tok::kStar) {
      const SourceSpan span = lex_.take().span;
      Term rhs = primary();
      if (arities_) arities_->use("times", 2, false, span);
      t = Term::apply("times", {std::move(t), std::move(rhs)});
    }
    return t;
  }

  Term primary() {
    const Token t = lex_.take();
    switch (t.kind) {
      case Tok::kVar:
        return Term::variable(t.text);
      case Tok::kNat:
        if (arities_) arities_->use(t.text, 0, false, t.span);
        return Term::constant(t.text);
      case Tok::kName: {
        if (lex_.peek().kind != Tok::kLParen) {
          if (arities_) arities_->use(t.text, 0, false, t.span);
          return Term::constant(t.text);
        }
        lex_.take();  // (
        std::vector<Term> args;
        args.push_back(parse());
        while (lex_.peek().kind == Tok::kComma) {
          lex_.take();
          args.push_back(parse());
        }
        if (lex_.peek().kind != Tok::kRParen) lex_.fail("expected ')'");
        lex_.take();
        if (arities_) arities_->use(t.text, static_cast<int>(args.size()), false, t.span);
        return Term::apply(t.text, std::move(args));
      }
      case Tok::kLBracket: {
        if (lex_.peek().kind == Tok::kRBracket) {
          lex_.take();
          if (arities_) arities_->use("nil", 0, false, t.span);
          return make_nil();
        }
        std::vector<Term> items;
        items.push_back(parse());
        while (lex_.peek().kind == Tok::kComma) {
          lex_.take();
          items.push_back(parse());
        }
        Term tail = make_nil();
        bool proper = true;
        if (lex_.peek().kind == Tok::kBar) {
          lex_.take();
          tail = parse();
          proper = false;
        }
        if (lex_.peek().kind != Tok::kRBracket) lex_.fail("expected ']'");
        lex_.take();
        if (arities_) {
          arities_->use("cons", 2, false, t.span);
          if (proper) arities_->use("nil", 0, false, t.span);
        }
        Term out = std::move(tail);
        for (auto it = items.rbegin(); it != items.rend(); ++it)
          out = make_cons(std::move(*it), std::move(out));
        return out;
      }
      case Tok::kLParen: {
        Term inner = parse();
        if (lex_.peek().kind != Tok::kRParen) lex_.fail("expected ')'");
        lex_.take();
        return inner;
      }
      default:
        throw ParseError(t.span, "expected a term, found '" + t.text + "'");
    }
  }

  Lexer& lex_;
  ArityTable* arities_;
};

class ProgramParser {
 public:
  ProgramParser(std::string_view text, const std::string& filename)
      : lex_(text, filename) {}

  Program parse() {
    while (lex_.peek().kind != Tok::kEnd) {
      if (lex_.peek().kind == Tok::kHash) {
        directive();
      } else {
        plain_rules_seen_ = true;
        rules_.push_back(parse_rule());
        if (!modules_.empty())
          throw ParseError(rules_.back().span,
                           "once #module blocks are used, every rule must be "
                           "inside a module");
      }
    }
    if (rules_.empty()) throw EmptyDefinitionError();
    if (!modules_.empty() && plain_rules_seen_)
      throw ParseError(rules_.front().span,
                       "once #module blocks are used, every rule must be "
                       "inside a module");

    Definition d = Definition::classify(rules_);
    ConstructorSet cf;
    if (declared_universe_) {
      cf = declared_cf_;
    } else {
      for (const SymbolRef& s : occurrence_order_)
        cf.add(s.name, s.arity);
    }
    return Program(std::move(d), std::move(cf), std::move(modules_),
                   declared_universe_);
  }

  std::vector<Rule> parse_rules_only() {
    while (lex_.peek().kind != Tok::kEnd) rules_.push_back(parse_rule());
    return std::move(rules_);
  }

  Literal parse_single_literal() {
    Literal l = parse_literal_item();
    if (lex_.peek().kind == Tok::kDot) lex_.take();
    if (lex_.peek().kind != Tok::kEnd) lex_.fail("unexpected trailing input");
    return l;
  }

 private:
  void directive() {
    const Token hash = lex_.take();
    if (lex_.peek().kind != Tok::kName)
      throw ParseError(hash.span, "expected a directive name after '#'");
    const Token name = lex_.take();
    if (name.text == "universe") {
      expect_name("constructors");
      expect(Tok::kColon, "':'");
      declared_universe_ = true;
      parse_ctor_list(declared_cf_);
      expect(Tok::kDot, "'.'");
    } else if (name.text == "module") {
      if (lex_.peek().kind != Tok::kName)
        throw ParseError(name.span, "expected a module name");
      NamedModule mod;
      mod.name = lex_.take().text;
      expect(Tok::kLBrace, "'{'");
      while (lex_.peek().kind != Tok::kRBrace) {
        if (lex_.peek().kind == Tok::kEnd) lex_.fail("unterminated #module block");
        mod.rule_indices.push_back(rules_.size());
        rules_.push_back(parse_rule());
      }
      lex_.take();  // }
      modules_.push_back(std::move(mod));
    } else {
      throw ParseError(name.span, "unknown directive #" + name.text);
    }
  }

  void parse_ctor_list(ConstructorSet& cf) {
    while (true) {
      const Token t = lex_.take();
      if (t.kind == Tok::kName) {
        int arity = 0;
        if (lex_.peek().kind == Tok::kSlash) {
          lex_.take();
          if (lex_.peek().kind != Tok::kNat) lex_.fail("expected an arity");
          arity = std::stoi(lex_.take().text);
        }
        cf.add(t.text, arity);
        arities_.use(t.text, arity, false, t.span);
      } else if (t.kind == Tok::kNat) {
        if (lex_.peek().kind == Tok::kDotDot) {
          lex_.take();
          if (lex_.peek().kind != Tok::kNat) lex_.fail("expected the range end");
          const Token hi = lex_.take();
          const std::uint64_t lo_v = std::stoull(t.text);
          const std::uint64_t hi_v = std::stoull(hi.text);
          if (hi_v < lo_v) throw ParseError(hi.span, "range end below range start");
          for (std::uint64_t v = lo_v; v <= hi_v; ++v)
            cf.add(std::to_string(v), 0);
        } else {
          cf.add(t.text, 0);
        }
      } else {
        throw ParseError(t.span, "expected a constructor");
      }
      if (lex_.peek().kind != Tok::kComma) break;
      lex_.take();
    }
  }

  Rule parse_rule() {
    const Token first = lex_.peek();
    if (first.kind != Tok::kName)
      throw ParseError(first.span, "expected a rule head");
    Rule rule;
    rule.span = first.span;
    rule.head = parse_head_atom();
    if (lex_.peek().kind == Tok::kColonDash) {
      lex_.take();
      rule.body.push_back(parse_literal_item());
      while (lex_.peek().kind == Tok::kComma) {
        lex_.take();
        rule.body.push_back(parse_literal_item());
      }
    }
    expect(Tok::kDot, "'.' at end of rule");
    return rule;
  }

  Atom parse_head_atom() {
    const Token name = lex_.take();
    if (name.text == "true" || name.text == "false" || name.text == "not")
      throw ParseError(name.span, "'" + name.text + "' cannot head a rule");
    Atom atom;
    atom.predicate = name.text;
    if (lex_.peek().kind == Tok::kLParen) {
      lex_.take();
      TermParser tp(lex_, &arities_);
      atom.args.push_back(tp.parse());
      while (lex_.peek().kind == Tok::kComma) {
        lex_.take();
        atom.args.push_back(tp.parse());
      }
      expect(Tok::kRParen, "')'");
    }
    arities_.use(atom.predicate, static_cast<int>(atom.args.size()), true, name.span);
    record_head_symbols(atom);
    return atom;
  }

  Literal parse_literal_item() {
    const Token first = lex_.peek();
    if (first.kind == Tok::kName && first.text == "not") {
      lex_.take();
      const Token inner = lex_.peek();
      if (inner.kind != Tok::kName || inner.text == "true" || inner.text == "false")
        throw ParseError(inner.span, "negation applies to predicate atoms only");
      Atom atom = parse_body_atom();
      if (lex_.peek().kind == Tok::kEq || lex_.peek().kind == Tok::kNeq)
        throw ParseError(first.span, "negation applies to predicate atoms only");
      return Literal::neg(std::move(atom));
    }
    // Either a predicate atom or the left side of an (in)equality.
    TermParser tp(lex_, nullptr);  // arity bookkeeping done after shape is known
    Term t = tp.parse();
    if (lex_.peek().kind == Tok::kEq || lex_.peek().kind == Tok::kNeq) {
      const bool eq = lex_.take().kind == Tok::kEq;
      Term rhs = tp.parse();
      record_term_symbols(t, first.span);
      record_term_symbols(rhs, first.span);
      return eq ? Literal::eq(std::move(t), std::move(rhs))
                : Literal::neq(std::move(t), std::move(rhs));
    }
    if (t.is_variable())
      throw ParseError(first.span, "a body literal cannot be a bare variable");
    if (t.args().empty() && t.name() == "true") return Literal::truth(true);
    if (t.args().empty() && t.name() == "false") return Literal::truth(false);
    if (is_numeral_name(t.name()) && t.args().empty())
      throw ParseError(first.span, "a numeral is not a predicate atom");
    Atom atom;
    atom.predicate = t.name();
    atom.args = t.args();
    arities_.use(atom.predicate, static_cast<int>(atom.args.size()), true, first.span);
    for (const Term& a : atom.args) record_term_symbols(a, first.span);
    return Literal::pos(std::move(atom));
  }

  Atom parse_body_atom() {
    const Token name = lex_.take();
    if (name.kind != Tok::kName)
      throw ParseError(name.span, "expected a predicate atom");
    Atom atom;
    atom.predicate = name.text;
    if (lex_.peek().kind == Tok::kLParen) {
      lex_.take();
      TermParser tp(lex_, &arities_);
      atom.args.push_back(tp.parse());
      while (lex_.peek().kind == Tok::kComma) {
        lex_.take();
        atom.args.push_back(tp.parse());
      }
      expect(Tok::kRParen, "')'");
    }
    arities_.use(atom.predicate, static_cast<int>(atom.args.size()), true, name.span);
    for (const Term& a : atom.args) record_term_symbols(a, name.span);
    return atom;
  }

  void record_head_symbols(const Atom& atom) {
    for (const Term& t : atom.args) record_term_symbols(t, SourceSpan{});
  }

  void record_term_symbols(const Term& t, const SourceSpan& span) {
    if (t.is_variable()) return;
    arities_.use(t.name(), static_cast<int>(t.args().size()), false, span);
    SymbolRef ref{t.name(), static_cast<int>(t.args().size()), SymbolKind::kFunction};
    bool known = false;
    for (const SymbolRef& s : occurrence_order_)
      if (s == ref) known = true;
    if (!known) occurrence_order_.push_back(ref);
    for (const Term& a : t.args()) record_term_symbols(a, span);
  }

  void expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) lex_.fail("expected " + what);
    lex_.take();
  }

  void expect_name(const std::string& word) {
    if (lex_.peek().kind != Tok::kName || lex_.peek().text != word)
      lex_.fail("expected '" + word + "'");
    lex_.take();
  }

  Lexer lex_;
  ArityTable arities_;
  std::vector<Rule> rules_;
  std::vector<NamedModule> modules_;
  ConstructorSet declared_cf_;
  bool declared_universe_ = false;
  bool plain_rules_seen_ = false;
  std::vector<SymbolRef> occurrence_order_;
};

// ---------------------------------------------------------------------------
// Structure files
// ---------------------------------------------------------------------------

class StructureParser {
 public:
  StructureParser(std::string_view text, const std::string& filename)
      : lex_(text, filename) {}

  Structure parse() {
    while (lex_.peek().kind != Tok::kEnd) statement();
    if (!saw_domain_ && !saw_universe_)
      lex_.fail("a structure needs a 'domain:' or 'universe:' declaration");
    return build();
  }

 private:
  struct PredDecl {
    std::string name;
    int arity;
    std::vector<std::vector<Term>> tuples;
    SourceSpan span;
  };
  struct FuncDecl {
    std::string name;
    int arity;
    std::vector<std::pair<std::vector<Term>, Term>> maplets;
    std::optional<Term> default_term;
    Builtin builtin = Builtin::kNone;
    SourceSpan span;
  };
  struct ConstDecl {
    std::string name;
    Term value{Term::constant("?")};
    SourceSpan span;
  };

  void statement() {
    const Token t = lex_.take();
    if (t.kind != Tok::kName) throw ParseError(t.span, "expected a declaration");
    if (t.text == "domain") {
      expect(Tok::kColon, "':'");
      if (lex_.peek().kind == Tok::kDot)
        throw ParseError(lex_.peek().span, "the domain must be non-empty");
      saw_domain_ = true;
      while (true) {
        const Token e = lex_.take();
        if (e.kind != Tok::kName)
          throw ParseError(e.span, "expected a domain element name");
        domain_.push_back(e.text);
        if (lex_.peek().kind != Tok::kComma) break;
        lex_.take();
      }
      expect(Tok::kDot, "'.'");
    } else if (t.text == "universe") {
      expect(Tok::kColon, "':'");
      expect_name("constructors");
      saw_universe_ = true;
      parse_ctor_list();
      expect_name("depth");
      if (lex_.peek().kind != Tok::kNat) lex_.fail("expected a depth bound");
      depth_ = std::stoi(lex_.take().text);
      if (lex_.peek().kind == Tok::kName && lex_.peek().text == "restrict") {
        lex_.take();
        expect_name("lists");
        restriction_ = UniverseRestriction::kLists;
      }
      expect(Tok::kDot, "'.'");
    } else if (t.text == "pred") {
      PredDecl decl;
      decl.span = t.span;
      parse_sig(decl.name, decl.arity);
      expect(Tok::kEq, "'='");
      expect(Tok::kLBrace, "'{'");
      while (lex_.peek().kind != Tok::kRBrace) {
        decl.tuples.push_back(parse_tuple(decl.arity));
        if (lex_.peek().kind == Tok::kComma) lex_.take();
      }
      lex_.take();  // }
      expect(Tok::kDot, "'.'");
      preds_.push_back(std::move(decl));
    } else if (t.text == "func") {
      FuncDecl decl;
      decl.span = t.span;
      parse_sig(decl.name, decl.arity);
      expect(Tok::kEq, "'='");
      if (lex_.peek().kind == Tok::kName && lex_.peek().text == "builtin") {
        lex_.take();
        const Token which = lex_.take();
        if (which.text == "product")
          decl.builtin = Builtin::kProduct;
        else if (which.text == "sum")
          decl.builtin = Builtin::kSum;
        else
          throw ParseError(which.span, "unknown builtin '" + which.text + "'");
        expect_name("default");
        decl.default_term = parse_gterm();
      } else {
        expect(Tok::kLBrace, "'{'");
        while (lex_.peek().kind != Tok::kRBrace) {
          std::vector<Term> key = parse_tuple(decl.arity);
          expect(Tok::kArrow, "'->'");
          Term value = parse_gterm();
          decl.maplets.emplace_back(std::move(key), std::move(value));
          if (lex_.peek().kind == Tok::kComma) lex_.take();
        }
        lex_.take();  // }
        if (lex_.peek().kind == Tok::kName && lex_.peek().text == "default") {
          lex_.take();
          decl.default_term = parse_gterm();
        }
      }
      expect(Tok::kDot, "'.'");
      funcs_.push_back(std::move(decl));
    } else if (t.text == "const") {
      ConstDecl decl;
      decl.span = t.span;
      const Token name = lex_.take();
      if (name.kind != Tok::kName) throw ParseError(name.span, "expected a constant name");
      decl.name = name.text;
      expect(Tok::kEq, "'='");
      decl.value = parse_gterm();
      expect(Tok::kDot, "'.'");
      consts_.push_back(std::move(decl));
    } else {
      throw ParseError(t.span, "unknown declaration '" + t.text + "'");
    }
  }

  void parse_sig(std::string& name, int& arity) {
    const Token n = lex_.take();
    // Structure files carry no variables, so capitalised symbol names are
    // admissible here.
    if (n.kind != Tok::kName && n.kind != Tok::kVar)
      throw ParseError(n.span, "expected a symbol name");
    name = n.text;
    expect(Tok::kSlash, "'/'");
    if (lex_.peek().kind != Tok::kNat) lex_.fail("expected an arity");
    arity = std::stoi(lex_.take().text);
  }

  std::vector<Term> parse_tuple(int arity) {
    const Token open = lex_.peek();
    expect(Tok::kLParen, "'('");
    std::vector<Term> out;
    if (lex_.peek().kind != Tok::kRParen) {
      out.push_back(parse_gterm());
      while (lex_.peek().kind == Tok::kComma) {
        lex_.take();
        out.push_back(parse_gterm());
      }
    }
    expect(Tok::kRParen, "')'");
    if (static_cast<int>(out.size()) != arity)
      throw ParseError(open.span, "tuple arity mismatch: expected " +
                                      std::to_string(arity) + " entries");
    return out;
  }

  Term parse_gterm() {
    const Token first = lex_.peek();
    TermParser tp(lex_, nullptr);
    Term t = tp.parse();
    if (!t.is_ground()) throw ParseError(first.span, "variables are not allowed here");
    return t;
  }

  void parse_ctor_list() {
    while (true) {
      const Token t = lex_.take();
      if (t.kind == Tok::kName) {
        int arity = 0;
        if (lex_.peek().kind == Tok::kSlash) {
          lex_.take();
          if (lex_.peek().kind != Tok::kNat) lex_.fail("expected an arity");
          arity = std::stoi(lex_.take().text);
        }
        cf_.add(t.text, arity);
      } else if (t.kind == Tok::kNat) {
        if (lex_.peek().kind == Tok::kDotDot) {
          lex_.take();
          if (lex_.peek().kind != Tok::kNat) lex_.fail("expected the range end");
          const Token hi = lex_.take();
          const std::uint64_t lo_v = std::stoull(t.text);
          const std::uint64_t hi_v = std::stoull(hi.text);
          if (hi_v < lo_v) throw ParseError(hi.span, "range end below range start");
          for (std::uint64_t v = lo_v; v <= hi_v; ++v) cf_.add(std::to_string(v), 0);
        } else {
          cf_.add(t.text, 0);
        }
      } else {
        throw ParseError(t.span, "expected a constructor");
      }
      if (lex_.peek().kind != Tok::kComma) break;
      lex_.take();
    }
  }

  Structure build() {
    if (saw_domain_ && saw_universe_)
      throw SemanticError("a structure is either extensional or term-generated, not both");
    if (saw_domain_) return build_extensional();
    return build_term_generated();
  }

  Structure build_extensional() {
    Vocabulary vocab;
    Structure m = Structure::make_extensional(vocab, domain_);

    auto resolve = [&](const Term& t, const SourceSpan& span) -> ElemId {
      if (!t.args().empty())
        throw ParseError(span, "compound terms need a term-generated universe");
      auto e = m.find_element(t.name());
      if (!e) throw ParseError(span, "unknown domain element '" + t.name() + "'");
      return *e;
    };

    for (const ConstDecl& c : consts_) m.set_constant(c.name, resolve(c.value, c.span));
    for (const PredDecl& p : preds_) {
      Relation rel;
      for (const auto& tuple : p.tuples) {
        Tuple t;
        for (const Term& g : tuple) t.push_back(resolve(g, p.span));
        rel.insert(std::move(t));
      }
      m.set_predicate(p.name, p.arity, std::move(rel));
    }
    for (const FuncDecl& f : funcs_) {
      if (f.builtin != Builtin::kNone)
        throw ParseError(f.span, "builtins need a term-generated universe");
      std::unordered_map<Tuple, ElemId, TupleHash> table;
      for (const auto& [key, value] : f.maplets) {
        Tuple t;
        for (const Term& g : key) t.push_back(resolve(g, f.span));
        table[t] = resolve(value, f.span);
      }
      ElemId dflt = kNoElem;
      if (f.default_term) dflt = resolve(*f.default_term, f.span);
      m.set_function_table(f.name, f.arity, std::move(table), dflt);
    }
    m.validate();
    return m;
  }

  Structure build_term_generated() {
    Vocabulary vocab;
    UniverseOptions opts;
    opts.restriction = restriction_;
    Structure m = Structure::make_term_generated(vocab, cf_, depth_, opts);

    auto resolve = [&](const Term& t, const SourceSpan& span) -> ElemId {
      auto e = m.find_term(t);
      if (!e)
        throw ParseError(span, "term " + t.to_string() +
                                   " lies outside the declared universe");
      return *e;
    };

    for (const ConstDecl& c : consts_)
      throw ParseError(c.span,
                       "constants of a term-generated structure are constructors");
    for (const FuncDecl& f : funcs_) {
      if (f.builtin != Builtin::kNone) {
        if (!f.default_term)
          throw ParseError(f.span, "builtin functions need a default element");
        m.set_function_builtin(f.name, f.arity, f.builtin,
                               resolve(*f.default_term, f.span));
        continue;
      }
      if (!f.default_term)
        throw ParseError(f.span,
                         "function tables over a term universe need a default element");
      std::unordered_map<Tuple, ElemId, TupleHash> table;
      for (const auto& [key, value] : f.maplets) {
        Tuple t;
        for (const Term& g : key) t.push_back(resolve(g, f.span));
        table[t] = resolve(value, f.span);
      }
      m.set_function_table(f.name, f.arity, std::move(table),
                           resolve(*f.default_term, f.span));
    }
    for (const PredDecl& p : preds_) {
      Relation rel;
      for (const auto& tuple : p.tuples) {
        Tuple t;
        for (const Term& g : tuple) t.push_back(resolve(g, p.span));
        rel.insert(std::move(t));
      }
      m.set_predicate(p.name, p.arity, std::move(rel));
    }
    m.validate();
    return m;
  }

  void expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) lex_.fail("expected " + what);
    lex_.take();
  }

  void expect_name(const std::string& word) {
    if (lex_.peek().kind != Tok::kName || lex_.peek().text != word)
      lex_.fail("expected '" + word + "'");
    lex_.take();
  }

  Lexer lex_;
  bool saw_domain_ = false;
  bool saw_universe_ = false;
  std::vector<std::string> domain_;
  ConstructorSet cf_;
  int depth_ = 0;
  UniverseRestriction restriction_ = UniverseRestriction::kNone;
  std::vector<PredDecl> preds_;
  std::vector<FuncDecl> funcs_;
  std::vector<ConstDecl> consts_;
};

}  // namespace

Program parse_program(std::string_view text, const std::string& filename) {
  return ProgramParser(text, filename).parse();
}

Structure parse_structure(std::string_view text, const std::string& filename) {
  return StructureParser(text, filename).parse();
}

Literal parse_literal(std::string_view text, const std::string& filename) {
  return ProgramParser(text, filename).parse_single_literal();
}

Term parse_term(std::string_view text, const std::string& filename) {
  Lexer lex(text, filename);
  TermParser tp(lex, nullptr);
  Term t = tp.parse();
  if (lex.peek().kind != Tok::kEnd) lex.fail("unexpected trailing input");
  return t;
}

Definition parse_definition(std::string_view text, const std::string& filename) {
  return Definition::classify(ProgramParser(text, filename).parse_rules_only());
}

}  // namespace defcheck
