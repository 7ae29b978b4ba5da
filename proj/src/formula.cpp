#include "relic/formula.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "relic/base.hpp"

namespace relic {

namespace {

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

}  // namespace

FormulaPtr f_true() { return node({FKind::True, {}, {}, nullptr, nullptr, {}, nullptr}); }
FormulaPtr f_false() { return node({FKind::False, {}, {}, nullptr, nullptr, {}, nullptr}); }

FormulaPtr f_atom(std::string sym, std::vector<std::string> vars) {
  Formula f{FKind::Atom, std::move(sym), {}, nullptr, nullptr, {}, nullptr};
  for (auto& v : vars) f.args.push_back({-1, std::move(v)});
  return node(std::move(f));
}

FormulaPtr f_eq(std::string a, std::string b) {
  Formula f{FKind::Eq, {}, {}, nullptr, nullptr, {}, nullptr};
  f.args.push_back({-1, std::move(a)});
  f.args.push_back({-1, std::move(b)});
  return node(std::move(f));
}

FormulaPtr f_not(FormulaPtr f) {
  return node({FKind::Not, {}, {}, std::move(f), nullptr, {}, nullptr});
}
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return node({FKind::And, {}, {}, std::move(a), std::move(b), {}, nullptr});
}
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  return node({FKind::Or, {}, {}, std::move(a), std::move(b), {}, nullptr});
}
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) {
  return node({FKind::Implies, {}, {}, std::move(a), std::move(b), {}, nullptr});
}
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  return node({FKind::Iff, {}, {}, std::move(a), std::move(b), {}, nullptr});
}
FormulaPtr f_exists(std::string var, FormulaPtr body) {
  return node({FKind::Exists, {}, {}, nullptr, nullptr, std::move(var), std::move(body)});
}
FormulaPtr f_forall(std::string var, FormulaPtr body) {
  return node({FKind::Forall, {}, {}, nullptr, nullptr, std::move(var), std::move(body)});
}

FormulaPtr f_and_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return f_true();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
  return acc;
}

FormulaPtr f_or_all(std::vector<FormulaPtr> fs) {
  if (fs.empty()) return f_false();
  FormulaPtr acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
  return acc;
}

namespace {

VarRef bind_ref(const VarRef& r, const std::vector<std::string>& scope) {
  if (r.bound >= 0) return r;  // nested pre-resolved indices stay valid
  for (std::size_t i = scope.size(); i-- > 0;)
    if (scope[i] == r.name)
      return {static_cast<int>(scope.size() - 1 - i), r.name};
  return r;
}

FormulaPtr bind_rec(const FormulaPtr& f, std::vector<std::string>& scope) {
  Formula out = *f;
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return f;
    case FKind::Atom:
    case FKind::Eq:
      for (auto& r : out.args) r = bind_ref(r, scope);
      return node(std::move(out));
    case FKind::Not:
      out.lhs = bind_rec(f->lhs, scope);
      return node(std::move(out));
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      out.lhs = bind_rec(f->lhs, scope);
      out.rhs = bind_rec(f->rhs, scope);
      return node(std::move(out));
    case FKind::Exists:
    case FKind::Forall:
      scope.push_back(f->var);
      out.body = bind_rec(f->body, scope);
      scope.pop_back();
      return node(std::move(out));
  }
  throw PreconditionError("bind_formula: bad node");
}

}  // namespace

FormulaPtr bind_formula(const FormulaPtr& f) {
  std::vector<std::string> scope;
  return bind_rec(f, scope);
}

FormulaPtr bind_formula_scoped(const FormulaPtr& f, const std::vector<std::string>& scope) {
  std::vector<std::string> s = scope;
  return bind_rec(f, s);
}

// ---- parser ----

namespace {

struct Token {
  enum Kind { Ident, LPar, RPar, Comma, Dot, EqSign, AmpSign, Bar, Bang, Arrow, DArrow, End } kind;
  std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      out.push_back({Token::Ident, text.substr(i, j - i)});
      i = j;
      continue;
    }
    auto two = text.substr(i, 2);
    auto three = text.substr(i, 3);
    if (three == "<->") {
      out.push_back({Token::DArrow, three});
      i += 3;
    } else if (two == "->") {
      out.push_back({Token::Arrow, two});
      i += 2;
    } else {
      switch (c) {
        case '(': out.push_back({Token::LPar, "("}); break;
        case ')': out.push_back({Token::RPar, ")"}); break;
        case ',': out.push_back({Token::Comma, ","}); break;
        case '.': out.push_back({Token::Dot, "."}); break;
        case '=': out.push_back({Token::EqSign, "="}); break;
        case '&': out.push_back({Token::AmpSign, "&"}); break;
        case '|': out.push_back({Token::Bar, "|"}); break;
        case '!': out.push_back({Token::Bang, "!"}); break;
        default:
          throw ParseError(std::string("formula: unexpected character '") + c + "'");
      }
      ++i;
    }
  }
  out.push_back({Token::End, ""});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  FormulaPtr parse() {
    auto f = parse_iff();
    expect(Token::End, "end of input");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  void expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k)
      throw ParseError("formula: expected " + what + ", got '" + peek().text + "'");
    ++pos_;
  }

  FormulaPtr parse_iff() {
    auto lhs = parse_implies();
    if (peek().kind == Token::DArrow) {
      ++pos_;
      return f_iff(lhs, parse_iff());
    }
    return lhs;
  }

  FormulaPtr parse_implies() {
    auto lhs = parse_or();
    if (peek().kind == Token::Arrow) {
      ++pos_;
      return f_implies(lhs, parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    auto lhs = parse_and();
    while (peek().kind == Token::Bar) {
      ++pos_;
      lhs = f_or(lhs, parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    auto lhs = parse_unary();
    while (peek().kind == Token::AmpSign) {
      ++pos_;
      lhs = f_and(lhs, parse_unary());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    if (peek().kind == Token::Bang) {
      ++pos_;
      return f_not(parse_unary());
    }
    if (peek().kind == Token::Ident && (peek().text == "forall" || peek().text == "exists")) {
      bool universal = take().text == "forall";
      if (peek().kind != Token::Ident)
        throw ParseError("formula: expected variable after quantifier");
      std::string var = take().text;
      if (var == "forall" || var == "exists" || var == "true" || var == "false")
        throw ParseError("formula: reserved word used as variable: " + var);
      expect(Token::Dot, "'.' after quantified variable");
      scope_.push_back(var);
      auto body = parse_iff();  // maximal scope to the right
      scope_.pop_back();
      return universal ? f_forall(var, body) : f_exists(var, body);
    }
    return parse_primary();
  }

  VarRef make_ref(const std::string& name) {
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == name) return {static_cast<int>(scope_.size() - 1 - i), name};
    return {-1, name};
  }

  FormulaPtr parse_primary() {
    if (peek().kind == Token::LPar) {
      ++pos_;
      auto f = parse_iff();
      expect(Token::RPar, "')'");
      return f;
    }
    if (peek().kind != Token::Ident)
      throw ParseError("formula: expected formula, got '" + peek().text + "'");
    std::string head = take().text;
    if (head == "true") return f_true();
    if (head == "false") return f_false();
    if (peek().kind == Token::LPar) {
      ++pos_;
      Formula atom{FKind::Atom, head, {}, nullptr, nullptr, {}, nullptr};
      if (peek().kind != Token::RPar) {
        while (true) {
          if (peek().kind != Token::Ident)
            throw ParseError("formula: expected variable in atom " + head);
          atom.args.push_back(make_ref(take().text));
          if (peek().kind == Token::Comma) {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect(Token::RPar, "')' closing atom " + head);
      if (atom.args.empty()) throw ParseError("formula: atom " + head + " needs arguments");
      return node(std::move(atom));
    }
    if (peek().kind == Token::EqSign) {
      ++pos_;
      if (peek().kind != Token::Ident) throw ParseError("formula: expected variable after '='");
      Formula eq{FKind::Eq, {}, {}, nullptr, nullptr, {}, nullptr};
      eq.args.push_back(make_ref(head));
      eq.args.push_back(make_ref(take().text));
      return node(std::move(eq));
    }
    throw ParseError("formula: bare identifier '" + head + "' is not a formula");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

void check_against(const FormulaPtr& f, const Signature& sig) {
  switch (f->kind) {
    case FKind::Atom:
      if (!sig.has(f->sym)) throw ParseError("formula: unknown symbol " + f->sym);
      if (sig.arity(f->sym) != static_cast<int>(f->args.size()))
        throw ParseError("formula: symbol " + f->sym + " expects arity " +
                         std::to_string(sig.arity(f->sym)) + ", got " +
                         std::to_string(f->args.size()));
      return;
    case FKind::True:
    case FKind::False:
    case FKind::Eq:
      return;
    case FKind::Not:
      check_against(f->lhs, sig);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      check_against(f->lhs, sig);
      check_against(f->rhs, sig);
      return;
    case FKind::Exists:
    case FKind::Forall:
      check_against(f->body, sig);
      return;
  }
}

void infer_rec(const FormulaPtr& f, Signature& sig) {
  switch (f->kind) {
    case FKind::Atom: {
      int arity = static_cast<int>(f->args.size());
      if (!sig.has(f->sym)) {
        sig.add({f->sym, arity});
      } else if (sig.arity(f->sym) != arity) {
        throw ParseError("formula: symbol " + f->sym + " used with arities " +
                         std::to_string(sig.arity(f->sym)) + " and " + std::to_string(arity));
      }
      return;
    }
    case FKind::True:
    case FKind::False:
    case FKind::Eq:
      return;
    case FKind::Not:
      infer_rec(f->lhs, sig);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      infer_rec(f->lhs, sig);
      infer_rec(f->rhs, sig);
      return;
    case FKind::Exists:
    case FKind::Forall:
      infer_rec(f->body, sig);
      return;
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  auto f = Parser(text).parse();
  check_against(f, sig);
  return f;
}

FormulaPtr parse_formula(const std::string& text) {
  auto f = Parser(text).parse();
  inferred_signature(f);  // arity consistency
  return f;
}

Signature inferred_signature(const FormulaPtr& f) {
  Signature sig;
  infer_rec(f, sig);
  return sig;
}

// ---- rendering ----

namespace {

// Precedence for parenthesization: <-> 0, -> 1, | 2, & 3, ! and atoms 4.
// Quantifiers act like level 0 (maximal scope).
void render_rec(const FormulaPtr& f, int min_prec, bool alpha, int depth, std::ostream& out) {
  auto var_text = [&](const VarRef& r) -> std::string {
    if (alpha) {
      if (r.bound >= 0 && r.bound < depth) return "b" + std::to_string(depth - 1 - r.bound);
      return "f:" + r.name;
    }
    return r.name;
  };
  auto binary = [&](const char* op, int prec, bool right_assoc) {
    bool paren = prec < min_prec;
    if (paren) out << "(";
    render_rec(f->lhs, right_assoc ? prec + 1 : prec, alpha, depth, out);
    out << " " << op << " ";
    render_rec(f->rhs, right_assoc ? prec : prec + 1, alpha, depth, out);
    if (paren) out << ")";
  };
  switch (f->kind) {
    case FKind::True:
      out << "true";
      return;
    case FKind::False:
      out << "false";
      return;
    case FKind::Atom: {
      out << f->sym << "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out << ",";
        out << var_text(f->args[i]);
      }
      out << ")";
      return;
    }
    case FKind::Eq:
      out << var_text(f->args[0]) << " = " << var_text(f->args[1]);
      return;
    case FKind::Not: {
      out << "!";
      bool paren = f->lhs->kind != FKind::Atom && f->lhs->kind != FKind::True &&
                   f->lhs->kind != FKind::False && f->lhs->kind != FKind::Not;
      if (paren) out << "(";
      render_rec(f->lhs, 4, alpha, depth, out);
      if (paren) out << ")";
      return;
    }
    case FKind::And:
      binary("&", 3, false);
      return;
    case FKind::Or:
      binary("|", 2, false);
      return;
    case FKind::Implies:
      binary("->", 1, true);
      return;
    case FKind::Iff:
      binary("<->", 0, true);
      return;
    case FKind::Exists:
    case FKind::Forall: {
      bool paren = 0 < min_prec;
      if (paren) out << "(";
      out << (f->kind == FKind::Forall ? "forall " : "exists ");
      out << (alpha ? "b" + std::to_string(depth) : f->var) << ". ";
      render_rec(f->body, 0, alpha, depth + 1, out);
      if (paren) out << ")";
      return;
    }
  }
}

}  // namespace

std::string render_formula(const FormulaPtr& f) {
  std::ostringstream out;
  render_rec(f, 0, false, 0, out);
  return out.str();
}

std::string alpha_key(const FormulaPtr& f) {
  std::ostringstream out;
  render_rec(f, 0, true, 0, out);
  return out.str();
}

namespace {

void free_rec(const FormulaPtr& f, int depth, std::vector<std::string>& out) {
  auto add = [&](const VarRef& r) {
    if (r.bound >= 0 && r.bound < depth) return;
    if (std::find(out.begin(), out.end(), r.name) == out.end()) out.push_back(r.name);
  };
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
      return;
    case FKind::Atom:
    case FKind::Eq:
      for (const auto& r : f->args) add(r);
      return;
    case FKind::Not:
      free_rec(f->lhs, depth, out);
      return;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      free_rec(f->lhs, depth, out);
      free_rec(f->rhs, depth, out);
      return;
    case FKind::Exists:
    case FKind::Forall:
      free_rec(f->body, depth + 1, out);
      return;
  }
}

}  // namespace

std::vector<std::string> free_vars(const FormulaPtr& f) {
  std::vector<std::string> out;
  free_rec(f, 0, out);
  return out;
}

bool is_sentence(const FormulaPtr& f) { return free_vars(f).empty(); }

void require_sentence(const FormulaPtr& f) {
  auto fv = free_vars(f);
  if (fv.empty()) return;
  std::string list;
  for (const auto& v : fv) list += (list.empty() ? "" : ", ") + v;
  throw PreconditionError("sentence required; free variables: " + list);
}

int quantifier_rank(const FormulaPtr& f) {
  switch (f->kind) {
    case FKind::True:
    case FKind::False:
    case FKind::Atom:
    case FKind::Eq:
      return 0;
    case FKind::Not:
      return quantifier_rank(f->lhs);
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
    case FKind::Iff:
      return std::max(quantifier_rank(f->lhs), quantifier_rank(f->rhs));
    case FKind::Exists:
    case FKind::Forall:
      return 1 + quantifier_rank(f->body);
  }
  return 0;
}

}  // namespace relic
