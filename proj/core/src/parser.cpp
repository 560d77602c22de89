#include "resdist/parser.hpp"

#include <cctype>

#include "resdist/error.hpp"

namespace resdist {

namespace {

enum class Tok { Name, Num, LParen, RParen, Comma, Eq, Le, Lt, Ge, Gt, Plus, Minus, Star, Slash, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
};

struct Lexer {
  std::vector<Token> toks;

  explicit Lexer(const std::string& src) {
    int line = 1;
    size_t i = 0;
    auto push = [&](Tok k, std::string t) { toks.push_back({k, std::move(t), line}); };
    while (i < src.size()) {
      char ch = src[i];
      if (ch == '\n') { ++line; ++i; continue; }
      if (isspace(static_cast<unsigned char>(ch))) { ++i; continue; }
      if (ch == '/' && i + 1 < src.size() && src[i + 1] == '/') {
        while (i < src.size() && src[i] != '\n') ++i;
        continue;
      }
      if (isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        size_t j = i;
        while (j < src.size() && (isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
        push(Tok::Name, src.substr(i, j - i));
        i = j;
        continue;
      }
      if (isdigit(static_cast<unsigned char>(ch))) {
        size_t j = i;
        while (j < src.size() && isdigit(static_cast<unsigned char>(src[j]))) ++j;
        push(Tok::Num, src.substr(i, j - i));
        i = j;
        continue;
      }
      switch (ch) {
        case '(': push(Tok::LParen, "("); ++i; break;
        case ')': push(Tok::RParen, ")"); ++i; break;
        case ',': push(Tok::Comma, ","); ++i; break;
        case '+': push(Tok::Plus, "+"); ++i; break;
        case '-': push(Tok::Minus, "-"); ++i; break;
        case '*': push(Tok::Star, "*"); ++i; break;
        case '/': push(Tok::Slash, "/"); ++i; break;
        case '=':
          if (i + 1 < src.size() && src[i + 1] == '<') { push(Tok::Le, "=<"); i += 2; }
          else { push(Tok::Eq, "="); ++i; }
          break;
        case '<':
          if (i + 1 < src.size() && src[i + 1] == '=') { push(Tok::Le, "<="); i += 2; }
          else { push(Tok::Lt, "<"); ++i; }
          break;
        case '>':
          if (i + 1 < src.size() && src[i + 1] == '=') { push(Tok::Ge, ">="); i += 2; }
          else { push(Tok::Gt, ">"); ++i; }
          break;
        default:
          fail(ErrKind::Syntax, "unexpected character '" + std::string(1, ch) + "' at line " + std::to_string(line));
      }
    }
    push(Tok::End, "");
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  explicit Parser(const std::string& src) : toks(Lexer(src).toks) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  const Token& next() { const Token& t = peek(); if (t.kind != Tok::End) ++pos; return t; }
  bool at(Tok k) const { return peek().kind == k; }
  bool at_name(const char* s) const { return at(Tok::Name) && peek().text == s; }
  bool eat(Tok k) { if (at(k)) { ++pos; return true; } return false; }
  bool eat_name(const char* s) { if (at_name(s)) { ++pos; return true; } return false; }

  [[noreturn]] void err(const std::string& msg) const {
    fail(ErrKind::Syntax, msg + " at line " + std::to_string(peek().line) +
                              (peek().kind == Tok::End ? " (end of input)" : " near '" + peek().text + "'"));
  }
  void expect(Tok k, const char* what) { if (!eat(k)) err(std::string("expected ") + what); }

  std::string expect_name(const char* what) {
    if (!at(Tok::Name)) err(std::string("expected ") + what);
    return next().text;
  }

  static bool is_keyword(const std::string& s) {
    return s == "if" || s == "then" || s == "else" || s == "not" || s == "true" || s == "false" ||
           s == "min" || s == "max" || s == "sum" || s == "prod" || s == "argDev" || s == "i2r" ||
           s == "and" || s == "c";
  }

  // ---- arithmetic expressions ----
  AExp aexp() {
    AExp e = aterm();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      AOp op = next().kind == Tok::Plus ? AOp::Add : AOp::Sub;
      e = mk::abin(op, e, aterm());
    }
    return e;
  }

  AExp aterm() {
    AExp e = afactor();
    while (at(Tok::Star) || at(Tok::Slash)) {
      AOp op = next().kind == Tok::Star ? AOp::Mul : AOp::Div;
      e = mk::abin(op, e, afactor());
    }
    return e;
  }

  AExp afactor() {
    if (eat(Tok::Minus)) {
      AExp f = afactor();
      if (auto* k = as_cint(f)) return mk::cint(-k->value);
      return mk::sub(mk::cint(0), f);
    }
    if (at(Tok::Num)) return mk::cint(Int(next().text));
    if (eat(Tok::LParen)) {
      AExp e = aexp();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (at(Tok::Name)) {
      std::string name = peek().text;
      if (name == "min" || name == "max") {
        next();
        expect(Tok::LParen, "'(' after min/max");
        AExp l = aexp();
        expect(Tok::Comma, "','");
        AExp r = aexp();
        expect(Tok::RParen, "')'");
        return name == "min" ? mk::amin(l, r) : mk::amax(l, r);
      }
      if (is_keyword(name)) err("unexpected keyword '" + name + "' in arithmetic expression");
      if (peek(1).kind == Tok::LParen) err("function call '" + name + "(...)' not allowed under arithmetic operators");
      next();
      return mk::var(name);
    }
    err("expected arithmetic expression");
  }

  // ---- boolean expressions ----
  BExp bexp() {
    BExp e = bterm();
    while (eat_name("and")) e = mk::band(e, bterm());
    return e;
  }

  BExp bterm() {
    if (eat_name("true")) return mk::btrue();
    if (eat_name("false")) return mk::bfalse();
    if (at_name("not")) {
      next();
      expect(Tok::LParen, "'(' after not");
      BExp b = bexp();
      expect(Tok::RParen, "')'");
      return mk::bnot(b);
    }
    if (at(Tok::LParen)) {
      // either a parenthesized boolean or the parenthesized left side of a
      // comparison; try the boolean reading first and back off on failure
      size_t save = pos;
      ++pos;
      try {
        BExp b = bexp();
        if (at(Tok::RParen) && !is_cmp(peek(1).kind)) {
          ++pos;
          return b;
        }
      } catch (const Error&) {
      }
      pos = save;
    }
    return comparison();
  }

  static bool is_cmp(Tok k) {
    return k == Tok::Eq || k == Tok::Le || k == Tok::Lt || k == Tok::Ge || k == Tok::Gt;
  }

  BExp comparison() {
    AExp lhs = aexp();
    if (!is_cmp(peek().kind)) err("expected comparison operator");
    Tok op = next().kind;
    switch (op) {
      case Tok::Eq: return mk::eq(lhs, exp());
      case Tok::Le: return mk::le(lhs, aexp());
      case Tok::Lt: return mk::lt(lhs, aexp());
      case Tok::Ge: { AExp r = aexp(); return mk::le(r, lhs); }
      default: { AExp r = aexp(); return mk::lt(r, lhs); }
    }
  }

  // ---- integer expressions ----
  Exp exp() {
    if (eat_name("if")) {
      BExp cond = bexp();
      if (!eat_name("then")) err("expected 'then'");
      Exp t = exp();
      if (!eat_name("else")) err("expected 'else'");
      Exp e = exp();
      return mk::ife(cond, t, e);
    }
    if (at_name("argDev")) {
      next();
      expect(Tok::LParen, "'(' after argDev");
      std::string v = expect_name("variable");
      expect(Tok::Comma, "','");
      Exp upd = exp();
      expect(Tok::Comma, "','");
      std::string cnt = expect_name("count variable");
      expect(Tok::RParen, "')'");
      return mk::argdev(v, upd, cnt);
    }
    if (at(Tok::Name) && !is_keyword(peek().text) && peek(1).kind == Tok::LParen) {
      std::string fname = next().text;
      next();  // (
      std::vector<Exp> args;
      if (!at(Tok::RParen)) {
        args.push_back(exp());
        while (eat(Tok::Comma)) args.push_back(exp());
      }
      expect(Tok::RParen, "')'");
      return mk::call(fname, std::move(args));
    }
    return mk::a(aexp());
  }

  // ---- probability expressions ----
  QExp qexp() {
    QExp e = qterm();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      QOp op = next().kind == Tok::Plus ? QOp::Add : QOp::Sub;
      e = fold_qbin(op, e, qterm());
    }
    return e;
  }

  QExp qterm() {
    QExp e = qfactor();
    while (at(Tok::Star) || at(Tok::Slash)) {
      QOp op = next().kind == Tok::Star ? QOp::Mul : QOp::Div;
      e = fold_qbin(op, e, qfactor());
    }
    return e;
  }

  static QExp fold_qbin(QOp op, const QExp& l, const QExp& r) {
    auto* kl = as_qconst(l);
    auto* kr = as_qconst(r);
    if (kl && kr) {
      switch (op) {
        case QOp::Add: return mk::qconst(kl->value + kr->value);
        case QOp::Sub: return mk::qconst(kl->value - kr->value);
        case QOp::Mul: return mk::qconst(kl->value * kr->value);
        case QOp::Div: return mk::qconst(kl->value / kr->value);
      }
    }
    return mk::qbin(op, l, r);
  }

  QExp qfactor() {
    if (eat(Tok::Minus)) {
      QExp f = qfactor();
      if (auto* k = as_qconst(f)) return mk::qconst(-k->value);
      return mk::qsub(mk::qconst(0), f);
    }
    if (at(Tok::Num)) {
      Int num(next().text);
      // literal fractions like 1/18 bind tightly and become one constant
      if (at(Tok::Slash) && peek(1).kind == Tok::Num) {
        next();
        Int den(next().text);
        if (den == 0) err("zero denominator");
        return mk::qconst(Rational(num, den));
      }
      return mk::qconst(Rational(num));
    }
    if (eat(Tok::LParen)) {
      QExp e = qexp();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (!at(Tok::Name)) err("expected probability expression");
    std::string name = peek().text;
    if (name == "min" || name == "max") return mk::i2r(afactor());
    if (name == "c") {
      next();
      expect(Tok::LParen, "'(' after c");
      BExp b = bexp();
      expect(Tok::RParen, "')'");
      return mk::c(b);
    }
    if (name == "sum") {
      next();
      expect(Tok::LParen, "'(' after sum");
      std::string v = expect_name("summation variable");
      expect(Tok::Comma, "','");
      QExp body = qexp();
      expect(Tok::RParen, "')'");
      return mk::sum(v, body);
    }
    if (name == "prod") {
      next();
      expect(Tok::LParen, "'(' after prod");
      std::string v = expect_name("product variable");
      expect(Tok::Comma, "','");
      QExp guard = qexp();
      expect(Tok::Comma, "','");
      QExp body = qexp();
      expect(Tok::RParen, "')'");
      return mk::prod(v, guard, body);
    }
    if (name == "i2r") {
      next();
      expect(Tok::LParen, "'(' after i2r");
      AExp a = aexp();
      expect(Tok::RParen, "')'");
      return mk::i2r(a);
    }
    if (is_keyword(name)) err("unexpected keyword '" + name + "' in probability expression");
    if (peek(1).kind == Tok::LParen) {
      next();
      next();
      std::vector<AExp> args;
      if (!at(Tok::RParen)) {
        args.push_back(aexp());
        while (eat(Tok::Comma)) args.push_back(aexp());
      }
      expect(Tok::RParen, "')'");
      return mk::callp(name, std::move(args));
    }
    next();
    return mk::qvar(name);
  }
};

bool is_prob_name(const std::string& name) { return !name.empty() && (name[0] == 'P' || name[0] == 'p'); }

void collect_binders(const QExp& q, NameSet& out) {
  if (auto* b = as_qbin(q)) { collect_binders(b->lhs, out); collect_binders(b->rhs, out); return; }
  if (auto* s = as_sum(q)) { out.insert(s->var); collect_binders(s->body, out); return; }
  if (auto* p = as_prod(q)) {
    out.insert(p->var);
    collect_binders(p->guard, out);
    collect_binders(p->body, out);
  }
}

}  // namespace

Program parse_program(const std::string& source) {
  Parser p(source);
  Program prog;
  int index = 0;
  while (!p.at(Tok::End)) {
    std::string name = p.expect_name("definition name");
    p.expect(Tok::LParen, "'(' after definition name");
    std::vector<std::string> params;
    if (!p.at(Tok::RParen)) {
      params.push_back(p.expect_name("parameter name"));
      while (p.eat(Tok::Comma)) params.push_back(p.expect_name("parameter name"));
    }
    p.expect(Tok::RParen, "')'");
    p.expect(Tok::Eq, "'=' after definition head");
    if (is_prob_name(name)) {
      if (prog.find_prob(name)) fail(ErrKind::Syntax, "duplicate probability function '" + name + "'");
      prog.probs.push_back({name, std::move(params), p.qexp()});
    } else {
      if (prog.find_func(name)) fail(ErrKind::Syntax, "duplicate function '" + name + "'");
      prog.funcs.push_back({name, std::move(params), p.exp(), ++index});
    }
  }

  // Integer function bodies may only reference their formals.
  for (const auto& f : prog.funcs) {
    NameSet formals(f.params.begin(), f.params.end());
    for (const auto& v : free_vars(f.body))
      if (!formals.count(v) && !prog.find_func(v))
        fail(ErrKind::UndefinedName, "'" + v + "' is not a parameter of function '" + f.name + "'");
  }

  // Free names in probability bodies become the symbolic program parameters.
  NameSet binders;
  for (const auto& d : prog.probs) {
    NameSet formals(d.params.begin(), d.params.end());
    collect_binders(d.body, binders);
    for (const auto& v : free_vars(d.body))
      if (!formals.count(v) && !prog.find_prob(v) && !prog.find_func(v)) prog.params.insert(v);
  }
  for (const auto& q : prog.params)
    if (binders.count(q))
      fail(ErrKind::Syntax, "parameter '" + q + "' is also used as a bound variable");
  return prog;
}

namespace {

template <typename T, typename F>
T parse_all(const std::string& src, F parse_fn) {
  Parser p(src);
  T result = parse_fn(p);
  if (!p.at(Tok::End)) p.err("trailing input");
  return result;
}

}  // namespace

AExp parse_aexp(const std::string& s) { return parse_all<AExp>(s, [](Parser& p) { return p.aexp(); }); }
BExp parse_bexp(const std::string& s) { return parse_all<BExp>(s, [](Parser& p) { return p.bexp(); }); }
Exp parse_exp(const std::string& s) { return parse_all<Exp>(s, [](Parser& p) { return p.exp(); }); }
QExp parse_qexp(const std::string& s) { return parse_all<QExp>(s, [](Parser& p) { return p.qexp(); }); }

}  // namespace resdist
