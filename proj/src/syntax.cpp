// Lexer, recursive-descent parser and minimal-parenthesis printer.
#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "tangle/formula.hpp"

namespace tangle {

namespace {

enum class Tok {
  Ident,
  True,
  False,
  Mu,
  Nu,
  All,
  Ex,
  Not,
  And,
  Or,
  Imp,
  Iff,
  Box,
  Dia,
  BoxD,
  DiaD,
  Tangle,
  TangleD,
  LBrace,
  RBrace,
  Comma,
  LParen,
  RParen,
  Dot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = i;
    if (ident_start(c)) {
      while (i < s.size() && ident_char(s[i])) ++i;
      std::string w(s.substr(at, i - at));
      Tok k = Tok::Ident;
      if (w == "mu") k = Tok::Mu;
      else if (w == "nu") k = Tok::Nu;
      else if (w == "true") k = Tok::True;
      else if (w == "false") k = Tok::False;
      else if (w == "A") k = Tok::All;
      else if (w == "E") k = Tok::Ex;
      out.push_back({k, std::move(w), at});
      continue;
    }
    static const std::pair<std::string_view, Tok> puncts[] = {
        {"<->", Tok::Iff}, {"<dt>", Tok::TangleD}, {"<d>", Tok::DiaD}, {"<t>", Tok::Tangle},
        {"<>", Tok::Dia},  {"[d]", Tok::BoxD},     {"[]", Tok::Box},   {"->", Tok::Imp},
        {"~", Tok::Not},   {"&", Tok::And},        {"|", Tok::Or},     {"{", Tok::LBrace},
        {"}", Tok::RBrace}, {",", Tok::Comma},     {"(", Tok::LParen}, {")", Tok::RParen},
        {".", Tok::Dot},
    };
    bool matched = false;
    for (const auto& [lit, kind] : puncts) {
      if (starts(lit)) {
        out.push_back({kind, std::string(lit), at});
        i += lit.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", at);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().pos); }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what);
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    while (accept(Tok::Iff)) lhs = iff(lhs, parse_imp());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept(Tok::Imp)) return implies(lhs, parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept(Tok::Or)) lhs = disj(lhs, parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept(Tok::And)) lhs = conj(lhs, parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::Not: take(); return neg(parse_unary());
      case Tok::Box: take(); return box(parse_unary());
      case Tok::Dia: take(); return dia(parse_unary());
      case Tok::BoxD: take(); return box_d(parse_unary());
      case Tok::DiaD: take(); return dia_d(parse_unary());
      case Tok::All: take(); return forall(parse_unary());
      case Tok::Ex: take(); return exists(parse_unary());
      case Tok::Mu:
      case Tok::Nu: return parse_binder();
      default: return parse_primary();
    }
  }

  Formula parse_binder() {
    const Token& b = take();
    if (peek().kind != Tok::Ident) fail("expected variable after " + b.text);
    std::string var = take().text;
    expect(Tok::Dot, "'.'");
    Formula body = parse_iff();
    if (!positive_in(body, var))
      throw ParseError(var + " not positive in " + to_string(body), b.pos);
    return b.kind == Tok::Mu ? mu(var, body) : nu(var, body);
  }

  Formula parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: take(); return atom(t.text);
      case Tok::True: take(); return top();
      case Tok::False: take(); return bot();
      case Tok::LParen: {
        take();
        Formula f = parse_iff();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Tangle:
      case Tok::TangleD: {
        bool d = take().kind == Tok::TangleD;
        std::size_t brace = peek().pos;
        expect(Tok::LBrace, "'{'");
        if (peek().kind == Tok::RBrace) throw ParseError("empty tangle braces", brace);
        std::vector<Formula> members{parse_iff()};
        while (accept(Tok::Comma)) members.push_back(parse_iff());
        expect(Tok::RBrace, "'}'");
        return d ? tangle_d_of(std::move(members)) : tangle_of(std::move(members));
      }
      case Tok::End: fail("unexpected end of input");
      default: fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::Iff: return 1;
    case Op::Implies: return 2;
    case Op::Or: return 3;
    case Op::And: return 4;
    default: return 5;
  }
}

const char* prefix_symbol(Op op) {
  switch (op) {
    case Op::Not: return "~";
    case Op::Box: return "[]";
    case Op::Dia: return "<>";
    case Op::BoxD: return "[d]";
    case Op::DiaD: return "<d>";
    case Op::Forall: return "A ";
    case Op::Exists: return "E ";
    default: return nullptr;
  }
}

const char* infix_symbol(Op op) {
  switch (op) {
    case Op::And: return " & ";
    case Op::Or: return " | ";
    case Op::Implies: return " -> ";
    case Op::Iff: return " <-> ";
    default: return nullptr;
  }
}

// ctx: binding strength demanded by the parent.  right_open: nothing
// follows this text before the end of the enclosing scope, so a binder
// may extend to the right without parentheses.
void print(const Formula& f, int ctx, bool right_open, std::string& out) {
  switch (f.op()) {
    case Op::Atom: out += f.name(); return;
    case Op::Top: out += "true"; return;
    case Op::Bot: out += "false"; return;
    case Op::Tangle:
    case Op::TangleD: {
      out += f.is(Op::Tangle) ? "<t>{" : "<dt>{";
      bool first = true;
      for (const auto& m : f.children()) {
        if (!first) out += ", ";
        first = false;
        print(m, 0, true, out);
      }
      out += "}";
      return;
    }
    case Op::Mu:
    case Op::Nu: {
      bool paren = !right_open;
      if (paren) out += "(";
      out += f.is(Op::Mu) ? "mu " : "nu ";
      out += f.name();
      out += ". ";
      print(f.child(), 0, true, out);
      if (paren) out += ")";
      return;
    }
    default: break;
  }
  if (const char* sym = prefix_symbol(f.op())) {
    out += sym;
    print(f.child(), 5, right_open, out);
    return;
  }
  int p = precedence(f.op());
  bool paren = p < ctx;
  bool right_assoc = f.is(Op::Implies);
  if (paren) out += "(";
  print(f.child(0), right_assoc ? p + 1 : p, false, out);
  out += infix_symbol(f.op());
  print(f.child(1), right_assoc ? p : p + 1, paren || right_open, out);
  if (paren) out += ")";
}

}  // namespace

Formula parse(std::string_view text) { return Parser(text).parse_all(); }

std::string to_string(const Formula& f) {
  std::string out;
  print(f, 0, true, out);
  return out;
}

}  // namespace tangle
