#include <cctype>
#include <sstream>

#include "elam/frontend.hpp"
#include "elam/syntax.hpp"

namespace elam {

namespace {

enum class Tok {
  Ident, Nat, Lambda, LParen, RParen, LBrace, RBrace, LBracket, RBracket,
  Colon, Semi, Comma, Arrow, Eq, Dot1, Dot2, Dot3,
  KwNil, KwCons, KwMatch, KwFix, KwChoose, KwUnpack, KwPi, KwExists,
  KwTop, KwList, KwTrail, KwConsT, KwMatchT, KwDef, KwCheck, KwEval,
  End
};

struct Token {
  Tok kind;
  std::string text;
  long nat = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line, col, msg); }

  void advance(size_t n) {
    for (size_t i = 0; i < n && pos < src.size(); ++i, ++pos) {
      if (src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_ws();
      Token t;
      t.line = line;
      t.col = col;
      if (pos >= src.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      char c = src[pos];
      auto one = [&](Tok k) {
        t.kind = k;
        advance(1);
      };
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_' ||
                src[pos] == '\'')) {
          advance(1);
        }
        t.text = src.substr(start, pos - start);
        if (t.text == "nil") t.kind = Tok::KwNil;
        else if (t.text == "cons") t.kind = Tok::KwCons;
        else if (t.text == "match") t.kind = Tok::KwMatch;
        else if (t.text == "fix") t.kind = Tok::KwFix;
        else if (t.text == "choose") t.kind = Tok::KwChoose;
        else if (t.text == "unpack") t.kind = Tok::KwUnpack;
        else if (t.text == "Pi") t.kind = Tok::KwPi;
        else if (t.text == "exists") t.kind = Tok::KwExists;
        else if (t.text == "Top") t.kind = Tok::KwTop;
        else if (t.text == "List") t.kind = Tok::KwList;
        else if (t.text == "Trail") t.kind = Tok::KwTrail;
        else if (t.text == "Cons") t.kind = Tok::KwConsT;
        else if (t.text == "Match") t.kind = Tok::KwMatchT;
        else if (t.text == "def") t.kind = Tok::KwDef;
        else if (t.text == "check") t.kind = Tok::KwCheck;
        else if (t.text == "eval") t.kind = Tok::KwEval;
        else t.kind = Tok::Ident;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) advance(1);
        t.kind = Tok::Nat;
        t.nat = std::stol(src.substr(start, pos - start));
      } else if (c == '.') {
        if (pos + 1 >= src.size()) fail("selection index expected after '.'");
        char d = src[pos + 1];
        if (d == '1') t.kind = Tok::Dot1;
        else if (d == '2') t.kind = Tok::Dot2;
        else if (d == '3') t.kind = Tok::Dot3;
        else fail("selection index must be 1, 2 or 3");
        advance(2);
      } else if (c == '=' && pos + 1 < src.size() && src[pos + 1] == '>') {
        t.kind = Tok::Arrow;
        advance(2);
      } else {
        switch (c) {
          case '\\': one(Tok::Lambda); break;
          case '(': one(Tok::LParen); break;
          case ')': one(Tok::RParen); break;
          case '{': one(Tok::LBrace); break;
          case '}': one(Tok::RBrace); break;
          case '[': one(Tok::LBracket); break;
          case ']': one(Tok::RBracket); break;
          case ':': one(Tok::Colon); break;
          case ';': one(Tok::Semi); break;
          case ',': one(Tok::Comma); break;
          case '=': one(Tok::Eq); break;
          default:
            fail(std::string("unexpected character '") + c + "'");
        }
      }
      out.push_back(t);
    }
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;

  explicit Parser(const std::string& text) { toks = Lexer(text).run(); }

  const Token& peek(int ahead = 0) const {
    size_t i = pos + ahead;
    return i < toks.size() ? toks[i] : toks.back();
  }
  Token next() {
    Token t = peek();
    if (t.kind != Tok::End) ++pos;
    return t;
  }
  bool at(Tok k) const { return peek().kind == k; }
  Token expect(Tok k, const std::string& what) {
    if (!at(k)) {
      const Token& t = peek();
      throw ParseError(t.line, t.col, "expected " + what, what);
    }
    return next();
  }

  BaseType parse_base(bool allow_trail) {
    const Token& t = peek();
    if (t.kind == Tok::KwTop) { next(); return BaseType::Top; }
    if (t.kind == Tok::KwList) { next(); return BaseType::List; }
    if (allow_trail && t.kind == Tok::KwTrail) { next(); return BaseType::Trail; }
    throw ParseError(t.line, t.col, "expected base type", allow_trail ? "Top|List|Trail" : "Top|List");
  }

  // atom := ident | nil | choose[B] | unpack[B](t) | ( term )
  // postfix := atom (.k)*
  TermPtr parse_postfix() {
    TermPtr t;
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Ident:
        t = var(next().text);
        break;
      case Tok::KwNil:
        next();
        t = nil();
        break;
      case Tok::KwChoose: {
        next();
        expect(Tok::LBracket, "'['");
        BaseType b = parse_base(false);
        expect(Tok::RBracket, "']'");
        t = choose(b);
        break;
      }
      case Tok::KwUnpack: {
        next();
        expect(Tok::LBracket, "'['");
        BaseType b = parse_base(false);
        expect(Tok::RBracket, "']'");
        expect(Tok::LParen, "'('");
        TermPtr arg = parse_term();
        expect(Tok::RParen, "')'");
        t = unpack(b, arg);
        break;
      }
      case Tok::LParen: {
        next();
        t = parse_term();
        expect(Tok::RParen, "')'");
        break;
      }
      default:
        throw ParseError(tk.line, tk.col, "expected a term", "term");
    }
    for (;;) {
      if (at(Tok::Dot1)) { next(); t = sel(t, 1); }
      else if (at(Tok::Dot2)) { next(); t = sel(t, 2); }
      else if (at(Tok::Dot3)) { next(); t = sel(t, 3); }
      else break;
    }
    return t;
  }

  bool starts_operand() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::KwNil:
      case Tok::KwChoose:
      case Tok::KwUnpack:
      case Tok::KwCons:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  // operand := postfix | cons postfix postfix
  TermPtr parse_operand() {
    if (at(Tok::KwCons)) {
      next();
      TermPtr h = parse_postfix();
      TermPtr tl = parse_postfix();
      return cons(h, tl);
    }
    return parse_postfix();
  }

  TermPtr parse_term() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Lambda: {
        next();
        expect(Tok::LParen, "'('");
        Name x = expect(Tok::Ident, "identifier").text;
        expect(Tok::Colon, "':'");
        TypePtr ty = parse_type();
        expect(Tok::RParen, "')'");
        expect(Tok::Arrow, "'=>'");
        return abs(x, ty, parse_term());
      }
      case Tok::KwMatch: {
        next();
        TermPtr scrut = parse_app();
        expect(Tok::LBrace, "'{'");
        expect(Tok::KwNil, "'nil'");
        expect(Tok::Arrow, "'=>'");
        TermPtr nc = parse_term();
        expect(Tok::Semi, "';'");
        expect(Tok::KwCons, "'cons'");
        Name hd = expect(Tok::Ident, "identifier").text;
        Name tl = expect(Tok::Ident, "identifier").text;
        expect(Tok::Arrow, "'=>'");
        TermPtr cc = parse_term();
        expect(Tok::RBrace, "'}'");
        return match(scrut, nc, hd, tl, cc);
      }
      case Tok::KwFix: {
        next();
        expect(Tok::LBracket, "'['");
        long n = expect(Tok::Nat, "recursion bound").nat;
        expect(Tok::RBracket, "']'");
        expect(Tok::LParen, "'('");
        Name x = expect(Tok::Ident, "identifier").text;
        expect(Tok::Colon, "':'");
        TypePtr ty = parse_type();
        expect(Tok::Arrow, "'=>'");
        TermPtr body = parse_term();
        expect(Tok::Comma, "','");
        TermPtr dflt = parse_term();
        expect(Tok::RParen, "')'");
        return fixpoint(n, x, ty, body, dflt);
      }
      default:
        return parse_app();
    }
  }

  TermPtr parse_app() {
    TermPtr t = parse_operand();
    while (starts_operand()) t = app(t, parse_operand());
    return t;
  }

  TypePtr parse_type_atom() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::KwTop: next(); return top();
      case Tok::KwList: next(); return list();
      case Tok::KwTrail: next(); return trail_type();
      case Tok::LBrace: {
        next();
        TermPtr t = parse_term();
        expect(Tok::Colon, "':'");
        TypePtr u = parse_type();
        expect(Tok::RBrace, "'}'");
        return singleton(t, u);
      }
      case Tok::LParen: {
        next();
        TypePtr t = parse_type();
        expect(Tok::RParen, "')'");
        return t;
      }
      default:
        throw ParseError(tk.line, tk.col, "expected a type", "type");
    }
  }

  TypePtr parse_type() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::KwPi:
      case Tok::KwExists: {
        bool is_pi = tk.kind == Tok::KwPi;
        next();
        expect(Tok::LParen, "'('");
        Name x = expect(Tok::Ident, "identifier").text;
        expect(Tok::Colon, "':'");
        TypePtr dom = parse_type();
        expect(Tok::RParen, "')'");
        expect(Tok::Arrow, "'=>'");
        TypePtr body = parse_type();
        return is_pi ? pi(x, dom, body) : exists(x, dom, body);
      }
      case Tok::KwConsT: {
        next();
        TypePtr h = parse_type_atom();
        TypePtr t = parse_type_atom();
        return cons_type(h, t);
      }
      case Tok::KwMatchT: {
        next();
        TermPtr scrut = parse_app();
        expect(Tok::LBrace, "'{'");
        expect(Tok::KwNil, "'nil'");
        expect(Tok::Arrow, "'=>'");
        TypePtr nt = parse_type();
        expect(Tok::Semi, "';'");
        expect(Tok::KwCons, "'cons'");
        Name hd = expect(Tok::Ident, "identifier").text;
        Name tl = expect(Tok::Ident, "identifier").text;
        expect(Tok::Arrow, "'=>'");
        TypePtr ct = parse_type();
        expect(Tok::RBrace, "'}'");
        return match_type(scrut, nt, hd, tl, ct);
      }
      default:
        return parse_type_atom();
    }
  }

  SourceFile parse_file() {
    SourceFile f;
    while (!at(Tok::End)) {
      const Token& tk = peek();
      SourceItem item;
      item.line = tk.line;
      if (tk.kind == Tok::KwDef) {
        next();
        item.kind = SourceItem::Kind::Def;
        item.name = expect(Tok::Ident, "identifier").text;
        expect(Tok::Eq, "'='");
        item.term = parse_term();
      } else if (tk.kind == Tok::KwCheck) {
        next();
        item.kind = SourceItem::Kind::Check;
        item.term = parse_term();
        expect(Tok::Colon, "':'");
        item.annot = parse_type();
      } else if (tk.kind == Tok::KwEval) {
        next();
        item.kind = SourceItem::Kind::Eval;
        item.term = parse_term();
      } else {
        throw ParseError(tk.line, tk.col, "expected 'def', 'check' or 'eval'",
                         "def|check|eval");
      }
      f.items.push_back(std::move(item));
    }
    return f;
  }

  std::vector<std::pair<Name, TypePtr>> parse_bindings() {
    std::vector<std::pair<Name, TypePtr>> out;
    if (at(Tok::End)) return out;
    for (;;) {
      Name x = expect(Tok::Ident, "identifier").text;
      expect(Tok::Colon, "':'");
      out.emplace_back(x, parse_type());
      if (!at(Tok::Comma)) break;
      next();
    }
    return out;
  }

  void expect_end() {
    if (!at(Tok::End)) {
      const Token& t = peek();
      throw ParseError(t.line, t.col, "trailing input after expression", "end of input");
    }
  }
};

}  // namespace

TermPtr parse_term(const std::string& text) {
  Parser p(text);
  TermPtr t = p.parse_term();
  p.expect_end();
  return t;
}

TypePtr parse_type(const std::string& text) {
  Parser p(text);
  TypePtr t = p.parse_type();
  p.expect_end();
  return t;
}

SourceFile parse_file(const std::string& text) {
  Parser p(text);
  return p.parse_file();
}

std::vector<std::pair<Name, TypePtr>> parse_bindings(const std::string& text) {
  Parser p(text);
  auto b = p.parse_bindings();
  p.expect_end();
  return b;
}

}  // namespace elam
