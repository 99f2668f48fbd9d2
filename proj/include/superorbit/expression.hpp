#pragma once
// Lexer and expression parser for the textual grammar:
//   sums and differences, products, quotients by invertible elements, powers
//   (negative exponents on invertible elements), the literal i, rational numbers,
//   exp(...) of a nilpotent even element and Berezin integrals D(x1, ..., xn)(expr).
// parse(to_string(e)) == e for every element.

#include <cctype>
#include <string>
#include <vector>

#include "element.hpp"

namespace superorbit {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  int line() const { return line_; }
  int column() const { return col_; }

 private:
  int line_, col_;
};

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, col = 1;
  std::size_t offset = 0, length = 0;
};

// '#' and '//' start comments; "->" is one token.
inline std::vector<Token> tokenize(const std::string& src, int line0 = 1, int col0 = 1) {
  std::vector<Token> out;
  int line = line0, col = col0;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char ch = static_cast<unsigned char>(src[i]);
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    if (ch == '#' || (ch == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    t.offset = i;
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Number;
      t.text = src.substr(i, j - i);
      advance(j - i);
    } else if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Tok::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string("+-*/^(){};,=:|").find(static_cast<char>(ch)) != std::string::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, static_cast<char>(ch));
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + static_cast<char>(ch) + "'", line, col);
    }
    t.length = i - t.offset;
    out.push_back(t);
  }
  Token end;
  end.offset = i;
  end.line = line;
  end.col = col;
  out.push_back(end);
  return out;
}

// Cursor over a token list shared by the expression and scenario parsers.
class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::End; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool is(const std::string& punct_or_word) const {
    return (peek().kind == Tok::Punct || peek().kind == Tok::Ident) && peek().text == punct_or_word;
  }
  bool accept(const std::string& s) {
    if (!is(s)) return false;
    next();
    return true;
  }
  Token expect(const std::string& s) {
    if (!is(s)) fail("expected '" + s + "'");
    return next();
  }
  Token ident(const std::string& what = "identifier") {
    if (peek().kind != Tok::Ident) fail("expected " + what);
    return next();
  }
  long integer() {
    bool neg = accept("-");
    if (peek().kind != Tok::Number) fail("expected an integer");
    long v = std::stol(next().text);
    return neg ? -v : v;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", found " + got, t.line, t.col);
  }
  [[noreturn]] void fail_at(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.col); }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

class ExpressionParser {
 public:
  ExpressionParser(TokenStream& ts, AlgebraPtr alg) : ts_(ts), alg_(std::move(alg)) {}

  SuperElement sum() {
    SuperElement e = term();
    while (true) {
      if (ts_.accept("+")) e += term();
      else if (ts_.is("-") && !ts_.is("->")) {
        ts_.next();
        e -= term();
      } else break;
    }
    return e;
  }

 private:
  SuperElement term() {
    SuperElement e = unary();
    while (true) {
      if (ts_.accept("*")) {
        e = e * unary();
      } else if (ts_.is("/")) {
        Token t = ts_.next();
        SuperElement d = unary();
        try {
          e = e * d.invert();
        } catch (const Error& err) {
          ts_.fail_at(t, std::string("division by a non-invertible element: ") + err.what());
        }
      } else {
        break;
      }
    }
    return e;
  }
  SuperElement unary() {
    if (ts_.accept("-")) return -unary();
    if (ts_.accept("+")) return unary();
    return power();
  }
  SuperElement power() {
    Token at = ts_.peek();
    SuperElement base = atom();
    if (!ts_.accept("^")) return base;
    long k = ts_.integer();
    try {
      return base.pow(static_cast<int>(k));
    } catch (const Error& err) {
      ts_.fail_at(at, err.what());
    }
  }
  SuperElement atom() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::Number) {
      ts_.next();
      return SuperElement::constant(alg_, Scalar(Rational(t.text)));
    }
    if (ts_.accept("(")) {
      SuperElement e = sum();
      ts_.expect(")");
      return e;
    }
    if (t.kind != Tok::Ident) ts_.fail("expected an expression");
    Token id = ts_.next();
    if (id.text == "i") return SuperElement::constant(alg_, Scalar::i());
    if (id.text == "exp" && ts_.is("(")) {
      ts_.expect("(");
      SuperElement e = sum();
      ts_.expect(")");
      try {
        return e.exp_nilpotent();
      } catch (const Error& err) {
        ts_.fail_at(id, err.what());
      }
    }
    if (id.text == "D" && ts_.is("(")) {
      ts_.expect("(");
      std::vector<std::string> vars;
      do {
        Token v = ts_.ident("integration variable");
        if (!alg_->has(v.text)) ts_.fail_at(v, "undeclared generator '" + v.text + "'");
        if (alg_->parity(v.text) != Parity::Odd) ts_.fail_at(v, "integration variable '" + v.text + "' is not odd");
        vars.push_back(v.text);
      } while (ts_.accept(","));
      ts_.expect(")");
      ts_.expect("(");
      SuperElement e = sum();
      ts_.expect(")");
      return e.berezin(vars);
    }
    if (!alg_->has(id.text)) ts_.fail_at(id, "undeclared generator '" + id.text + "'");
    return SuperElement::gen(alg_, id.text);
  }

  TokenStream& ts_;
  AlgebraPtr alg_;
};

inline SuperElement parse_expression(const std::string& text, const AlgebraPtr& alg, int line = 1, int col = 1) {
  TokenStream ts(tokenize(text, line, col));
  ExpressionParser p(ts, alg);
  SuperElement e = p.sum();
  if (!ts.at_end()) ts.fail("unexpected trailing input");
  return e;
}

}  // namespace superorbit
