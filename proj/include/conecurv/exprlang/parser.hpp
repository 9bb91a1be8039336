#pragma once

#include <cctype>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "chart.hpp"
#include "expr.hpp"

namespace conecurv::expr {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos), msg_(msg) {}
  std::size_t position() const { return pos_; }
  const std::string& message() const { return msg_; }

 private:
  std::size_t pos_;
  std::string msg_;
};

namespace detail {

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := primary ('^' ['-'] int | '^' '(' ['-'] int ')')?
// primary := number | ident | ident '(' expr ')' | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : s_(text), chart_(chart) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  // Accepts ASCII '-' and U+2212.
  bool eat_minus() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '-') {
      ++pos_;
      return true;
    }
    if (s_.substr(pos_, 3) == "\xE2\x88\x92") {
      pos_ += 3;
      return true;
    }
    return false;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (eat('+')) e = add(e, term());
      else if (eat_minus()) e = sub(e, term());
      else return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) e = mul(e, unary());
      else if (eat('/')) e = div(e, unary());
      else return e;
    }
  }

  Expr unary() {
    if (eat_minus()) return neg(unary());
    return power();
  }

  int integer() {
    skip_ws();
    const bool paren = eat('(');
    const bool negative = eat_minus();
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int v = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren && !eat(')')) fail("expected ')'");
    return negative ? -v : v;
  }

  Expr power() {
    Expr base = primary();
    if (eat('^')) return pow(base, integer());
    return base;
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    if (tok == ".") {
      pos_ = start;
      fail("malformed number");
    }
    return Expr(std::strtod(tok.c_str(), nullptr));
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (eat('(')) {
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string id(s_.substr(start, pos_ - start));
      if (auto idx = chart_.index_of(id)) return Expr::variable(*idx, id);
      if (is_function_name(id)) {
        if (!eat('(')) fail("expected '(' after function '" + id + "'");
        Expr arg = expr();
        if (!eat(')')) fail("expected ')'");
        static const std::pair<const char*, Fn> table[] = {{"sin", Fn::Sin}, {"cos", Fn::Cos},
                                                           {"tan", Fn::Tan}, {"exp", Fn::Exp},
                                                           {"log", Fn::Log}, {"sqrt", Fn::Sqrt}};
        for (auto [name, fn] : table)
          if (id == name) return apply(fn, arg);
      }
      if (id == "pi") return Expr(std::numbers::pi);
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` into an expression whose variables are coordinates of `chart`.
inline Expr parse(std::string_view text, const Chart& chart) {
  return detail::Parser(text, chart).parse();
}

}  // namespace conecurv::expr
