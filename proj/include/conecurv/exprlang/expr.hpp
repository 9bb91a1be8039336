#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace conecurv::expr {

enum class Op { Number, Var, Add, Sub, Mul, Div, Pow, Neg, Func };
enum class Fn { Sin, Cos, Tan, Exp, Log, Sqrt };

inline const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Exp: return "exp";
    case Fn::Log: return "log";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

/// Raised by evaluation when a subexpression leaves its real domain.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpr)
      : std::runtime_error(what + " in '" + subexpr + "'"), subexpr_(std::move(subexpr)) {}
  const std::string& subexpression() const { return subexpr_; }

 private:
  std::string subexpr_;
};

struct Node;

/// Immutable scalar expression over chart coordinates. Copies share structure.
class Expr {
 public:
  Expr();  // the number 0
  Expr(double value);  // NOLINT(google-explicit-constructor)
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Expr variable(int index, std::string name);

  const Node& node() const { return *node_; }
  Op op() const;
  bool is_number() const { return op() == Op::Number; }
  bool is_number(double v) const;
  double number() const;

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::Number;
  double value = 0.0;   // Number
  int var = -1;         // Var
  std::string name;     // Var
  Fn fn = Fn::Sin;      // Func
  int exponent = 0;     // Pow
  Expr lhs{std::shared_ptr<const Node>()};  // operands, null when unused
  Expr rhs{std::shared_ptr<const Node>()};
};

inline Expr::Expr() : Expr(0.0) {}

inline Expr::Expr(double value) {
  auto n = std::make_shared<Node>();
  n->op = Op::Number;
  n->value = value;
  node_ = std::move(n);
}

inline Expr Expr::variable(int index, std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->var = index;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

inline Op Expr::op() const { return node_->op; }
inline bool Expr::is_number(double v) const { return is_number() && node_->value == v; }
inline double Expr::number() const { return node_->value; }

namespace detail {

inline Expr make(Op op, Expr a, Expr b = Expr(std::shared_ptr<const Node>())) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

inline double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= base;
  return e < 0 ? 1.0 / r : r;
}

}  // namespace detail

// Smart constructors. They fold constants and drop 0/1 identities, nothing more.

inline Expr neg(const Expr& a) {
  if (a.is_number()) return Expr(-a.number());
  if (a.op() == Op::Neg) return a.node().lhs;
  return detail::make(Op::Neg, a);
}

inline Expr add(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return Expr(a.number() + b.number());
  if (a.is_number(0.0)) return b;
  if (b.is_number(0.0)) return a;
  return detail::make(Op::Add, a, b);
}

inline Expr sub(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return Expr(a.number() - b.number());
  if (b.is_number(0.0)) return a;
  if (a.is_number(0.0)) return neg(b);
  return detail::make(Op::Sub, a, b);
}

inline Expr mul(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number()) return Expr(a.number() * b.number());
  if (a.is_number(0.0) || b.is_number(0.0)) return Expr(0.0);
  if (a.is_number(1.0)) return b;
  if (b.is_number(1.0)) return a;
  if (a.is_number(-1.0)) return neg(b);
  if (b.is_number(-1.0)) return neg(a);
  return detail::make(Op::Mul, a, b);
}

inline Expr div(const Expr& a, const Expr& b) {
  if (a.is_number() && b.is_number() && b.number() != 0.0) return Expr(a.number() / b.number());
  if (b.is_number(1.0)) return a;
  if (a.is_number(0.0) && !b.is_number(0.0)) return Expr(0.0);
  return detail::make(Op::Div, a, b);
}

inline Expr pow(const Expr& a, int e) {
  if (e == 0) return Expr(1.0);
  if (e == 1) return a;
  if (a.is_number() && !(a.number() == 0.0 && e < 0)) return Expr(detail::ipow(a.number(), e));
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->lhs = a;
  n->exponent = e;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

inline Expr apply(Fn f, const Expr& a) {
  if (a.is_number()) {
    const double x = a.number();
    switch (f) {
      case Fn::Sin: if (x == 0.0) return Expr(0.0); break;
      case Fn::Cos: if (x == 0.0) return Expr(1.0); break;
      case Fn::Tan: if (x == 0.0) return Expr(0.0); break;
      case Fn::Exp: if (x == 0.0) return Expr(1.0); break;
      case Fn::Log: if (x == 1.0) return Expr(0.0); break;
      case Fn::Sqrt: if (x == 0.0 || x == 1.0) return Expr(x); break;
    }
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Func;
  n->fn = f;
  n->lhs = a;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

inline Expr sin(const Expr& a) { return apply(Fn::Sin, a); }
inline Expr cos(const Expr& a) { return apply(Fn::Cos, a); }
inline Expr tan(const Expr& a) { return apply(Fn::Tan, a); }
inline Expr exp(const Expr& a) { return apply(Fn::Exp, a); }
inline Expr log(const Expr& a) { return apply(Fn::Log, a); }
inline Expr sqrt(const Expr& a) { return apply(Fn::Sqrt, a); }

inline Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
inline Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
inline Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
inline Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
inline Expr operator-(const Expr& a) { return neg(a); }

// ---------------------------------------------------------------------------
// printing

namespace detail {

inline int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    case Op::Number: return e.number() < 0.0 ? 3 : 5;
    default: return 5;
  }
}

inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // prefer the shortest representation that round-trips
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

inline std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

}  // namespace detail

/// Prints with the minimum parentheses that make parse(to_string(e)) reproduce e.
inline std::string to_string(const Expr& e) {
  using detail::precedence;
  using detail::wrap;
  const Node& n = e.node();
  switch (n.op) {
    case Op::Number: return detail::format_number(n.value);
    case Op::Var: return n.name;
    case Op::Add:
      return to_string(n.lhs) + " + " + wrap(to_string(n.rhs), precedence(n.rhs) <= 1);
    case Op::Sub:
      return to_string(n.lhs) + " - " + wrap(to_string(n.rhs), precedence(n.rhs) <= 1);
    case Op::Mul:
      return wrap(to_string(n.lhs), precedence(n.lhs) < 2) + "*" +
             wrap(to_string(n.rhs), precedence(n.rhs) <= 2);
    case Op::Div:
      return wrap(to_string(n.lhs), precedence(n.lhs) < 2) + "/" +
             wrap(to_string(n.rhs), precedence(n.rhs) <= 2);
    case Op::Neg:
      return "-" + wrap(to_string(n.lhs), precedence(n.lhs) < 3 || n.lhs.is_number());
    case Op::Pow: {
      std::string ex = std::to_string(n.exponent);
      if (n.exponent < 0) ex = "(" + ex + ")";
      return wrap(to_string(n.lhs), precedence(n.lhs) < 5) + "^" + ex;
    }
    case Op::Func: return std::string(fn_name(n.fn)) + "(" + to_string(n.lhs) + ")";
  }
  return "?";
}

/// Exact structural equality (numbers compared bitwise-equal as doubles).
inline bool equal(const Expr& a, const Expr& b) {
  const Node& x = a.node();
  const Node& y = b.node();
  if (&x == &y) return true;
  if (x.op != y.op) return false;
  switch (x.op) {
    case Op::Number: return x.value == y.value;
    case Op::Var: return x.var == y.var && x.name == y.name;
    case Op::Neg: return equal(x.lhs, y.lhs);
    case Op::Func: return x.fn == y.fn && equal(x.lhs, y.lhs);
    case Op::Pow: return x.exponent == y.exponent && equal(x.lhs, y.lhs);
    default: return equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
  }
}

/// Largest variable index referenced, or -1 for a constant expression.
inline int max_variable(const Expr& e) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Number: return -1;
    case Op::Var: return n.var;
    case Op::Neg:
    case Op::Func:
    case Op::Pow: return max_variable(n.lhs);
    default: return std::max(max_variable(n.lhs), max_variable(n.rhs));
  }
}

// ---------------------------------------------------------------------------
// calculus

/// Exact partial derivative with respect to coordinate `v`.
inline Expr differentiate(const Expr& e, int v) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Number: return Expr(0.0);
    case Op::Var: return Expr(n.var == v ? 1.0 : 0.0);
    case Op::Add: return differentiate(n.lhs, v) + differentiate(n.rhs, v);
    case Op::Sub: return differentiate(n.lhs, v) - differentiate(n.rhs, v);
    case Op::Neg: return -differentiate(n.lhs, v);
    case Op::Mul:
      return differentiate(n.lhs, v) * n.rhs + n.lhs * differentiate(n.rhs, v);
    case Op::Div: {
      const Expr da = differentiate(n.lhs, v);
      const Expr db = differentiate(n.rhs, v);
      if (db.is_number(0.0)) return da / n.rhs;
      return da / n.rhs - n.lhs * db / pow(n.rhs, 2);
    }
    case Op::Pow:
      return Expr(static_cast<double>(n.exponent)) * pow(n.lhs, n.exponent - 1) *
             differentiate(n.lhs, v);
    case Op::Func: {
      const Expr du = differentiate(n.lhs, v);
      if (du.is_number(0.0)) return Expr(0.0);
      const Expr& u = n.lhs;
      switch (n.fn) {
        case Fn::Sin: return cos(u) * du;
        case Fn::Cos: return -(sin(u) * du);
        case Fn::Tan: return du / pow(cos(u), 2);
        case Fn::Exp: return e * du;
        case Fn::Log: return du / u;
        case Fn::Sqrt: return du / (Expr(2.0) * e);
      }
    }
  }
  return Expr(0.0);
}

/// IEEE evaluation at a point given as one value per chart coordinate.
inline double evaluate(const Expr& e, std::span<const double> p) {
  const Node& n = e.node();
  switch (n.op) {
    case Op::Number: return n.value;
    case Op::Var:
      if (n.var < 0 || static_cast<std::size_t>(n.var) >= p.size())
        throw std::out_of_range("variable '" + n.name + "' has no value at this point");
      return p[static_cast<std::size_t>(n.var)];
    case Op::Add: return evaluate(n.lhs, p) + evaluate(n.rhs, p);
    case Op::Sub: return evaluate(n.lhs, p) - evaluate(n.rhs, p);
    case Op::Mul: return evaluate(n.lhs, p) * evaluate(n.rhs, p);
    case Op::Neg: return -evaluate(n.lhs, p);
    case Op::Div: {
      const double d = evaluate(n.rhs, p);
      if (d == 0.0) throw DomainError("division by zero", to_string(e));
      return evaluate(n.lhs, p) / d;
    }
    case Op::Pow: {
      const double b = evaluate(n.lhs, p);
      if (b == 0.0 && n.exponent < 0) throw DomainError("division by zero", to_string(e));
      return detail::ipow(b, n.exponent);
    }
    case Op::Func: {
      const double x = evaluate(n.lhs, p);
      switch (n.fn) {
        case Fn::Sin: return std::sin(x);
        case Fn::Cos: return std::cos(x);
        case Fn::Tan: {
          if (std::cos(x) == 0.0) throw DomainError("tangent pole", to_string(e));
          return std::tan(x);
        }
        case Fn::Exp: return std::exp(x);
        case Fn::Log:
          if (!(x > 0.0)) throw DomainError("log of nonpositive value", to_string(e));
          return std::log(x);
        case Fn::Sqrt:
          if (x < 0.0) throw DomainError("sqrt of negative value", to_string(e));
          return std::sqrt(x);
      }
    }
  }
  return 0.0;
}

}  // namespace conecurv::expr
