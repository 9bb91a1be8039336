#pragma once

#include <climits>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "../exprlang/expr.hpp"

namespace conecurv {

/// Monomial bookkeeping for truncated multivariate Taylor series in `dim` variables.
/// Monomials are graded by total degree so a jet of order k uses a prefix of the table.
class JetSpace {
 public:
  struct Product {
    int a, b, out;
  };
  struct Shift {
    int src, dst;
    double factor;
  };

  static const JetSpace& get(int dim, int order) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{dim, order}];
    if (!slot) slot.reset(new JetSpace(dim, order));
    return *slot;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(mono_.size()); }
  /// Number of monomials of degree <= k.
  int size(int k) const { return count_upto_[static_cast<std::size_t>(clamp(k))]; }
  const std::vector<int>& exponents(int m) const { return mono_[static_cast<std::size_t>(m)]; }
  int degree(int m) const { return degree_[static_cast<std::size_t>(m)]; }
  /// alpha! for monomial alpha.
  double factorial(int m) const { return fact_[static_cast<std::size_t>(m)]; }
  /// Index of m + e_i, or -1 when that exceeds the space order.
  int raise(int m, int i) const { return raise_[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]; }
  int unit(int i) const { return raise(0, i); }

  /// Product terms whose output degree is <= k.
  std::span<const Product> products(int k) const {
    return {products_.data(), static_cast<std::size_t>(products_upto_[static_cast<std::size_t>(clamp(k))])};
  }
  /// d/dx_i terms landing in degree <= k.
  std::span<const Shift> shifts(int i, int k) const {
    const auto& v = shifts_[static_cast<std::size_t>(i)];
    return {v.data(), static_cast<std::size_t>(shifts_upto_[static_cast<std::size_t>(i)][static_cast<std::size_t>(clamp(k))])};
  }

 private:
  JetSpace(int dim, int order) : dim_(dim), order_(order) {
    if (dim < 1 || order < 0) throw std::invalid_argument("bad jet space");
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    for (int deg = 0; deg <= order; ++deg) {
      enumerate(cur, 0, deg);
      count_upto_.push_back(static_cast<int>(mono_.size()));
    }
    for (const auto& m : mono_) {
      int d = 0;
      double f = 1.0;
      for (int e : m) {
        d += e;
        for (int j = 2; j <= e; ++j) f *= j;
      }
      degree_.push_back(d);
      fact_.push_back(f);
    }
    raise_.assign(mono_.size(), std::vector<int>(static_cast<std::size_t>(dim), -1));
    for (std::size_t m = 0; m < mono_.size(); ++m)
      for (int i = 0; i < dim; ++i) {
        auto e = mono_[m];
        ++e[static_cast<std::size_t>(i)];
        raise_[m][static_cast<std::size_t>(i)] = find(e);
      }
    for (int deg = 0; deg <= order; ++deg) {
      for (std::size_t a = 0; a < mono_.size(); ++a)
        for (std::size_t b = 0; b < mono_.size(); ++b) {
          if (degree_[a] + degree_[b] != deg) continue;
          std::vector<int> e(static_cast<std::size_t>(dim));
          for (int i = 0; i < dim; ++i)
            e[static_cast<std::size_t>(i)] = mono_[a][static_cast<std::size_t>(i)] + mono_[b][static_cast<std::size_t>(i)];
          products_.push_back({static_cast<int>(a), static_cast<int>(b), find(e)});
        }
      products_upto_.push_back(static_cast<int>(products_.size()));
    }
    shifts_.resize(static_cast<std::size_t>(dim));
    shifts_upto_.resize(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      for (int deg = 0; deg <= order; ++deg) {
        for (std::size_t m = 0; m < mono_.size(); ++m) {
          if (degree_[m] != deg) continue;
          const int up = raise_[m][static_cast<std::size_t>(i)];
          if (up < 0) continue;
          const double factor = mono_[m][static_cast<std::size_t>(i)] + 1;
          shifts_[static_cast<std::size_t>(i)].push_back({up, static_cast<int>(m), factor});
        }
        shifts_upto_[static_cast<std::size_t>(i)].push_back(static_cast<int>(shifts_[static_cast<std::size_t>(i)].size()));
      }
    }
  }

  int clamp(int k) const { return k < 0 ? 0 : (k > order_ ? order_ : k); }

  void enumerate(std::vector<int>& cur, int var, int remaining) {
    if (var == dim_ - 1) {
      cur[static_cast<std::size_t>(var)] = remaining;
      mono_.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[static_cast<std::size_t>(var)] = e;
      enumerate(cur, var + 1, remaining - e);
    }
    cur[static_cast<std::size_t>(var)] = 0;
  }

  int find(const std::vector<int>& e) const {
    for (std::size_t m = 0; m < mono_.size(); ++m)
      if (mono_[m] == e) return static_cast<int>(m);
    return -1;
  }

  int dim_, order_;
  std::vector<std::vector<int>> mono_;
  std::vector<int> degree_;
  std::vector<double> fact_;
  std::vector<int> count_upto_;
  std::vector<std::vector<int>> raise_;
  std::vector<Product> products_;
  std::vector<int> products_upto_;
  std::vector<std::vector<Shift>> shifts_;
  std::vector<std::vector<int>> shifts_upto_;
};

/// Truncated Taylor expansion of a scalar field about a point. Coefficient of monomial
/// alpha is (d^alpha f)/alpha!. A jet without a space is an exact constant.
class Jet {
 public:
  static constexpr int kExact = INT_MAX;

  Jet(double v = 0.0) : c_{v} {}  // NOLINT(google-explicit-constructor)

  static Jet constant(const JetSpace& s, int order, double v) {
    Jet j;
    j.space_ = &s;
    j.order_ = order;
    j.c_.assign(static_cast<std::size_t>(s.size(order)), 0.0);
    j.c_[0] = v;
    return j;
  }

  static Jet variable(const JetSpace& s, int order, int i, double v) {
    Jet j = constant(s, order, v);
    if (order >= 1) j.c_[static_cast<std::size_t>(s.unit(i))] = 1.0;
    return j;
  }

  /// Builds a jet from coefficients already divided by alpha!.
  static Jet from_coefficients(const JetSpace& s, int order, std::vector<double> c) {
    if (static_cast<int>(c.size()) != s.size(order)) throw std::invalid_argument("coefficient count mismatch");
    Jet j;
    j.space_ = &s;
    j.order_ = order;
    j.c_ = std::move(c);
    return j;
  }

  double value() const { return c_[0]; }
  int order() const { return order_; }
  const JetSpace* space() const { return space_; }
  bool exact() const { return space_ == nullptr; }
  const std::vector<double>& coefficients() const { return c_; }

  /// Exact partial derivative d/dx_i; one order lower.
  Jet derivative(int i) const {
    if (exact()) return Jet(0.0);
    if (order_ == 0) throw std::domain_error("derivative of an order-0 jet");
    Jet r = constant(*space_, order_ - 1, 0.0);
    for (const auto& s : space_->shifts(i, order_ - 1))
      r.c_[static_cast<std::size_t>(s.dst)] = s.factor * c_[static_cast<std::size_t>(s.src)];
    return r;
  }

  /// Value of the partial derivative d^alpha f at the expansion point.
  double partial(int monomial) const {
    if (exact()) return monomial == 0 ? c_[0] : 0.0;
    if (monomial >= static_cast<int>(c_.size())) throw std::out_of_range("jet order too low");
    return c_[static_cast<std::size_t>(monomial)] * space_->factorial(monomial);
  }

  Jet truncated(int k) const {
    if (exact() || k >= order_) return *this;
    Jet r = *this;
    r.order_ = k;
    r.c_.resize(static_cast<std::size_t>(space_->size(k)));
    return r;
  }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator-(const Jet& a) {
    Jet r = a;
    for (double& x : r.c_) x = -x;
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) { return combine(a, b, 1.0); }
  friend Jet operator-(const Jet& a, const Jet& b) { return combine(a, b, -1.0); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    if (a.exact()) return b.scaled(a.c_[0]);
    if (b.exact()) return a.scaled(b.c_[0]);
    check_same(a, b);
    const int k = std::min(a.order_, b.order_);
    Jet r = constant(*a.space_, k, 0.0);
    for (const auto& p : a.space_->products(k))
      r.c_[static_cast<std::size_t>(p.out)] += a.c_[static_cast<std::size_t>(p.a)] * b.c_[static_cast<std::size_t>(p.b)];
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    if (b.exact()) {
      if (b.c_[0] == 0.0) throw expr::DomainError("division by zero", "jet");
      return a.scaled(1.0 / b.c_[0]);
    }
    return a * reciprocal(b);
  }

  Jet scaled(double s) const {
    Jet r = *this;
    for (double& x : r.c_) x *= s;
    return r;
  }

  /// f(u0 + d) = sum_m t[m] d^m with t[m] = f^(m)(u0)/m!, truncated at the jet order.
  Jet compose(const std::vector<double>& t) const {
    if (exact()) return Jet(t[0]);
    Jet delta = *this;
    delta.c_[0] = 0.0;
    const int k = std::min<int>(order_, static_cast<int>(t.size()) - 1);
    Jet r = constant(*space_, order_, t[static_cast<std::size_t>(k)]);
    for (int m = k - 1; m >= 0; --m) {
      r = r * delta;
      r.c_[0] += t[static_cast<std::size_t>(m)];
    }
    return r;
  }

  int taylor_terms() const { return exact() ? 1 : order_ + 1; }

  static Jet reciprocal(const Jet& u) { return real_power(u, -1.0, "division by zero"); }

  static Jet real_power(const Jet& u, double p, const char* what) {
    const double u0 = u.value();
    if (u0 == 0.0 || (u0 < 0.0 && p != std::floor(p))) throw expr::DomainError(what, "jet");
    std::vector<double> t(static_cast<std::size_t>(u.taylor_terms()));
    double binom = 1.0;
    for (std::size_t m = 0; m < t.size(); ++m) {
      t[m] = binom * std::pow(u0, p - static_cast<double>(m));
      binom *= (p - static_cast<double>(m)) / static_cast<double>(m + 1);
    }
    return u.compose(t);
  }

 private:
  static void check_same(const Jet& a, const Jet& b) {
    if (a.space_ != b.space_) throw std::invalid_argument("jets from different spaces");
  }

  static Jet combine(const Jet& a, const Jet& b, double sign) {
    if (a.exact() && b.exact()) return Jet(a.c_[0] + sign * b.c_[0]);
    if (b.exact()) {
      Jet r = a;
      r.c_[0] += sign * b.c_[0];
      return r;
    }
    if (a.exact()) {
      Jet r = b.scaled(sign);
      r.c_[0] += a.c_[0];
      return r;
    }
    check_same(a, b);
    const int k = std::min(a.order_, b.order_);
    Jet r = constant(*a.space_, k, 0.0);
    for (std::size_t m = 0; m < r.c_.size(); ++m) r.c_[m] = a.c_[m] + sign * b.c_[m];
    return r;
  }

  const JetSpace* space_ = nullptr;
  int order_ = kExact;
  std::vector<double> c_;
};

inline Jet operator+(const Jet& a, double b) { return a + Jet(b); }
inline Jet operator+(double a, const Jet& b) { return Jet(a) + b; }
inline Jet operator-(const Jet& a, double b) { return a - Jet(b); }
inline Jet operator-(double a, const Jet& b) { return Jet(a) - b; }
inline Jet operator*(const Jet& a, double b) { return a.scaled(b); }
inline Jet operator*(double a, const Jet& b) { return b.scaled(a); }
inline Jet operator/(const Jet& a, double b) { return a / Jet(b); }

inline double value_of(double x) { return x; }
inline double value_of(const Jet& j) { return j.value(); }

namespace jetfn {

inline Jet exp(const Jet& u) {
  std::vector<double> t(static_cast<std::size_t>(u.taylor_terms()));
  const double e = std::exp(u.value());
  double f = 1.0;
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (m > 0) f *= static_cast<double>(m);
    t[m] = e / f;
  }
  return u.compose(t);
}

inline Jet sin_shift(const Jet& u, double phase) {
  std::vector<double> t(static_cast<std::size_t>(u.taylor_terms()));
  double f = 1.0;
  for (std::size_t m = 0; m < t.size(); ++m) {
    if (m > 0) f *= static_cast<double>(m);
    // sin^(m)(x) = sin(x + m pi/2)
    const int q = static_cast<int>(m) % 4;
    const double s = std::sin(u.value() + phase), c = std::cos(u.value() + phase);
    const double d = q == 0 ? s : q == 1 ? c : q == 2 ? -s : -c;
    t[m] = d / f;
  }
  return u.compose(t);
}

inline Jet sin(const Jet& u) { return sin_shift(u, 0.0); }
inline Jet cos(const Jet& u) { return sin_shift(u, std::numbers::pi / 2); }

inline Jet log(const Jet& u) {
  const double u0 = u.value();
  if (!(u0 > 0.0)) throw expr::DomainError("log of nonpositive value", "jet");
  std::vector<double> t(static_cast<std::size_t>(u.taylor_terms()));
  t[0] = std::log(u0);
  for (std::size_t m = 1; m < t.size(); ++m)
    t[m] = ((m % 2 == 1) ? 1.0 : -1.0) / (static_cast<double>(m) * std::pow(u0, static_cast<double>(m)));
  return u.compose(t);
}

inline Jet sqrt(const Jet& u) {
  if (u.exact()) {
    if (u.value() < 0.0) throw expr::DomainError("sqrt of negative value", "jet");
    return Jet(std::sqrt(u.value()));
  }
  if (!(u.value() > 0.0)) throw expr::DomainError("sqrt of nonpositive value", "jet");
  return Jet::real_power(u, 0.5, "sqrt of nonpositive value");
}

inline Jet ipow(const Jet& u, int e) {
  if (e == 0) return Jet(1.0);
  if (e < 0) return Jet::reciprocal(ipow(u, -e));
  Jet r(1.0), b = u;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

inline Jet tan(const Jet& u) {
  const Jet c = cos(u);
  if (c.value() == 0.0) throw expr::DomainError("tangent pole", "jet");
  return sin(u) / c;
}

}  // namespace jetfn

/// Runs the expression tree directly in jet arithmetic (automatic differentiation).
inline Jet evaluate_jet(const expr::Expr& e, std::span<const Jet> vars) {
  using expr::Op;
  const expr::Node& n = e.node();
  auto fail = [&](const char* what) { throw expr::DomainError(what, expr::to_string(e)); };
  switch (n.op) {
    case Op::Number: return Jet(n.value);
    case Op::Var:
      if (n.var < 0 || static_cast<std::size_t>(n.var) >= vars.size())
        throw std::out_of_range("variable '" + n.name + "' has no value at this point");
      return vars[static_cast<std::size_t>(n.var)];
    case Op::Add: return evaluate_jet(n.lhs, vars) + evaluate_jet(n.rhs, vars);
    case Op::Sub: return evaluate_jet(n.lhs, vars) - evaluate_jet(n.rhs, vars);
    case Op::Mul: return evaluate_jet(n.lhs, vars) * evaluate_jet(n.rhs, vars);
    case Op::Neg: return -evaluate_jet(n.lhs, vars);
    case Op::Div: {
      const Jet d = evaluate_jet(n.rhs, vars);
      if (d.value() == 0.0) fail("division by zero");
      return evaluate_jet(n.lhs, vars) / d;
    }
    case Op::Pow: {
      const Jet b = evaluate_jet(n.lhs, vars);
      if (b.value() == 0.0 && n.exponent < 0) fail("division by zero");
      return jetfn::ipow(b, n.exponent);
    }
    case Op::Func: {
      const Jet u = evaluate_jet(n.lhs, vars);
      try {
        switch (n.fn) {
          case expr::Fn::Sin: return jetfn::sin(u);
          case expr::Fn::Cos: return jetfn::cos(u);
          case expr::Fn::Tan: return jetfn::tan(u);
          case expr::Fn::Exp: return jetfn::exp(u);
          case expr::Fn::Log: return jetfn::log(u);
          case expr::Fn::Sqrt: return jetfn::sqrt(u);
        }
      } catch (const expr::DomainError& err) {
        fail(err.what());
      }
    }
  }
  return Jet(0.0);
}

/// Independent variables x_i + d_i at point p, as order-`order` jets.
inline std::vector<Jet> coordinate_jets(const JetSpace& s, int order, std::span<const double> p) {
  std::vector<Jet> v;
  for (int i = 0; i < s.dim(); ++i) v.push_back(Jet::variable(s, order, i, p[static_cast<std::size_t>(i)]));
  return v;
}

/// Scalar field with its symbolic partial derivatives precomputed up to a fixed order.
/// Evaluating at a point gives the Taylor jet with no truncation error.
class TaylorModel {
 public:
  TaylorModel() = default;
  TaylorModel(const expr::Expr& e, int dim, int order) : space_(&JetSpace::get(dim, order)) {
    partials_.reserve(static_cast<std::size_t>(space_->size()));
    partials_.push_back(e);
    for (int m = 1; m < space_->size(); ++m) {
      // first variable with a positive exponent; the parent has that exponent lowered
      const auto& ex = space_->exponents(m);
      int i = 0;
      while (ex[static_cast<std::size_t>(i)] == 0) ++i;
      int parent = -1;
      for (int q = 0; q < m; ++q)
        if (space_->raise(q, i) == m) {
          parent = q;
          break;
        }
      partials_.push_back(expr::differentiate(partials_[static_cast<std::size_t>(parent)], i));
    }
    constant_ = true;
    for (int m = 1; m < space_->size(); ++m)
      if (!partials_[static_cast<std::size_t>(m)].is_number(0.0)) constant_ = false;
  }

  const expr::Expr& expression() const { return partials_.front(); }
  const expr::Expr& partial(int monomial) const { return partials_.at(static_cast<std::size_t>(monomial)); }
  bool is_constant() const { return constant_; }

  Jet evaluate(std::span<const double> p, int order) const {
    if (order > space_->order()) throw std::invalid_argument("jet order exceeds the model order");
    const int n = space_->size(order);
    std::vector<double> c(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m)
      c[static_cast<std::size_t>(m)] = expr::evaluate(partials_[static_cast<std::size_t>(m)], p) / space_->factorial(m);
    return Jet::from_coefficients(*space_, order, std::move(c));
  }

 private:
  const JetSpace* space_ = nullptr;
  std::vector<expr::Expr> partials_;
  bool constant_ = true;
};

}  // namespace conecurv
