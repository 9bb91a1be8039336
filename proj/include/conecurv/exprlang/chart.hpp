#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "expr.hpp"

namespace conecurv {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double center() const { return 0.5 * (lo + hi); }
};

inline bool is_function_name(const std::string& s) {
  static const char* names[] = {"sin", "cos", "tan", "exp", "log", "sqrt"};
  return std::any_of(std::begin(names), std::end(names), [&](const char* n) { return s == n; });
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

/// Coordinate chart: ordered names, a closed sampling box and degenerate loci to skip.
class Chart {
 public:
  Chart() = default;

  Chart(std::vector<std::string> names, std::vector<Interval> domain,
        std::vector<expr::Expr> excluded = {})
      : names_(std::move(names)), domain_(std::move(domain)), excluded_(std::move(excluded)) {
    if (names_.empty()) throw std::invalid_argument("chart needs at least one coordinate");
    if (domain_.size() != names_.size())
      throw std::invalid_argument("chart has " + std::to_string(names_.size()) + " coordinates but " +
                                  std::to_string(domain_.size()) + " domain intervals");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_identifier(names_[i]) || is_function_name(names_[i]))
        throw std::invalid_argument("invalid coordinate name '" + names_[i] + "'");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[j] == names_[i]) throw std::invalid_argument("duplicate coordinate '" + names_[i] + "'");
      const Interval& iv = domain_[i];
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi)
        throw std::invalid_argument("empty or non-finite interval for '" + names_[i] + "'");
    }
    for (const auto& e : excluded_)
      if (expr::max_variable(e) >= dim())
        throw std::invalid_argument("exclusion predicate refers to a coordinate outside the chart");
  }

  int dim() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& domain() const { return domain_; }
  const std::vector<expr::Expr>& excluded() const { return excluded_; }

  std::optional<int> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
  }

  expr::Expr variable(int i) const { return expr::Expr::variable(i, names_.at(static_cast<std::size_t>(i))); }

  std::vector<double> center() const {
    std::vector<double> c;
    for (const auto& iv : domain_) c.push_back(iv.center());
    return c;
  }

  bool contains(std::span<const double> p) const {
    if (p.size() != names_.size()) return false;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] < domain_[i].lo || p[i] > domain_[i].hi) return false;
    return true;
  }

  /// True when some predicate vanishes (|value| < eps) or cannot be evaluated at p.
  bool is_excluded(std::span<const double> p, double eps = 1e-6) const {
    for (const auto& e : excluded_) {
      try {
        if (std::abs(expr::evaluate(e, p)) < eps) return true;
      } catch (const expr::DomainError&) {
        return true;
      }
    }
    return false;
  }

  /// Same chart with one more coordinate appended (its index is the old dim).
  Chart extended(const std::string& name, Interval iv) const {
    auto names = names_;
    auto dom = domain_;
    names.push_back(name);
    dom.push_back(iv);
    return Chart(std::move(names), std::move(dom), excluded_);
  }

 private:
  std::vector<std::string> names_;
  std::vector<Interval> domain_;
  std::vector<expr::Expr> excluded_;
};

}  // namespace conecurv
