#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "../tensor/tensor.hpp"

namespace conecurv {

/// Both sides of an identity at one point, flattened over all free indices.
struct Sides {
  std::vector<double> lhs, rhs;

  Sides() = default;
  Sides(const Tensor<double>& l, const Tensor<double>& r) { append(l, r); }

  Sides& append(const Tensor<double>& l, const Tensor<double>& r) {
    if (l.size() != r.size()) throw std::logic_error("identity sides have different sizes");
    lhs.insert(lhs.end(), l.data().begin(), l.data().end());
    rhs.insert(rhs.end(), r.data().begin(), r.data().end());
    return *this;
  }
  Sides& append(double l, double r) {
    lhs.push_back(l);
    rhs.push_back(r);
    return *this;
  }
};

/// max |L - R| / (1 + max(|L|, |R|)), the maxima running over all free indices.
inline double residual(const Sides& s) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < s.lhs.size(); ++i) {
    const double d = std::abs(s.lhs[i] - s.rhs[i]);
    if (std::isnan(d)) return std::numeric_limits<double>::infinity();
    diff = std::max(diff, d);
    scale = std::max({scale, std::abs(s.lhs[i]), std::abs(s.rhs[i])});
  }
  return diff / (1.0 + scale);
}

inline double residual(const Tensor<double>& l, const Tensor<double>& r) { return residual(Sides(l, r)); }

}  // namespace conecurv
