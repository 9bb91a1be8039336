#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "../numeric/jet.hpp"
#include "../tensor/tensor.hpp"
#include "field.hpp"

namespace conecurv {

/// Inverse of a symmetric matrix of jets by Gauss-Jordan with partial pivoting.
/// Returns slots (Up, Up).
template <class T>
Tensor<T> inverse_metric(const Tensor<T>& g) {
  const int d = g.dim();
  std::vector<std::vector<T>> a(static_cast<std::size_t>(d), std::vector<T>(static_cast<std::size_t>(2 * d), T(0.0)));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a[i][j] = g(i, j);
    a[i][d + i] = T(1.0);
  }
  for (int c = 0; c < d; ++c) {
    int piv = c;
    for (int r = c + 1; r < d; ++r)
      if (std::abs(value_of(a[r][c])) > std::abs(value_of(a[piv][c]))) piv = r;
    if (std::abs(value_of(a[piv][c])) < 1e-300) throw GeometryError("singular metric");
    std::swap(a[c], a[piv]);
    const T inv = T(1.0) / a[c][c];
    for (int j = 0; j < 2 * d; ++j) a[c][j] = a[c][j] * inv;
    for (int r = 0; r < d; ++r) {
      if (r == c) continue;
      const T f = a[r][c];
      if (value_of(f) == 0.0 && std::is_same_v<T, double>) continue;
      for (int j = 0; j < 2 * d; ++j) a[r][j] = a[r][j] - f * a[c][j];
    }
  }
  Tensor<T> inv(d, {Slot::Up, Slot::Up});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) inv(i, j) = a[i][d + j];
  return inv;
}

/// Componentwise partial derivatives; the new Down slot comes first: (dT)(m, ...) = d_m T(...).
inline Tensor<Jet> partials(const Tensor<Jet>& t) {
  std::vector<Slot> slots{Slot::Down};
  slots.insert(slots.end(), t.slots().begin(), t.slots().end());
  Tensor<Jet> r(t.dim(), slots);
  const std::size_t n = t.size();
  for (int m = 0; m < t.dim(); ++m)
    for (std::size_t f = 0; f < n; ++f) r.data()[static_cast<std::size_t>(m) * n + f] = t.data()[f].derivative(m);
  return r;
}

/// Gamma^k_ij, stored as (k, i, j) with slots (Up, Down, Down).
inline Tensor<Jet> christoffel(const Tensor<Jet>& g, const Tensor<Jet>& ginv) {
  const int d = g.dim();
  const Tensor<Jet> dg = partials(g);  // dg(m, i, j) = d_m g_ij
  Tensor<Jet> first(d, {Slot::Down, Slot::Down, Slot::Down});  // Gamma_{lij}, lowered on l
  for (int l = 0; l < d; ++l)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) first(l, i, j) = 0.5 * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
  return einsum("kl,lij->kij", ginv, first);
}

/// R_{ijk}^l = d_i Gamma^l_jk - d_j Gamma^l_ik + Gamma^a_jk Gamma^l_ia - Gamma^a_ik Gamma^l_ja,
/// stored as (i, j, k, l) with slots (Down, Down, Down, Up).
inline Tensor<Jet> riemann_mixed(const Tensor<Jet>& gamma) {
  const int d = gamma.dim();
  const Tensor<Jet> dG = partials(gamma);  // dG(m, l, j, k)
  const Tensor<Jet> quad = einsum("ajk,lia->ijkl", gamma, gamma);
  Tensor<Jet> r(d, {Slot::Down, Slot::Down, Slot::Down, Slot::Up});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          r(i, j, k, l) = dG(i, l, j, k) - dG(j, l, i, k) + quad(i, j, k, l) - quad(j, i, k, l);
  return r;
}

template <class T>
struct CurvatureBundle {
  Tensor<T> g, ginv;
  Tensor<T> gamma;  // (k, i, j)
  Tensor<T> rm;     // R_{ijk}^l
  Tensor<T> r;      // R_{ijkl} = g_dl R_{ijk}^d
  Tensor<T> rho;    // rho_jk = R_{ajk}^a
  T tau = T(0.0);
};

inline CurvatureBundle<Jet> curvature(const Tensor<Jet>& g) {
  MetricField::check_positive_definite(values(g));
  CurvatureBundle<Jet> b;
  b.g = g;
  b.ginv = inverse_metric(g);
  b.gamma = christoffel(g, b.ginv);
  b.rm = riemann_mixed(b.gamma);
  b.r = einsum("ijkd,dl->ijkl", b.rm, b.g);
  b.rho = einsum("ajka->jk", b.rm);
  b.tau = einsum("jk,jk->", b.ginv, b.rho).value();
  return b;
}

inline CurvatureBundle<double> values(const CurvatureBundle<Jet>& b) {
  CurvatureBundle<double> v;
  v.g = values(b.g);
  v.ginv = values(b.ginv);
  v.gamma = values(b.gamma);
  v.rm = values(b.rm);
  v.r = values(b.r);
  v.rho = values(b.rho);
  v.tau = b.tau.value();
  return v;
}

/// Covariant derivative with the derivative slot first: (nabla T)(m, ...) = nabla_m T(...).
inline Tensor<Jet> covariant_derivative(const Tensor<Jet>& t, const Tensor<Jet>& gamma) {
  const int d = t.dim();
  Tensor<Jet> r = partials(t);
  const std::size_t rank = t.slots().size();
  std::vector<int> idx(rank + 1);
  for (std::size_t f = 0; f < r.size(); ++f) {
    idx = r.index_of(f);
    const int m = idx[0];
    std::vector<int> sub(idx.begin() + 1, idx.end());
    Jet acc = r.data()[f];
    for (std::size_t s = 0; s < rank; ++s) {
      const int orig = sub[s];
      for (int a = 0; a < d; ++a) {
        sub[s] = a;
        if (t.slots()[s] == Slot::Up)
          acc = acc + gamma(orig, m, a) * t.at(sub);
        else
          acc = acc - gamma(a, m, orig) * t.at(sub);
      }
      sub[s] = orig;
    }
    r.data()[f] = acc;
  }
  return r;
}

/// Lie derivative of t along the vector field x (slots {Up}); metric free.
inline Tensor<Jet> lie_derivative(const Tensor<Jet>& x, const Tensor<Jet>& t) {
  if (x.rank() != 1 || x.slots()[0] != Slot::Up) throw std::invalid_argument("Lie derivative needs a vector field");
  const int d = t.dim();
  const Tensor<Jet> dt = partials(t);  // dt(a, ...)
  const Tensor<Jet> dx = partials(x);  // dx(a, i) = d_a X^i
  Tensor<Jet> r(d, t.slots());
  const std::size_t rank = t.slots().size();
  for (std::size_t f = 0; f < r.size(); ++f) {
    std::vector<int> sub = r.index_of(f);
    Jet acc(0.0);
    for (int a = 0; a < d; ++a) acc = acc + x(a) * dt.data()[static_cast<std::size_t>(a) * t.size() + f];
    for (std::size_t s = 0; s < rank; ++s) {
      const int orig = sub[s];
      for (int a = 0; a < d; ++a) {
        sub[s] = a;
        if (t.slots()[s] == Slot::Up)
          acc = acc - t.at(sub) * dx(a, orig);
        else
          acc = acc + t.at(sub) * dx(orig, a);
      }
      sub[s] = orig;
    }
    r.data()[f] = acc;
  }
  return r;
}

namespace detail {

inline std::string letters(std::size_t n, char skip = 0) {
  std::string s;
  for (char c = 'a'; s.size() < n; ++c)
    if (c != skip) s += c;
  return s;
}

}  // namespace detail

/// Lowers slot `s` (which must be Up) with g.
template <class T>
Tensor<T> lower(const Tensor<T>& t, std::size_t s, const Tensor<T>& g) {
  if (t.slots().at(s) != Slot::Up) throw std::invalid_argument("lower: slot is already covariant");
  std::string in = detail::letters(t.slots().size(), 'z');
  std::string out = in;
  const char c = in[s];
  out[s] = 'z';
  return einsum(in + "," + std::string{c, 'z'} + "->" + out, t, g);
}

/// Raises slot `s` (which must be Down) with the inverse metric.
template <class T>
Tensor<T> raise(const Tensor<T>& t, std::size_t s, const Tensor<T>& ginv) {
  if (t.slots().at(s) != Slot::Down) throw std::invalid_argument("raise: slot is already contravariant");
  std::string in = detail::letters(t.slots().size(), 'z');
  std::string out = in;
  const char c = in[s];
  out[s] = 'z';
  return einsum(in + "," + std::string{'z', c} + "->" + out, t, ginv);
}

/// Traces slots s1 and s2, which must have opposite variance.
template <class T>
Tensor<T> contract(const Tensor<T>& t, std::size_t s1, std::size_t s2) {
  if (s1 == s2) throw std::invalid_argument("contract: identical slots");
  if (t.slots().at(s1) == t.slots().at(s2))
    throw std::invalid_argument("contract: both slots have the same variance; use the metric");
  std::string in = detail::letters(t.slots().size());
  std::string out;
  in[s2] = in[s1];
  for (std::size_t i = 0; i < in.size(); ++i)
    if (i != s1 && i != s2) out += in[i];
  return einsum(in + "->" + out, t);
}

template <class T>
Tensor<T> all_down(Tensor<T> t, const Tensor<T>& g) {
  for (std::size_t s = 0; s < t.slots().size(); ++s)
    if (t.slots()[s] == Slot::Up) t = lower(t, s, g);
  return t;
}

template <class T>
Tensor<T> all_up(Tensor<T> t, const Tensor<T>& ginv) {
  for (std::size_t s = 0; s < t.slots().size(); ++s)
    if (t.slots()[s] == Slot::Down) t = raise(t, s, ginv);
  return t;
}

/// |T|^2 with every index raised by g on one copy and lowered on the other.
template <class T>
T norm_sq(const Tensor<T>& t, const Tensor<T>& g, const Tensor<T>& ginv) {
  const Tensor<T> lo = all_down(t, g);
  const Tensor<T> hi = all_up(t, ginv);
  T acc(0.0);
  for (std::size_t i = 0; i < lo.size(); ++i) acc = acc + lo.data()[i] * hi.data()[i];
  return acc;
}

}  // namespace conecurv
