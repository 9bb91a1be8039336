#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "../numeric/jet.hpp"

namespace conecurv {

enum class Slot { Up, Down };

inline char slot_char(Slot s) { return s == Slot::Up ? 'U' : 'D'; }

inline std::string slot_string(const std::vector<Slot>& s) {
  std::string r;
  for (Slot x : s) r += slot_char(x);
  return r;
}

/// Dense component array in a coordinate basis, row-major in slot order.
template <class T>
class Tensor {
 public:
  Tensor() : dim_(0), data_(1, T(0.0)) {}

  Tensor(int dim, std::vector<Slot> slots, T fill = T(0.0)) : dim_(dim), slots_(std::move(slots)) {
    if (dim < 1) throw std::invalid_argument("tensor dimension must be positive");
    std::size_t n = 1;
    for (std::size_t i = 0; i < slots_.size(); ++i) n *= static_cast<std::size_t>(dim);
    data_.assign(n, fill);
  }

  static Tensor scalar(T v, int dim = 1) {
    Tensor t(dim, {});
    t.data_[0] = std::move(v);
    return t;
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  std::size_t size() const { return data_.size(); }
  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <class... I>
  T& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }

  T& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  /// The value of a rank-0 tensor.
  const T& value() const {
    if (rank() != 0) throw std::logic_error("value() on a tensor of rank " + std::to_string(rank()));
    return data_[0];
  }

  std::size_t offset(std::span<const int> idx) const {
    if (idx.size() != slots_.size())
      throw std::out_of_range("expected " + std::to_string(slots_.size()) + " indices, got " +
                              std::to_string(idx.size()));
    std::size_t o = 0;
    for (int i : idx) {
      if (i < 0 || i >= dim_) throw std::out_of_range("tensor index out of range");
      o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return o;
  }
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }

  /// Multi-index of flat position `flat`.
  std::vector<int> index_of(std::size_t flat) const {
    std::vector<int> idx(slots_.size());
    for (std::size_t k = slots_.size(); k-- > 0;) {
      idx[k] = static_cast<int>(flat % static_cast<std::size_t>(dim_));
      flat /= static_cast<std::size_t>(dim_);
    }
    return idx;
  }

  template <class F>
  auto map(F f) const -> Tensor<decltype(f(std::declval<const T&>()))> {
    using U = decltype(f(std::declval<const T&>()));
    Tensor<U> r(dim_ < 1 ? 1 : dim_, slots_, U(0.0));
    for (std::size_t i = 0; i < data_.size(); ++i) r.data()[i] = f(data_[i]);
    return r;
  }

  Tensor& operator+=(const Tensor& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] + o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = data_[i] - o.data_[i];
    return *this;
  }
  Tensor& operator*=(const T& s) {
    for (auto& x : data_) x = x * s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const T& s) { return a *= s; }
  friend Tensor operator*(const T& s, Tensor a) { return a *= s; }
  friend Tensor operator-(Tensor a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  void check_compatible(const Tensor& o) const {
    if (o.dim_ != dim_ || o.slots_ != slots_)
      throw std::invalid_argument("tensor shape mismatch: " + slot_string(slots_) + " vs " +
                                  slot_string(o.slots_));
  }

  /// Same components with slot variances relabeled (no metric involved).
  Tensor with_slots(std::vector<Slot> s) const {
    if (s.size() != slots_.size()) throw std::invalid_argument("slot count mismatch");
    Tensor r = *this;
    r.slots_ = std::move(s);
    return r;
  }

 private:
  int dim_;
  std::vector<Slot> slots_;
  std::vector<T> data_;
};

inline Tensor<double> values(const Tensor<Jet>& t) {
  return t.map([](const Jet& j) { return j.value(); });
}

inline double max_abs(const Tensor<double>& t) {
  double m = 0.0;
  for (double x : t.data()) m = std::max(m, std::abs(x));
  return m;
}

/// Kronecker delta with slots (Down, Up).
template <class T = double>
Tensor<T> kronecker(int dim) {
  Tensor<T> d(dim, {Slot::Down, Slot::Up});
  for (int i = 0; i < dim; ++i) d(i, i) = T(1.0);
  return d;
}

namespace detail {

struct Operand {
  std::string letters;
  std::vector<Slot> slots;
};

template <class T>
struct Labeled {
  Tensor<T> t;
  std::string letters;
};

inline std::vector<std::size_t> strides_for(const std::string& letters, const std::string& of, int dim) {
  // stride in the tensor labeled `of` for each letter of `letters` (0 if absent)
  std::vector<std::size_t> st(letters.size(), 0);
  for (std::size_t k = 0; k < letters.size(); ++k) {
    std::size_t s = 1;
    for (std::size_t q = of.size(); q-- > 0;) {
      if (of[q] == letters[k]) st[k] += s;
      s *= static_cast<std::size_t>(dim);
    }
  }
  return st;
}

// Sums a repeated letter inside one operand.
template <class T>
Labeled<T> self_trace(Labeled<T> x) {
  for (;;) {
    std::size_t p = std::string::npos, q = std::string::npos;
    for (std::size_t i = 0; i < x.letters.size() && p == std::string::npos; ++i)
      for (std::size_t j = i + 1; j < x.letters.size(); ++j)
        if (x.letters[i] == x.letters[j]) {
          p = i;
          q = j;
          break;
        }
    if (p == std::string::npos) return x;
    const auto& sl = x.t.slots();
    if (sl[p] == sl[q])
      throw std::invalid_argument(std::string("einsum: trace over '") + x.letters[p] +
                                  "' pairs two slots of the same variance");
    std::vector<Slot> ns;
    std::string nl;
    for (std::size_t i = 0; i < sl.size(); ++i)
      if (i != p && i != q) {
        ns.push_back(sl[i]);
        nl += x.letters[i];
      }
    const int dim = x.t.dim();
    Tensor<T> r(dim, ns);
    std::string all = nl + x.letters[p];
    auto src = strides_for(all, x.letters, dim);
    auto dst = strides_for(all, nl, dim);
    std::vector<int> ctr(all.size(), 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < all.size(); ++i) total *= static_cast<std::size_t>(dim);
    for (std::size_t it = 0; it < total; ++it) {
      std::size_t so = 0, dof = 0;
      for (std::size_t k = 0; k < all.size(); ++k) {
        so += src[k] * static_cast<std::size_t>(ctr[k]);
        dof += dst[k] * static_cast<std::size_t>(ctr[k]);
      }
      r.data()[dof] = r.data()[dof] + x.t.data()[so];
      for (std::size_t k = all.size(); k-- > 0;) {
        if (++ctr[k] < dim) break;
        ctr[k] = 0;
      }
    }
    x = Labeled<T>{std::move(r), nl};
  }
}

template <class T>
Labeled<T> contract_pair(const Labeled<T>& a, const Labeled<T>& b) {
  const int dim = a.t.dim();
  if (b.t.dim() != dim) throw std::invalid_argument("einsum: operands of different dimension");
  std::string summed, kept;
  std::vector<Slot> kept_slots;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const char c = a.letters[i];
    const auto j = b.letters.find(c);
    if (j == std::string::npos) {
      kept += c;
      kept_slots.push_back(a.t.slots()[i]);
    } else {
      if (a.t.slots()[i] == b.t.slots()[j])
        throw std::invalid_argument(std::string("einsum: contraction over '") + c +
                                    "' pairs two slots of the same variance");
      summed += c;
    }
  }
  for (std::size_t j = 0; j < b.letters.size(); ++j)
    if (summed.find(b.letters[j]) == std::string::npos) {
      kept += b.letters[j];
      kept_slots.push_back(b.t.slots()[j]);
    }
  Tensor<T> r(dim, kept_slots);
  const std::string all = kept + summed;
  const auto sa = strides_for(all, a.letters, dim);
  const auto sb = strides_for(all, b.letters, dim);
  const auto so = strides_for(all, kept, dim);
  std::vector<int> ctr(all.size(), 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < all.size(); ++i) total *= static_cast<std::size_t>(dim);
  const auto& ad = a.t.data();
  const auto& bd = b.t.data();
  auto& rd = r.data();
  std::size_t oa = 0, ob = 0, oo = 0;
  for (std::size_t it = 0; it < total; ++it) {
    rd[oo] = rd[oo] + ad[oa] * bd[ob];
    for (std::size_t k = all.size(); k-- > 0;) {
      ++ctr[k];
      oa += sa[k];
      ob += sb[k];
      oo += so[k];
      if (ctr[k] < dim) break;
      oa -= sa[k] * static_cast<std::size_t>(dim);
      ob -= sb[k] * static_cast<std::size_t>(dim);
      oo -= so[k] * static_cast<std::size_t>(dim);
      ctr[k] = 0;
    }
  }
  return {std::move(r), kept};
}

template <class T>
Tensor<T> permute(const Labeled<T>& x, const std::string& out) {
  if (x.letters == out) return x.t;
  const int dim = x.t.dim();
  std::vector<Slot> slots;
  for (char c : out) slots.push_back(x.t.slots()[x.letters.find(c)]);
  Tensor<T> r(dim, slots);
  const auto src = strides_for(out, x.letters, dim);
  for (std::size_t f = 0; f < r.size(); ++f) {
    const auto idx = r.index_of(f);
    std::size_t o = 0;
    for (std::size_t k = 0; k < idx.size(); ++k) o += src[k] * static_cast<std::size_t>(idx[k]);
    r.data()[f] = x.t.data()[o];
  }
  return r;
}

}  // namespace detail

/// Index contraction in Einstein notation, e.g. einsum("ai,bj,abkl->ijkl", A, B, R).
/// Every summed letter must join one Up slot with one Down slot; output letters
/// must occur exactly once among the inputs. Operands are contracted left to right.
template <class T, class... Ts>
Tensor<T> einsum(std::string_view spec, const Tensor<T>& first, const Ts&... rest) {
  std::vector<const Tensor<T>*> ops{&first, &rest...};
  const auto arrow = spec.find("->");
  if (arrow == std::string_view::npos) throw std::invalid_argument("einsum: missing '->'");
  const std::string out(spec.substr(arrow + 2));
  std::vector<std::string> in;
  {
    std::string cur;
    for (char c : spec.substr(0, arrow)) {
      if (c == ',') {
        in.push_back(cur);
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
    in.push_back(cur);
  }
  if (in.size() != ops.size())
    throw std::invalid_argument("einsum: " + std::to_string(in.size()) + " index groups for " +
                                std::to_string(ops.size()) + " operands");
  const int dim = first.dim();
  std::array<int, 128> count{};
  for (std::size_t k = 0; k < in.size(); ++k) {
    if (static_cast<int>(in[k].size()) != ops[k]->rank())
      throw std::invalid_argument("einsum: operand " + std::to_string(k) + " has rank " +
                                  std::to_string(ops[k]->rank()) + " but labels '" + in[k] + "'");
    if (ops[k]->dim() != dim) throw std::invalid_argument("einsum: operands of different dimension");
    for (char c : in[k]) ++count[static_cast<unsigned char>(c)];
  }
  for (char c : out) {
    if (count[static_cast<unsigned char>(c)] != 1)
      throw std::invalid_argument(std::string("einsum: output letter '") + c + "' must occur exactly once");
    count[static_cast<unsigned char>(c)] = 0;
  }
  for (int c = 0; c < 128; ++c)
    if (count[static_cast<std::size_t>(c)] != 0 && count[static_cast<std::size_t>(c)] != 2)
      throw std::invalid_argument(std::string("einsum: summed letter '") + static_cast<char>(c) +
                                  "' must occur exactly twice");
  detail::Labeled<T> acc = detail::self_trace(detail::Labeled<T>{*ops[0], in[0]});
  for (std::size_t k = 1; k < ops.size(); ++k)
    acc = detail::contract_pair(acc, detail::self_trace(detail::Labeled<T>{*ops[k], in[k]}));
  return detail::permute(acc, out);
}

}  // namespace conecurv
