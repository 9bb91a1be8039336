#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../exprlang/chart.hpp"
#include "../exprlang/expr.hpp"
#include "../numeric/jet.hpp"
#include "../tensor/tensor.hpp"

namespace conecurv {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tensor field whose components are expressions on a chart.
class TensorField {
 public:
  TensorField() = default;

  TensorField(std::shared_ptr<const Chart> chart, std::vector<Slot> slots, std::vector<expr::Expr> comps)
      : chart_(std::move(chart)), slots_(std::move(slots)), comps_(std::move(comps)) {
    if (!chart_) throw std::invalid_argument("tensor field without a chart");
    std::size_t n = 1;
    for (std::size_t i = 0; i < slots_.size(); ++i) n *= static_cast<std::size_t>(chart_->dim());
    if (comps_.size() != n)
      throw std::invalid_argument("tensor field needs " + std::to_string(n) + " components, got " +
                                  std::to_string(comps_.size()));
    for (const auto& c : comps_)
      if (expr::max_variable(c) >= chart_->dim())
        throw std::invalid_argument("component refers to a coordinate outside the chart");
  }

  static TensorField zeros(std::shared_ptr<const Chart> chart, std::vector<Slot> slots) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < slots.size(); ++i) n *= static_cast<std::size_t>(chart->dim());
    return TensorField(std::move(chart), std::move(slots), std::vector<expr::Expr>(n, expr::Expr(0.0)));
  }

  const Chart& chart() const { return *chart_; }
  const std::shared_ptr<const Chart>& chart_ptr() const { return chart_; }
  int dim() const { return chart_->dim(); }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  int contravariant() const { return static_cast<int>(std::count(slots_.begin(), slots_.end(), Slot::Up)); }
  int covariant() const { return rank() - contravariant(); }
  const std::vector<expr::Expr>& components() const { return comps_; }

  template <class... I>
  const expr::Expr& operator()(I... idx) const {
    return comps_[layout().offset({static_cast<int>(idx)...})];
  }

  /// Copy with one component replaced.
  TensorField with(std::initializer_list<int> idx, expr::Expr e) const {
    TensorField r = *this;
    r.comps_[layout().offset(idx)] = std::move(e);
    return r;
  }

  Tensor<double> evaluate(std::span<const double> p) const {
    Tensor<double> t(dim(), slots_);
    for (std::size_t i = 0; i < comps_.size(); ++i) t.data()[i] = expr::evaluate(comps_[i], p);
    return t;
  }

 private:
  Tensor<double> layout() const { return Tensor<double>(dim(), slots_); }

  std::shared_ptr<const Chart> chart_;
  std::vector<Slot> slots_;
  std::vector<expr::Expr> comps_;
};

/// Symmetric covariant 2-tensor; positive definiteness is checked per point.
class MetricField {
 public:
  MetricField() = default;

  /// Takes the full matrix; entries below the diagonal may be zero placeholders, in which
  /// case they are completed from the upper triangle. Conflicting pairs are an error.
  explicit MetricField(const TensorField& g) {
    if (g.rank() != 2 || g.slots()[0] != Slot::Down || g.slots()[1] != Slot::Down)
      throw std::invalid_argument("metric must be a (0,2) field");
    const int d = g.dim();
    std::vector<expr::Expr> comps(g.components());
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        auto& a = comps[static_cast<std::size_t>(i * d + j)];
        auto& b = comps[static_cast<std::size_t>(j * d + i)];
        if (b.is_number(0.0)) b = a;
        else if (a.is_number(0.0)) a = b;
        else if (!expr::equal(a, b))
          throw std::invalid_argument("metric entries g_" + std::to_string(i) + std::to_string(j) +
                                      " and g_" + std::to_string(j) + std::to_string(i) + " differ");
      }
    g_ = TensorField(g.chart_ptr(), g.slots(), std::move(comps));
  }

  const TensorField& field() const { return g_; }
  int dim() const { return g_.dim(); }

  /// Smallest eigenvalue of g at a point.
  static double min_eigenvalue(const Tensor<double>& g) {
    const int d = g.dim();
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = g(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  static void check_positive_definite(const Tensor<double>& g) {
    const double lmin = min_eigenvalue(g);
    if (!(lmin > 0.0))
      throw GeometryError("metric is not positive definite (smallest eigenvalue " + std::to_string(lmin) + ")");
  }

 private:
  TensorField g_;
};

/// A tensor field with symbolic partials cached up to a fixed order, ready for jet evaluation.
class CompiledField {
 public:
  CompiledField() = default;
  CompiledField(const TensorField& f, int order) : dim_(f.dim()), slots_(f.slots()), order_(order) {
    for (const auto& c : f.components()) models_.emplace_back(c, f.dim(), order);
  }

  int order() const { return order_; }

  Tensor<Jet> evaluate(std::span<const double> p, int order) const {
    Tensor<Jet> t(dim_, slots_);
    for (std::size_t i = 0; i < models_.size(); ++i) t.data()[i] = models_[i].evaluate(p, order);
    return t;
  }
  Tensor<Jet> evaluate(std::span<const double> p) const { return evaluate(p, order_); }

 private:
  int dim_ = 0;
  std::vector<Slot> slots_;
  int order_ = 0;
  std::vector<TaylorModel> models_;
};

}  // namespace conecurv
