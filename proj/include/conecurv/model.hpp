#pragma once

#include <span>
#include <vector>

#include "cone/cone.hpp"
#include "contact/point.hpp"
#include "contact/structure.hpp"
#include "tensorcalc/field.hpp"

namespace conecurv {

/// A structure compiled for repeated evaluation: base fields with third-order jets
/// (enough for nabla R and xi-derivatives of curvature scalars), cone fields with second-order jets.
class Model {
 public:
  static constexpr int kBaseOrder = 3;
  static constexpr int kConeOrder = 2;

  explicit Model(AlmostContactStructure s) : s_(std::move(s)) {
    s_.validate();
    cone_ = build_cone(s_);
    g_ = CompiledField(s_.g.field(), kBaseOrder);
    phi_ = CompiledField(s_.phi, kBaseOrder);
    xi_ = CompiledField(s_.xi, kBaseOrder);
    eta_ = CompiledField(s_.eta, kBaseOrder);
    gbar_ = CompiledField(cone_.gbar.field(), kConeOrder);
    jbar_ = CompiledField(cone_.jbar, kConeOrder);
  }

  const AlmostContactStructure& structure() const { return s_; }
  const ConeStructure& cone() const { return cone_; }
  int dim() const { return s_.dim(); }
  int n() const { return s_.n; }

  BasePoint base_at(std::span<const double> p) const {
    return compute_base_point(g_.evaluate(p), phi_.evaluate(p), xi_.evaluate(p), eta_.evaluate(p), s_.n, p);
  }

  ConePoint cone_at(std::span<const double> p, double t) const {
    std::vector<double> q(p.begin(), p.end());
    q.push_back(t);
    return compute_cone_point(gbar_.evaluate(q), jbar_.evaluate(q), s_.n, t);
  }

 private:
  AlmostContactStructure s_;
  ConeStructure cone_;
  CompiledField g_, phi_, xi_, eta_, gbar_, jbar_;
};

}  // namespace conecurv
