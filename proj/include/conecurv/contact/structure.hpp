#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "../exprlang/chart.hpp"
#include "../tensorcalc/field.hpp"

namespace conecurv {

enum class DEtaConvention { Half, Plain };

inline const char* to_string(DEtaConvention c) { return c == DEtaConvention::Half ? "half" : "plain"; }

inline DEtaConvention parse_deta_convention(const std::string& s) {
  if (s == "half") return DEtaConvention::Half;
  if (s == "plain") return DEtaConvention::Plain;
  throw std::invalid_argument("unknown d(eta) convention '" + s + "' (expected half or plain)");
}

/// (phi, xi, eta, g) on a (2n+1)-dimensional chart.
/// phi has slots (Down, Up) with phi(j, i) = phi_j^i, i.e. phi d_j = phi_j^i d_i.
struct AlmostContactStructure {
  std::string name;
  int n = 1;
  std::shared_ptr<const Chart> chart;
  TensorField phi;
  TensorField xi;
  TensorField eta;
  MetricField g;

  int dim() const { return chart->dim(); }

  void validate() const {
    if (!chart) throw std::invalid_argument("structure without a chart");
    const int d = chart->dim();
    if (d % 2 == 0)
      throw std::invalid_argument("almost contact structures need an odd dimension, got " + std::to_string(d));
    if (d != 2 * n + 1)
      throw std::invalid_argument("dimension " + std::to_string(d) + " does not match n = " + std::to_string(n));
    auto same = [&](const TensorField& f, std::vector<Slot> slots, const char* what) {
      if (f.dim() != d || f.slots() != slots)
        throw std::invalid_argument(std::string(what) + " has the wrong shape");
      if (f.chart().names() != chart->names())
        throw std::invalid_argument(std::string(what) + " is bound to a different chart");
    };
    same(phi, {Slot::Down, Slot::Up}, "phi");
    same(xi, {Slot::Up}, "xi");
    same(eta, {Slot::Down}, "eta");
    same(g.field(), {Slot::Down, Slot::Down}, "metric");
  }
};

}  // namespace conecurv
