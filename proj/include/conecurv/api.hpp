#pragma once

// Named entry points over the identity suite: each runs one family of checks at given points.

#include <cmath>
#include <string>
#include <vector>

#include "runner/runner.hpp"

namespace conecurv {

using Points = std::vector<std::vector<double>>;

inline Report run_checks(const Model& m, const Points& pts, std::vector<std::string> ids, double tol = 1e-8,
                         DEtaConvention deta = DEtaConvention::Half, std::vector<double> t_values = {0.0, 0.5}) {
  RunConfig cfg;
  cfg.checks = std::move(ids);
  cfg.tol = tol;
  cfg.deta = deta;
  cfg.t_values = std::move(t_values);
  cfg.points = static_cast<int>(pts.size());
  return run_model(m, pts, cfg, m.structure().name);
}

inline Report check_axioms(const Model& m, const Points& pts, DEtaConvention deta = DEtaConvention::Half,
                           double tol = 1e-8) {
  return run_checks(m, pts, {"axioms"}, tol, deta);
}

inline Report basic_formula_suite(const Model& m, const Points& pts, double tol = 1e-8) {
  return run_checks(m, pts, {"basic"}, tol);
}

inline Report residual_contact_identities(const Model& m, const Points& pts, double tol = 1e-8) {
  return run_checks(m, pts, {"3.2", "3.3", "3.4"}, tol);
}

inline Report residual_traced(const Model& m, const Points& pts, double tol = 1e-8) {
  return run_checks(m, pts, {"3.8", "3.9", "3.10", "3.11", "3.14", "3.15", "3.19", "3.15=3.10", "3.14:derived"}, tol);
}

inline Report residual_cone(const Model& m, const Points& pts, std::vector<double> t_values, double tol = 1e-8) {
  return run_checks(m, pts, {"cone"}, tol, DEtaConvention::Half, std::move(t_values));
}

inline Report residual_gray(const Model& m, const Points& pts, double tol = 1e-8) {
  return run_checks(m, pts, {"gray"}, tol);
}

struct HField {
  Tensor<double> h;  // h_j^i
  double trh2 = 0;
};

inline HField compute_h(const Model& m, const std::vector<double>& p) {
  const BasePoint b = m.base_at(p);
  return {b.h, b.trh2};
}

struct StarCurvature {
  Tensor<double> rho_star;  // rho*_ij
  double tau_star = 0;
};

inline StarCurvature star_curvature(const Model& m, const std::vector<double>& p) {
  const BasePoint b = m.base_at(p);
  return {b.rs, b.taus};
}

struct Classification {
  bool is_sasakian = false;
  bool is_k_contact = false;
  double sasakian_residual = 0;
  double h_residual = 0;
  double prop42_residual = 0;
};

inline Classification classify(const Model& m, const Points& pts, double tol = 1e-8) {
  const Report r = run_checks(m, pts, {"3.20", "k-contact", "prop4.2"}, tol);
  Classification c;
  c.sasakian_residual = r.find("3.20")->max_residual;
  c.h_residual = r.find("k-contact")->max_residual;
  c.prop42_residual = r.find("prop4.2")->max_residual;
  c.is_sasakian = c.sasakian_residual <= tol;
  c.is_k_contact = c.h_residual <= tol;
  return c;
}

struct HContact {
  bool h_contact = false;
  std::vector<double> f;         // g(Q xi, xi)/g(xi, xi) per point
  double angle_residual = 0;     // worst sine of the angle between Q xi and xi
  double f_residual = 0;         // worst residual of f = 2 - tr h^2
  std::vector<double> worst_point;
};

/// Q xi = f xi test (dimension 3) with the check f = 2 - tr h^2.
inline HContact h_contact_f(const Model& m, const Points& pts, double tol = 1e-8) {
  if (m.dim() != 3) throw std::invalid_argument("the H-contact function is only defined here in dimension 3");
  HContact out;
  for (const auto& p : pts) {
    const BasePoint b = m.base_at(p);
    const double s = formulas::h_contact_angle(b);
    if (s >= out.angle_residual) {
      out.angle_residual = s;
      out.worst_point = p;
    }
    out.f.push_back(b.f);
    out.f_residual = std::max(out.f_residual, residual(formulas::identity_410(b).lhs, formulas::identity_410(b).rhs));
  }
  out.h_contact = out.angle_residual <= tol;
  return out;
}

}  // namespace conecurv
