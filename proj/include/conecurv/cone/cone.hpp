#pragma once

#include <memory>
#include <span>
#include <vector>

#include "../contact/structure.hpp"
#include "../tensorcalc/field.hpp"
#include "../tensorcalc/geometry.hpp"

namespace conecurv {

/// The almost Hermitian cone M x R with gbar = e^{-2t}(g + dt^2), Jbar d_j = phi_j^i d_i - eta_j d_t,
/// Jbar d_t = xi. The t coordinate is the last index.
struct ConeStructure {
  std::shared_ptr<const Chart> chart;
  MetricField gbar;
  TensorField jbar;  // (Down, Up): jbar(l, m) = Jbar_l^m
  int n = 1;
  int delta() const { return chart->dim() - 1; }
};

inline ConeStructure build_cone(const AlmostContactStructure& s, Interval t_range = {-1.0, 1.0}) {
  s.validate();
  using expr::Expr;
  ConeStructure c;
  c.n = s.n;
  c.chart = std::make_shared<const Chart>(s.chart->extended("t", t_range));
  const int d = s.dim();
  const int D = d + 1;
  const Expr conf = expr::exp(Expr(-2.0) * c.chart->variable(d));
  std::vector<Expr> gb(static_cast<std::size_t>(D * D), Expr(0.0));
  std::vector<Expr> jb(static_cast<std::size_t>(D * D), Expr(0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      gb[static_cast<std::size_t>(i * D + j)] = conf * s.g.field()(i, j);
      jb[static_cast<std::size_t>(i * D + j)] = s.phi(i, j);
    }
    jb[static_cast<std::size_t>(i * D + d)] = -s.eta(i);
    jb[static_cast<std::size_t>(d * D + i)] = s.xi(i);
  }
  gb[static_cast<std::size_t>(d * D + d)] = conf;
  c.gbar = MetricField(TensorField(c.chart, {Slot::Down, Slot::Down}, std::move(gb)));
  c.jbar = TensorField(c.chart, {Slot::Down, Slot::Up}, std::move(jb));
  return c;
}

/// Cone quantities at (p, t), computed directly from gbar and Jbar.
struct ConePoint {
  int dim = 0;  // 2n + 2
  int n = 0;
  double t = 0;
  CurvatureBundle<double> curv;
  Tensor<double> j;       // Jbar_l^m
  Tensor<double> jl;      // Jbar_lm = gbar_am Jbar_l^a
  Tensor<double> dj;      // nabla_l Jbar_m^k (D,D,U)
  Tensor<double> djl;     // nabla_l Jbar_mk
  Tensor<double> rs;      // rhobar*
  Tensor<double> domega;  // (d Omega)_abc as the cyclic sum of partials, Omega_lm = gbar(d_l, Jbar d_m)
  double taus = 0;
  double ndj = 0;  // |nabla Jbar|^2

  const Tensor<double>& g() const { return curv.g; }
  const Tensor<double>& ginv() const { return curv.ginv; }
  const Tensor<double>& rm() const { return curv.rm; }
  const Tensor<double>& r() const { return curv.r; }
  const Tensor<double>& rho() const { return curv.rho; }
  double tau() const { return curv.tau; }
};

inline ConePoint compute_cone_point(const Tensor<Jet>& gbar, const Tensor<Jet>& jbar, int n, double t) {
  ConePoint c;
  c.dim = gbar.dim();
  c.n = n;
  c.t = t;
  const CurvatureBundle<Jet> cj = curvature(gbar);
  const Tensor<Jet> dj = covariant_derivative(jbar, cj.gamma);
  const Tensor<Jet> omega = einsum("la,ma->lm", gbar, jbar);
  const Tensor<Jet> domega_p = partials(omega);
  c.curv = values(cj);
  c.j = values(jbar);
  c.jl = values(einsum("la,am->lm", jbar, gbar));
  c.dj = values(dj);
  c.djl = values(lower(dj, 2, gbar));
  c.rs = values(einsum("mb,gd,lbdg->lm", jbar, jbar, cj.rm)) * 0.5;
  c.taus = einsum("lm,lm->", c.ginv(), c.rs).value();
  c.ndj = norm_sq(c.dj, c.g(), c.ginv());
  c.domega = Tensor<double>(c.dim, {Slot::Down, Slot::Down, Slot::Down});
  for (int a = 0; a < c.dim; ++a)
    for (int b = 0; b < c.dim; ++b)
      for (int q = 0; q < c.dim; ++q)
        c.domega(a, b, q) =
            domega_p(a, b, q).value() + domega_p(b, q, a).value() + domega_p(q, a, b).value();
  return c;
}

}  // namespace conecurv
