#pragma once

#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "../tensorcalc/field.hpp"
#include "../tensorcalc/geometry.hpp"
#include "structure.hpp"

namespace conecurv {

/// Every base quantity the identity suite needs, evaluated at one point.
/// Index layouts follow the slot order given in the comments.
struct BasePoint {
  int dim = 0;
  int n = 0;
  std::vector<double> p;

  CurvatureBundle<double> curv;  // g, ginv, gamma(k,i,j), rm R_{ijk}^l, r R_{ijkl}, rho, tau
  Tensor<double> phi;            // phi_j^i (D,U)
  Tensor<double> phil;           // phi_ij = g_aj phi_i^a
  Tensor<double> xi, eta;
  Tensor<double> dphi;   // nabla_i phi_j^k (D,D,U)
  Tensor<double> dphil;  // nabla_i phi_jk
  Tensor<double> dxi;    // nabla_i xi^j (D,U)
  Tensor<double> deta;   // nabla_i eta_j
  Tensor<double> h;      // h_j^i = (1/2)(Lie_xi phi)_j^i
  Tensor<double> dh;     // nabla_i h_j^k
  Tensor<double> rs;     // rho*_ij
  Tensor<double> drho;   // nabla_m rho_jk
  Tensor<double> dr;     // nabla_m R_ijkl
  Tensor<double> deta_half;   // (1/2)(d_i eta_j - d_j eta_i)
  Tensor<double> deta_plain;  // d_i eta_j - d_j eta_i

  double taus = 0;     // tau*
  double trh2 = 0;     // tr h^2
  double nphi = 0;     // |nabla phi|^2
  double neta = 0;     // |nabla eta|^2
  double f = 0;        // g(Q xi, xi)/g(xi, xi)
  double xi_tau = 0;   // xi(tau)
  double xi_f = 0;     // xi(f)
  double xi_trh2 = 0;  // xi(tr h^2)
  double contact_volume = 0;  // eta ^ (d eta)^n through the bordered determinant

  const Tensor<double>& g() const { return curv.g; }
  const Tensor<double>& ginv() const { return curv.ginv; }
  const Tensor<double>& rm() const { return curv.rm; }
  const Tensor<double>& r() const { return curv.r; }
  const Tensor<double>& rho() const { return curv.rho; }
  double tau() const { return curv.tau; }
};

/// Directional derivative X(s) of a scalar jet.
inline Jet directional(const Tensor<Jet>& x, const Jet& s) {
  Jet acc(0.0);
  for (int a = 0; a < x.dim(); ++a) acc = acc + x(a) * s.derivative(a);
  return acc;
}

/// Base quantities from jets of g, phi, xi, eta (order >= 3 needed for the H-contact chain).
inline BasePoint compute_base_point(const Tensor<Jet>& g, const Tensor<Jet>& phi, const Tensor<Jet>& xi,
                                    const Tensor<Jet>& eta, int n, std::span<const double> p) {
  BasePoint b;
  b.dim = g.dim();
  b.n = n;
  b.p.assign(p.begin(), p.end());
  const CurvatureBundle<Jet> cj = curvature(g);
  const Tensor<Jet>& gamma = cj.gamma;

  const Tensor<Jet> dphi = covariant_derivative(phi, gamma);
  const Tensor<Jet> dxi = covariant_derivative(xi, gamma);
  const Tensor<Jet> deta = covariant_derivative(eta, gamma);
  const Tensor<Jet> h = lie_derivative(xi, phi) * Jet(0.5);
  const Tensor<Jet> dh = covariant_derivative(h, gamma);
  const Tensor<Jet> rs = einsum("bj,cd,ijdc->ib", phi, phi, cj.rm) * Jet(0.5);
  const Tensor<Jet> drho = covariant_derivative(cj.rho, gamma);
  const Tensor<Jet> dr = covariant_derivative(cj.r, gamma);

  const Jet trh2 = einsum("ab,ba->", h, h).value();
  const Jet gxx = einsum("a,b,ab->", xi, xi, g).value();
  const Jet f = einsum("a,b,ab->", xi, xi, cj.rho).value() / gxx;

  b.curv = values(cj);
  b.phi = values(phi);
  b.phil = values(einsum("ia,aj->ij", phi, g));
  b.xi = values(xi);
  b.eta = values(eta);
  b.dphi = values(dphi);
  b.dphil = values(lower(dphi, 2, g));
  b.dxi = values(dxi);
  b.deta = values(deta);
  b.h = values(h);
  b.dh = values(dh);
  b.rs = values(rs);
  b.drho = values(drho);
  b.dr = values(dr);

  const Tensor<Jet> deta_p = partials(eta);  // (i, j) = d_i eta_j
  b.deta_plain = Tensor<double>(b.dim, {Slot::Down, Slot::Down});
  b.deta_half = b.deta_plain;
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j) {
      const double w = deta_p(i, j).value() - deta_p(j, i).value();
      b.deta_plain(i, j) = w;
      b.deta_half(i, j) = 0.5 * w;
    }

  b.taus = einsum("ij,ij->", values(cj.ginv), b.rs).value();
  b.trh2 = trh2.value();
  b.nphi = norm_sq(b.dphi, b.g(), b.ginv());
  b.neta = norm_sq(b.deta, b.g(), b.ginv());
  b.f = f.value();
  b.xi_tau = directional(xi, cj.tau).value();
  b.xi_f = directional(xi, f).value();
  b.xi_trh2 = directional(xi, trh2).value();

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.dim + 1, b.dim + 1);
  for (int i = 0; i < b.dim; ++i) {
    for (int j = 0; j < b.dim; ++j) m(i, j) = b.deta_plain(i, j);
    m(i, b.dim) = b.eta(i);
    m(b.dim, i) = -b.eta(i);
  }
  b.contact_volume = m.determinant();
  return b;
}

}  // namespace conecurv
