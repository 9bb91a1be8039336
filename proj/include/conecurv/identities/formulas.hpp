#pragma once

#include <cmath>
#include <vector>

#include "../cone/cone.hpp"
#include "../contact/point.hpp"
#include "../tensor/tensor.hpp"
#include "../tensorcalc/geometry.hpp"
#include "residual.hpp"

// Left and right sides of every relation, as tensors over the free indices.
// Index letters in the einsum strings follow the printed formulas.

namespace conecurv::formulas {

using T = Tensor<double>;

struct Pair {
  T lhs, rhs;
  T diff() const { return lhs - rhs; }
};

inline T zeros_like(const T& t) { return T(t.dim(), t.slots()); }
inline T scalar(double v, int dim) { return T::scalar(v, dim); }
inline T transpose(const T& t) { return einsum("ij->ji", t); }

inline T outer(const T& a, const T& b, const char* spec) { return einsum(spec, a, b); }

/// Components of a cone tensor with some slots pinned: fixed[s] = -1 leaves slot s free over
/// the base range 0..base_dim-1, otherwise pins it to that cone index.
inline T restrict(const T& t, const std::vector<int>& fixed, int base_dim) {
  std::vector<Slot> slots;
  for (std::size_t s = 0; s < fixed.size(); ++s)
    if (fixed[s] < 0) slots.push_back(t.slots()[s]);
  T r(base_dim, slots);
  for (std::size_t f = 0; f < r.size(); ++f) {
    const auto free = r.index_of(f);
    std::vector<int> idx(fixed.size());
    std::size_t q = 0;
    for (std::size_t s = 0; s < fixed.size(); ++s) idx[s] = fixed[s] < 0 ? free[q++] : fixed[s];
    r.data()[f] = t.at(idx);
  }
  return r;
}

// ---------------------------------------------------------------------------
// axioms

inline Pair phi_squared(const BasePoint& b) {
  return {einsum("ja,ai->ji", b.phi, b.phi), einsum("j,i->ji", b.eta, b.xi) - kronecker(b.dim)};
}
inline Pair phi_xi(const BasePoint& b) { return {einsum("j,ji->i", b.xi, b.phi), zeros_like(b.xi)}; }
inline Pair eta_phi(const BasePoint& b) { return {einsum("ja,a->j", b.phi, b.eta), zeros_like(b.eta)}; }
inline Pair eta_xi(const BasePoint& b) { return {einsum("a,a->", b.eta, b.xi), scalar(1.0, b.dim)}; }

inline Pair compatible_metric(const BasePoint& b) {
  return {einsum("ia,jb,ab->ij", b.phi, b.phi, b.g()), b.g() - einsum("i,j->ij", b.eta, b.eta)};
}
inline Pair eta_dual(const BasePoint& b) { return {b.eta, einsum("ia,a->i", b.g(), b.xi)}; }
inline Pair phi_skew(const BasePoint& b) { return {b.phil + transpose(b.phil), zeros_like(b.phil)}; }

/// d eta(X, Y) = g(X, phi Y), i.e. (d eta)_ij = g_ia phi_j^a = phi_ji.
inline Pair contact_metric(const BasePoint& b, DEtaConvention c) {
  return {c == DEtaConvention::Half ? b.deta_half : b.deta_plain, transpose(b.phil)};
}

// ---------------------------------------------------------------------------
// h, *-Ricci, basic contact formulas

inline Pair h_xi(const BasePoint& b) { return {einsum("j,ji->i", b.xi, b.h), zeros_like(b.xi)}; }
inline Pair h_trace(const BasePoint& b) { return {einsum("ii->", b.h), scalar(0.0, b.dim)}; }
inline Pair h_symmetric(const BasePoint& b) {
  const T hl = einsum("ia,aj->ij", b.h, b.g());
  return {hl, transpose(hl)};
}
inline Pair phi_h_anticommute(const BasePoint& b) {
  return {einsum("ja,ai->ji", b.h, b.phi) + einsum("ja,ai->ji", b.phi, b.h), zeros_like(b.phi)};
}
inline Pair star_symmetry(const BasePoint& b) {
  return {einsum("ab,ja,kb->jk", b.rs, b.phi, b.phi) + einsum("bj,k,b->jk", b.rs, b.eta, b.xi), transpose(b.rs)};
}

inline Pair div_xi(const BasePoint& b) { return {einsum("ii->", b.dxi), scalar(0.0, b.dim)}; }
inline Pair xi_nabla_phi(const BasePoint& b) { return {einsum("a,aji->ji", b.xi, b.dphi), zeros_like(b.phi)}; }
inline Pair nabla_xi(const BasePoint& b) {
  return {b.dxi, -1.0 * b.phi - einsum("aj,ia->ij", b.phi, b.h)};
}
inline Pair xi_nabla_h(const BasePoint& b) {
  return {einsum("a,aji->ji", b.xi, b.dh),
          b.phi - einsum("ai,ba,jb->ji", b.h, b.h, b.phi) - einsum("ai,jbca,b,c->ji", b.phi, b.rm(), b.xi, b.xi)};
}
inline Pair div_phi(const BasePoint& b) {
  return {einsum("iji->j", b.dphi), -2.0 * b.n * b.eta};
}
inline Pair ricci_xi_xi(const BasePoint& b) {
  return {einsum("ij,i,j->", b.rho(), b.xi, b.xi), scalar(2.0 * b.n - b.trh2, b.dim)};
}
inline Pair cyclic_nabla_phi(const BasePoint& b) {
  return {b.dphil + einsum("jki->ijk", b.dphil) + einsum("kij->ijk", b.dphil), zeros_like(b.dphil)};
}
inline Pair norm_nabla_eta(const BasePoint& b) {
  return {scalar(b.neta, b.dim), scalar(2.0 * b.n + b.trh2, b.dim)};
}

// ---------------------------------------------------------------------------
// contact identities from the almost Kahler cone

inline Pair identity_32(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  const T& g = b.g();
  const T& e = b.eta;
  const T& pl = b.phil;
  T L = R + einsum("abcd,ia,jb,kc,ld->ijkl", R, p, p, p, p) + einsum("ia,kc,ajcl->ijkl", p, p, R) +
        einsum("jb,ld,ibkd->ijkl", p, p, R) - einsum("ia,jb,abkl->ijkl", p, p, R) -
        einsum("kc,ld,ijcd->ijkl", p, p, R) + einsum("ia,ld,ajkd->ijkl", p, p, R) +
        einsum("jb,kc,ibcl->ijkl", p, p, R);
  L += 4.0 * einsum("il,jk->ijkl", pl, pl) - 4.0 * einsum("jl,ik->ijkl", pl, pl) -
       4.0 * einsum("il,jk->ijkl", g, g) + 4.0 * einsum("jl,ik->ijkl", g, g) +
       4.0 * einsum("il,j,k->ijkl", g, e, e) + 4.0 * einsum("jk,i,l->ijkl", g, e, e) -
       4.0 * einsum("jl,i,k->ijkl", g, e, e) - 4.0 * einsum("ik,j,l->ijkl", g, e, e);
  const T& dp = b.dphil;
  T Rr = 2.0 * einsum("ab,bij,akl->ijkl", b.ginv(), dp, dp) + 2.0 * einsum("k,lij->ijkl", e, dp) -
         2.0 * einsum("l,kij->ijkl", e, dp) + 2.0 * einsum("i,jkl->ijkl", e, dp) -
         2.0 * einsum("j,ikl->ijkl", e, dp);
  return {L, Rr};
}

inline Pair identity_33(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  const T& x = b.xi;
  T L = einsum("abcd,a,jb,kc,ld->jkl", R, x, p, p, p) + einsum("a,kc,ajcl->jkl", x, p, R) -
        einsum("a,jb,abkl->jkl", x, p, R) + einsum("a,ld,ajkd->jkl", x, p, R);
  T Rr = 2.0 * einsum("ab,bj,akl->jkl", b.ginv(), b.deta, b.dphil) + 2.0 * einsum("k,lj->jkl", b.eta, b.deta) -
         2.0 * einsum("l,kj->jkl", b.eta, b.deta) + 2.0 * einsum("aj,ab,bkl->jkl", b.phil, b.ginv(), b.dphil);
  return {L, Rr};
}

inline Pair identity_34(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  const T& x = b.xi;
  T L = einsum("abcd,ia,b,kc,d->ik", R, p, x, p, x) + einsum("b,d,ibkd->ik", x, x, R);
  T Rr = 2.0 * (einsum("ai,ab,bk->ik", b.deta, b.ginv(), b.deta) + einsum("ak,ab,bi->ik", b.phil, b.ginv(), b.deta) +
                einsum("ai,ab,bk->ik", b.phil, b.ginv(), b.deta));
  return {L, Rr};
}

// ---------------------------------------------------------------------------
// traced identities

inline Pair identity_38(const BasePoint& b) {
  const double n = b.n;
  const T& R = b.r();
  const T& p = b.phi;
  const T& x = b.xi;
  const T& e = b.eta;
  T L = 2.0 * b.rho() + 2.0 * einsum("jb,kc,bc->jk", p, p, b.rho()) - einsum("abcd,a,d,jb,kc->jk", R, x, x, p, p) -
        2.0 * b.rs - 2.0 * transpose(b.rs) - einsum("a,b,ajkb->jk", x, x, R) - 8.0 * (n - 1.0) * b.g() +
        8.0 * (n - 1.0) * einsum("j,k->jk", e, e);
  T Rr = -2.0 * einsum("ab,bjl,akl->jk", b.ginv(), b.dphil, b.dphi) + 8.0 * n * einsum("j,k->jk", e, e) +
         4.0 * einsum("l,kjl->jk", e, b.dphi);
  return {L, Rr};
}

inline Pair identity_39(const BasePoint& b) {
  const double n = b.n;
  return {scalar(b.taus - b.tau() + 4.0 * n * n, b.dim), scalar(b.trh2 + 0.5 * (b.nphi - 4.0 * n), b.dim)};
}

inline Pair identity_310(const BasePoint& b) {
  T L = -2.0 * einsum("a,kc,ac->k", b.xi, b.phi, b.rho()) - einsum("a,jb,akbj->k", b.xi, b.phi, b.rm());
  T Rr = 2.0 * einsum("aj,ab,bkj->k", b.deta, b.ginv(), b.dphi);
  return {L, Rr};
}

inline Pair identity_311(const BasePoint& b) {
  T L = einsum("ai,a->i", b.rho(), b.xi) - einsum("ai,a->i", b.rs, b.xi) - 2.0 * b.n * b.eta;
  return {L, einsum("jb,bij->i", b.h, b.dphi)};
}

inline Pair identity_314(const BasePoint& b) {
  const double n = b.n;
  T L = b.rs + transpose(b.rs) - b.rho() - einsum("ab,ja,kb->jk", b.rho(), b.phi, b.phi);
  T Rr = einsum("ab,bjl,akl->jk", b.ginv(), b.dphil, b.dphi) - 2.0 * einsum("l,jkl->jk", b.eta, b.dphi) +
         einsum("aj,ab,bk->jk", b.phil, b.ginv(), b.deta) + einsum("ak,ab,bj->jk", b.phil, b.ginv(), b.deta) +
         einsum("ab,bj,ak->jk", b.ginv(), b.deta, b.deta) - 4.0 * (n - 1.0) * b.g() -
         4.0 * einsum("j,k->jk", b.eta, b.eta);
  return {L, Rr};
}

inline Pair identity_315(const BasePoint& b) {
  T L = 0.5 * einsum("a,iacb,bc->i", b.xi, b.rm(), b.phi) - einsum("bc,ib,c->i", b.rho(), b.phi, b.xi);
  return {L, -1.0 * einsum("ab,bci,ac->i", b.ginv(), b.dphil, b.dxi)};
}

/// (3.15) - 1/2 (3.10): both sides are differences of residual tensors.
inline Pair coincidence_315_310(const BasePoint& b) {
  return {identity_315(b).diff(), 0.5 * identity_310(b).diff()};
}

/// (3.8) residual rebuilt from (3.14) and (3.4): E8 = -2 E14 + E4 + 4 eta_l (nabla_j phi_k^l - nabla_k phi_j^l).
inline Pair derivation_314(const BasePoint& b) {
  const T extra = 4.0 * (einsum("l,jkl->jk", b.eta, b.dphi) - einsum("l,kjl->jk", b.eta, b.dphi));
  return {identity_38(b).diff(), -2.0 * identity_314(b).diff() + identity_34(b).diff() + extra};
}

inline Pair identity_319(const BasePoint& b) { return identity_39(b); }

// ---------------------------------------------------------------------------
// classification

/// nabla_i phi_j^k = g_ij xi^k - eta_j delta_i^k
inline Pair sasakian(const BasePoint& b) {
  return {b.dphi, einsum("ij,k->ijk", b.g(), b.xi) - einsum("j,ik->ijk", b.eta, kronecker(b.dim))};
}
inline Pair k_contact(const BasePoint& b) { return {b.h, zeros_like(b.h)}; }
/// R(X,Y)xi = eta(Y)X - eta(X)Y
inline Pair prop_42(const BasePoint& b) {
  const T d = kronecker(b.dim);
  return {einsum("ijkl,k->ijl", b.rm(), b.xi), einsum("j,il->ijl", b.eta, d) - einsum("i,jl->ijl", b.eta, d)};
}

// ---------------------------------------------------------------------------
// Gray identities

inline Pair g1(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  const T& g = b.g();
  const T& pl = b.phil;
  return {R - einsum("kc,ld,ijcd->ijkl", p, p, R),
          einsum("il,jk->ijkl", g, g) - einsum("jl,ik->ijkl", g, g) - einsum("il,jk->ijkl", pl, pl) +
              einsum("jl,ik->ijkl", pl, pl)};
}
inline Pair g1_1(const BasePoint& b) {
  return {einsum("c,ld,ijcd->ijl", b.xi, b.phi, b.r()),
          einsum("i,jl->ijl", b.eta, b.phil) - einsum("j,il->ijl", b.eta, b.phil)};
}
inline Pair g2(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  return {R - einsum("ia,jb,abkl->ijkl", p, p, R) - einsum("ia,kc,ajcl->ijkl", p, p, R) -
              einsum("ia,ld,ajkd->ijkl", p, p, R),
          einsum("jk,i,l->ijkl", b.g(), b.eta, b.eta) - einsum("jl,i,k->ijkl", b.g(), b.eta, b.eta)};
}
inline Pair g2_1(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  const T& x = b.xi;
  return {einsum("a,jb,abkl->jkl", x, p, R) + einsum("a,kc,ajcl->jkl", x, p, R) + einsum("a,ld,ajkd->jkl", x, p, R),
          T(b.dim, {Slot::Down, Slot::Down, Slot::Down})};
}
inline Pair g2_2(const BasePoint& b) {
  return {einsum("ia,b,abkl->ikl", b.phi, b.xi, b.r()),
          einsum("k,il->ikl", b.eta, b.phil) - einsum("l,ik->ikl", b.eta, b.phil)};
}
inline Pair g2_3(const BasePoint& b) {
  return {einsum("ia,c,ajcl->ijl", b.phi, b.xi, b.r()), einsum("j,il->ijl", b.eta, b.phil)};
}
inline Pair g2_4(const BasePoint& b) {
  return {einsum("a,c,ajcl->jl", b.xi, b.xi, b.r()), einsum("j,l->jl", b.eta, b.eta) - b.g()};
}
inline Pair g3(const BasePoint& b) {
  const T& R = b.r();
  const T& p = b.phi;
  const T& g = b.g();
  const T& e = b.eta;
  return {R - einsum("abcd,ia,jb,kc,ld->ijkl", R, p, p, p, p),
          einsum("il,j,k->ijkl", g, e, e) + einsum("jk,i,l->ijkl", g, e, e) - einsum("ik,j,l->ijkl", g, e, e) -
              einsum("jl,i,k->ijkl", g, e, e)};
}
inline Pair g3_1(const BasePoint& b) {
  return {einsum("abcd,a,jb,kc,ld->jkl", b.r(), b.xi, b.phi, b.phi, b.phi), T(b.dim, {Slot::Down, Slot::Down, Slot::Down})};
}
inline Pair g3_2(const BasePoint& b) {
  return {einsum("abcd,a,c,jb,ld->jl", b.r(), b.xi, b.xi, b.phi, b.phi), einsum("j,l->jl", b.eta, b.eta) - b.g()};
}
/// xi^k R_ijkl = g_il eta_j - g_jl eta_i
inline Pair prop_43(const BasePoint& b) {
  return {einsum("k,ijkl->ijl", b.xi, b.r()), einsum("il,j->ijl", b.g(), b.eta) - einsum("jl,i->ijl", b.g(), b.eta)};
}

// Sub-identity residuals recovered by transvecting the main residual tensor.
inline Pair derive_g1_1(const BasePoint& b) {
  return {einsum("ijcd,c,ld->ijl", g1(b).diff(), b.xi, b.phi), g1_1(b).diff()};
}
inline Pair derive_g2_1(const BasePoint& b) {
  const T e2 = g2(b).diff();
  return {einsum("a,jb,abkl->jkl", b.xi, b.phi, e2) + einsum("a,kc,ajcl->jkl", b.xi, b.phi, e2) +
              einsum("a,ld,ajkd->jkl", b.xi, b.phi, e2),
          g2_1(b).diff()};
}
inline Pair derive_g2_2(const BasePoint& b) {
  return {-1.0 * einsum("b,ia,bakl->ikl", b.xi, b.phi, g2(b).diff()), g2_2(b).diff()};
}
inline Pair derive_g2_3(const BasePoint& b) {
  // E2(xi, d_l, phi d_i, d_j) against (G2-3) with free indices (i, j, l)
  return {einsum("a,ic,alcj->ijl", b.xi, b.phi, g2(b).diff()), g2_3(b).diff()};
}
inline Pair derive_g2_4(const BasePoint& b) {
  return {einsum("i,k,ijkl->jl", b.xi, b.xi, g2(b).diff()), g2_4(b).diff()};
}
inline Pair derive_g3_1(const BasePoint& b) {
  return {einsum("abcd,a,jb,kc,ld->jkl", g3(b).diff(), b.xi, b.phi, b.phi, b.phi), g3_1(b).diff()};
}
inline Pair derive_g3_2(const BasePoint& b) {
  return {einsum("abcd,a,jb,c,ld->jl", g3(b).diff(), b.xi, b.phi, b.xi, b.phi), g3_2(b).diff()};
}
inline Pair derive_prop_43(const BasePoint& b) {
  return {einsum("k,ijkl->ijl", b.xi, g3(b).diff()), prop_43(b).diff()};
}

// ---------------------------------------------------------------------------
// dimension 3

inline Pair identity_43a(const BasePoint& b) {
  return {b.rs + transpose(b.rs) - b.rho() - einsum("ab,ia,jb->ij", b.rho(), b.phi, b.phi),
          0.5 * (b.taus - b.tau()) * b.g()};
}
inline Pair identity_43b(const BasePoint& b) {
  return {0.5 * einsum("a,jacb,bc->j", b.xi, b.rm(), b.phi), einsum("a,jb,ab->j", b.xi, b.phi, b.rho())};
}
inline Pair identity_43c(const BasePoint& b) {
  return {scalar(b.taus - b.tau() + 4.0, b.dim), scalar(2.0 * b.trh2, b.dim)};
}
inline T ricci_operator(const BasePoint& b) { return einsum("ja,al->jl", b.rho(), b.ginv()); }
inline Pair identity_43d(const BasePoint& b) {
  const T q = ricci_operator(b);
  const T d = kronecker(b.dim);
  const T& g = b.g();
  return {b.rm(), einsum("jk,il->ijkl", g, q) - einsum("ik,jl->ijkl", g, q) + einsum("jk,il->ijkl", b.rho(), d) -
                      einsum("ik,jl->ijkl", b.rho(), d) -
                      0.5 * b.tau() * (einsum("jk,il->ijkl", g, d) - einsum("ik,jl->ijkl", g, d))};
}

// ---------------------------------------------------------------------------
// H-contact chain

/// Qxi against f xi with f = g(Q xi, xi)/g(xi, xi); scaled by |Q xi| + |xi|.
inline double h_contact_angle(const BasePoint& b) {
  const T qxi = einsum("a,al->l", b.xi, ricci_operator(b));
  const double gxx = einsum("a,b,ab->", b.xi, b.xi, b.g()).value();
  const double fq = einsum("l,m,lm->", qxi, b.xi, b.g()).value() / gxx;
  const T perp = qxi - fq * b.xi;
  const double np = std::sqrt(std::max(0.0, einsum("l,m,lm->", perp, perp, b.g()).value()));
  const double nq = std::sqrt(std::max(0.0, einsum("l,m,lm->", qxi, qxi, b.g()).value()));
  return np / (nq + std::sqrt(gxx));
}
inline Pair identity_45b(const BasePoint& b) { return {scalar(h_contact_angle(b), b.dim), scalar(0.0, b.dim)}; }
inline Pair identity_410(const BasePoint& b) { return {scalar(b.f, b.dim), scalar(2.0 - b.trh2, b.dim)}; }
inline Pair identity_411(const BasePoint& b) {
  const T d = kronecker(b.dim);
  const T q = ricci_operator(b);
  const double c = 0.5 * b.tau() - b.f;
  return {einsum("ijkl,k->ijl", b.rm(), b.xi),
          c * (einsum("i,jl->ijl", b.eta, d) - einsum("j,il->ijl", b.eta, d)) - einsum("i,jl->ijl", b.eta, q) +
              einsum("j,il->ijl", b.eta, q)};
}
inline Pair identity_412(const BasePoint& b) {
  const T q = ricci_operator(b);
  return {einsum("ai,ijkl,j,k->al", b.phi, b.rm(), b.xi, b.xi),
          -(0.5 * b.tau() - b.f) * b.phi + einsum("ai,il->al", b.phi, q)};
}
inline Pair identity_413(const BasePoint& b) {
  const T& gi = b.ginv();
  const T d = kronecker(b.dim);
  const T q = ricci_operator(b);
  const T phi_up = einsum("ib,bk->ik", gi, b.phi);  // phi^{ik}
  const T h_up = einsum("ib,ba->ia", gi, b.h);      // h^{ia}
  const double c = 0.5 * b.tau() - b.f;
  T L = -1.0 * einsum("k,kjb,bl->jl", b.xi, b.drho, gi) + einsum("k,lb,bjk->jl", b.xi, gi, b.drho) +
        einsum("jikl,ik->jl", b.rm(), phi_up) + einsum("jikl,ak,ia->jl", b.rm(), b.phi, h_up);
  const T phi_h = einsum("aj,la->jl", b.phil, h_up);  // phi_aj h^{la}
  T Rr = (0.5 * b.xi_tau - b.xi_f) * d + c * (-1.0 * b.phi + phi_h) -
         einsum("il,ji->jl", q, -1.0 * b.phi + einsum("aj,ia->ji", b.phil, h_up));
  return {L, Rr};
}
/// tr(h phi Q) = Q_j^a phi_a^b h_b^j
inline double tr_h_phi_q(const BasePoint& b) { return einsum("ja,ab,bj->", ricci_operator(b), b.phi, b.h).value(); }
inline Pair identity_414(const BasePoint& b) {
  return {scalar(2.0 * b.xi_tau - 3.0 * b.xi_f + 2.0 * tr_h_phi_q(b), b.dim), scalar(0.0, b.dim)};
}
inline Pair identity_415(const BasePoint& b) {
  const T q = ricci_operator(b);
  return {einsum("i,ikl->kl", b.xi, b.dh),
          b.phi - einsum("al,ba,kb->kl", b.h, b.h, b.phi) + (0.5 * b.tau() - b.f) * b.phi -
              einsum("al,ka->kl", b.phi, q)};
}
inline Pair identity_416(const BasePoint& b) {
  return {scalar(0.5 * b.xi_trh2, b.dim), scalar(-tr_h_phi_q(b), b.dim)};
}
inline Pair identity_417(const BasePoint& b) { return {scalar(b.xi_tau + b.xi_trh2, b.dim), scalar(0.0, b.dim)}; }

// ---------------------------------------------------------------------------
// cone relations (direct cone computation on the left, base formula on the right)

inline double conformal(const ConePoint& c) { return std::exp(2.0 * c.t); }

inline Pair cone_j_squared(const ConePoint& c) {
  return {einsum("la,am->lm", c.j, c.j), -1.0 * kronecker(c.dim)};
}
inline Pair cone_hermitian(const ConePoint& c) { return {einsum("la,mb,ab->lm", c.j, c.j, c.g()), c.g()}; }
inline Pair cone_closed(const ConePoint& c) { return {c.domega, zeros_like(c.domega)}; }

/// Christoffel symbols of the cone against nabla_X Y + g(X,Y) d_t, nabla_X d_t = -X, ...
inline Pair cone_connection(const BasePoint& b, const ConePoint& c) {
  const int d = b.dim, D = c.dim, t = D - 1;
  T f(D, {Slot::Up, Slot::Down, Slot::Down});
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) f(k, i, j) = b.curv.gamma(k, i, j);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(t, i, j) = b.g()(i, j);
  for (int i = 0; i < d; ++i) {
    f(i, i, t) = -1.0;
    f(i, t, i) = -1.0;
  }
  f(t, t, t) = -1.0;
  return {c.curv.gamma, f};
}

inline Sides sides(const Pair& p) { return Sides(p.lhs, p.rhs); }

inline Sides structure_axiom(const BasePoint& b) {
  Sides s = sides(phi_squared(b));
  const Pair a = phi_xi(b), c = eta_phi(b), d = eta_xi(b);
  return s.append(a.lhs, a.rhs).append(c.lhs, c.rhs).append(d.lhs, d.rhs);
}
inline Sides metric_axiom(const BasePoint& b) {
  Sides s = sides(compatible_metric(b));
  const Pair e = eta_dual(b);
  return s.append(e.lhs, e.rhs);
}

// (2.11)-(2.13): components of nabla Jbar on the cone
inline Sides cone_nabla_j_base(const BasePoint& b, const ConePoint& c) {
  const int t = c.dim - 1, d = b.dim;
  Sides s(restrict(c.dj, {-1, -1, -1}, d),
          b.dphi - einsum("ij,k->ijk", b.g(), b.xi) + einsum("j,ik->ijk", b.eta, kronecker(d)));
  return s.append(restrict(c.dj, {-1, -1, t}, d), -1.0 * (b.phil + b.deta));
}
inline Sides cone_nabla_j_xi(const BasePoint& b, const ConePoint& c) {
  const int t = c.dim - 1, d = b.dim;
  Sides s(restrict(c.dj, {-1, t, -1}, d), b.dxi + b.phi);
  return s.append(restrict(c.dj, {-1, t, t}, d), T(d, {Slot::Down}));
}
inline Sides cone_nabla_j_t(const BasePoint& b, const ConePoint& c) {
  const int t = c.dim - 1, d = b.dim;
  Sides s;
  for (const std::vector<int>& fix : {std::vector<int>{t, -1, -1}, {t, -1, t}, {t, t, -1}, {t, t, t}}) {
    const T part = restrict(c.dj, fix, d);
    s.append(part, zeros_like(part));
  }
  return s;
}
inline Sides cone_nabla_j(const BasePoint& b, const ConePoint& c) {
  Sides s = cone_nabla_j_base(b, c);
  for (const Sides& o : {cone_nabla_j_xi(b, c), cone_nabla_j_t(b, c)}) {
    s.lhs.insert(s.lhs.end(), o.lhs.begin(), o.lhs.end());
    s.rhs.insert(s.rhs.end(), o.rhs.begin(), o.rhs.end());
  }
  return s;
}
/// e^{2t} nabla_i Jbar_jk = nabla_i phi_jk - g_ij eta_k + eta_j g_ik
inline Pair cone_nabla_j_lowered(const BasePoint& b, const ConePoint& c) {
  return {conformal(c) * restrict(c.djl, {-1, -1, -1}, b.dim),
          b.dphil - einsum("ij,k->ijk", b.g(), b.eta) + einsum("j,ik->ijk", b.eta, b.g())};
}

/// Rbar_ijk^l = R_ijk^l - delta_i^l g_jk + delta_j^l g_ik, every component with a t index vanishing.
inline Pair cone_curvature(const BasePoint& b, const ConePoint& c) {
  T f(c.dim, c.rm().slots());
  for (int i = 0; i < b.dim; ++i)
    for (int j = 0; j < b.dim; ++j)
      for (int k = 0; k < b.dim; ++k)
        for (int l = 0; l < b.dim; ++l)
          f(i, j, k, l) = b.rm()(i, j, k, l) - (i == l ? b.g()(j, k) : 0.0) + (j == l ? b.g()(i, k) : 0.0);
  return {c.rm(), f};
}

/// Cone tensor of rank two from its base block, the (j, t) and (t, k) columns and the (t, t) entry.
inline T cone_block(const T& base, const T& base_t, const T& t_base, double tt, Slot s0 = Slot::Down,
                    Slot s1 = Slot::Down) {
  const int d = base.dim(), t = d;
  T r(d + 1, {s0, s1});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) r(i, j) = base(i, j);
    r(i, t) = base_t(i);
    r(t, i) = t_base(i);
  }
  r(t, t) = tt;
  return r;
}

inline Pair cone_ricci(const BasePoint& b, const ConePoint& c) {
  const T z(b.dim, {Slot::Down});
  return {c.rho(), cone_block(b.rho() - 2.0 * b.n * b.g(), z, z, 0.0)};
}
inline Pair cone_scalar(const BasePoint& b, const ConePoint& c) {
  const double n = b.n;
  return {scalar(c.tau(), 1), scalar(conformal(c) * (b.tau() - 4.0 * n * n - 2.0 * n), 1)};
}
/// (1/2) xi^a R_iac^b phi_b^c
inline T xi_curvature_phi(const BasePoint& b) { return 0.5 * einsum("a,iacb,bc->i", b.xi, b.rm(), b.phi); }
inline Pair cone_star_ricci(const BasePoint& b, const ConePoint& c) {
  const T z(b.dim, {Slot::Down});
  return {c.rs, cone_block(b.rs - b.g() + einsum("i,j->ij", b.eta, b.eta), xi_curvature_phi(b), z, 0.0)};
}
inline Pair cone_star_scalar(const BasePoint& b, const ConePoint& c) {
  return {scalar(c.taus, 1), scalar(conformal(c) * (b.taus - 2.0 * b.n), 1)};
}
inline Pair cone_j_ricci(const BasePoint& b, const ConePoint& c) {
  const double n = b.n;
  const T& e = b.eta;
  return {einsum("la,mb,ab->lm", c.j, c.j, c.rho()),
          cone_block(einsum("ab,ja,kb->jk", b.rho(), b.phi, b.phi) - 2.0 * n * b.g() + 2.0 * n * einsum("j,k->jk", e, e),
                     einsum("ab,ja,b->j", b.rho(), b.phi, b.xi), einsum("ab,a,kb->k", b.rho(), b.xi, b.phi),
                     einsum("ab,a,b->", b.rho(), b.xi, b.xi).value() - 2.0 * n)};
}
/// printed form keeps rho*_lj xi^l eta_k in the base block; the variant drops it
inline Pair cone_j_star_ricci(const BasePoint& b, const ConePoint& c, bool printed = true) {
  const T z(b.dim, {Slot::Down});
  T base = einsum("ab,ja,kb->jk", b.rs, b.phi, b.phi) - b.g() + einsum("j,k->jk", b.eta, b.eta);
  if (printed) base += einsum("lj,l,k->jk", b.rs, b.xi, b.eta);
  return {einsum("la,mb,ab->lm", c.j, c.j, c.rs), cone_block(base, z, xi_curvature_phi(b), 0.0)};
}

// (2.26)(1)-(8): e^{2t}-scaled Jbar transvections of Rbar
inline std::vector<Pair> cone_j_curvature(const BasePoint& b, const ConePoint& c) {
  const int t = c.dim - 1, d = b.dim;
  const double s = conformal(c);
  const T& J = c.j;
  const T& Rb = c.r();
  const T& R = b.r();
  const T& p = b.phi;
  const T& pl = b.phil;
  const T& g = b.g();
  const T& e = b.eta;
  const T& x = b.xi;
  const T four = s * einsum("abcd,ia,jb,kc,ld->ijkl", Rb, J, J, J, J);
  const T two = s * einsum("ia,jb,abkl->ijkl", J, J, Rb);
  const T mixed = s * einsum("ia,kc,ajcl->ijkl", J, J, Rb);
  const T gee = g - einsum("j,l->jl", e, e);
  std::vector<Pair> out;
  out.push_back({restrict(four, {-1, -1, -1, -1}, d),
             einsum("abcd,ia,jb,kc,ld->ijkl", R, p, p, p, p) - einsum("il,jk->ijkl", g, g) +
                 einsum("ik,jl->ijkl", g, g) + einsum("il,j,k->ijkl", g, e, e) + einsum("jk,i,l->ijkl", g, e, e) -
                 einsum("jl,i,k->ijkl", g, e, e) - einsum("ik,j,l->ijkl", g, e, e)});
  out.push_back({restrict(two, {-1, -1, -1, -1}, d), einsum("ia,jb,abkl->ijkl", p, p, R) -
                                                     einsum("il,jk->ijkl", pl, pl) + einsum("jl,ik->ijkl", pl, pl)});
  out.push_back({restrict(mixed, {-1, -1, -1, -1}, d), einsum("ia,kc,ajcl->ijkl", p, p, R) +
                                                       einsum("il,jk->ijkl", pl, pl) + einsum("jl,ik->ijkl", g, g) -
                                                       einsum("jl,i,k->ijkl", g, e, e)});
  out.push_back({restrict(two, {t, -1, -1, -1}, d), einsum("a,jb,abkl->jkl", x, p, R) - einsum("l,jk->jkl", e, pl) +
                                                    einsum("k,jl->jkl", e, pl)});
  out.push_back({restrict(mixed, {t, -1, -1, -1}, d), einsum("a,kc,ajcl->jkl", x, p, R) + einsum("l,jk->jkl", e, pl)});
  out.push_back({restrict(four, {t, -1, -1, -1}, d), einsum("abcd,a,jb,kc,ld->jkl", R, x, p, p, p)});
  out.push_back({restrict(mixed, {t, -1, t, -1}, d), einsum("a,c,ajcl->jl", x, x, R) + gee});
  out.push_back({restrict(four, {t, -1, t, -1}, d), einsum("abcd,a,jb,c,ld->jl", R, x, p, x, p) + gee});
  return out;
}

/// the almost Kahler curvature identity on the cone
inline Pair cone_identity_31(const ConePoint& c) {
  const T& R = c.r();
  const T& J = c.j;
  T L = R + einsum("abcd,la,mb,nc,kd->lmnk", R, J, J, J, J) + einsum("la,nc,amck->lmnk", J, J, R) +
        einsum("mb,kd,lbnd->lmnk", J, J, R) - einsum("la,mb,abnk->lmnk", J, J, R) -
        einsum("nc,kd,lmcd->lmnk", J, J, R) + einsum("la,kd,amnd->lmnk", J, J, R) +
        einsum("mb,nc,lbck->lmnk", J, J, R);
  return {L, 2.0 * einsum("ab,alm,bnk->lmnk", c.ginv(), c.djl, c.djl)};
}
inline Pair cone_identity_312(const ConePoint& c) {
  return {c.rs + transpose(c.rs) - c.rho() - einsum("ma,nb,ab->mn", c.j, c.j, c.rho()),
          einsum("ab,ls,aml,bns->mn", c.ginv(), c.g(), c.dj, c.dj)};
}
inline Pair cone_identity_313(const ConePoint& c) {
  return {scalar(2.0 * (c.taus - c.tau()), 1), scalar(c.ndj, 1)};
}
inline Pair cone_identity_316(const BasePoint& b, const ConePoint& c) {
  const double n = b.n;
  return {scalar(c.taus - c.tau(), 1), scalar(conformal(c) * (b.taus - b.tau() + 4.0 * n * n), 1)};
}
/// g^{ab} (nabla_a Jbar_d^c) nabla_b Jbar_c^d over base indices
inline Pair cone_identity_317(const BasePoint& b, const ConePoint& c) {
  const T dj = restrict(c.dj, {-1, -1, -1}, b.dim);
  return {einsum("ab,adc,bcd->", b.ginv(), dj, dj), scalar(-(b.nphi - 4.0 * b.n), b.dim)};
}
inline Sides cone_identity_318(const BasePoint& b, const ConePoint& c) {
  const double n = b.n, s = conformal(c);
  Sides out;
  out.append(c.ndj, s * 2.0 * (b.taus - b.tau() + 4.0 * n * n));
  out.append(c.ndj, s * (b.nphi - 4.0 * n + 2.0 * b.trh2));
  return out;
}
/// four-dimensional almost Kahler identity
inline Pair cone_identity_43(const ConePoint& c) {
  return {c.rs + transpose(c.rs) - c.rho() - einsum("ab,la,mb->lm", c.rho(), c.j, c.j),
          0.5 * (c.taus - c.tau()) * c.g()};
}

}  // namespace conecurv::formulas
