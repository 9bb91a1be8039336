#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "../cone/cone.hpp"
#include "../contact/point.hpp"
#include "../contact/structure.hpp"
#include "formulas.hpp"
#include "residual.hpp"

namespace conecurv {

enum class Level { Base, Cone };

struct EvalContext {
  const BasePoint& base;
  const ConePoint* cone = nullptr;  // set for cone-level checks
  DEtaConvention deta = DEtaConvention::Half;
};

/// One identity: stable id, printed label, group, and an evaluator producing both sides at a point.
struct IdentityCheck {
  std::string id;
  std::string label;
  std::string group;
  Level level = Level::Base;
  bool dim3_only = false;
  bool hcontact = false;  // part of the chain that presupposes Q xi = f xi
  std::string note;
  std::function<Sides(const EvalContext&)> eval;
};

inline const std::vector<std::string>& group_names() {
  static const std::vector<std::string> g{"axioms", "basic", "cone",     "identities",
                                          "gray",   "dim3",  "hcontact", "classify"};
  return g;
}

namespace detail {

using BaseFn = formulas::Pair (*)(const BasePoint&);

inline IdentityCheck base(std::string id, std::string label, std::string group, BaseFn f, std::string note = {}) {
  IdentityCheck c{std::move(id), std::move(label), std::move(group), Level::Base, false, false, std::move(note), {}};
  c.eval = [f](const EvalContext& x) { return formulas::sides(f(x.base)); };
  return c;
}

inline IdentityCheck cone(std::string id, std::string label, std::function<Sides(const BasePoint&, const ConePoint&)> f,
                          std::string note = {}) {
  IdentityCheck c{std::move(id), std::move(label), "cone", Level::Cone, false, false, std::move(note), {}};
  c.eval = [f](const EvalContext& x) { return f(x.base, *x.cone); };
  return c;
}

inline std::vector<IdentityCheck> build_table() {
  namespace F = formulas;
  std::vector<IdentityCheck> t;
  auto add = [&](IdentityCheck c) { t.push_back(std::move(c)); };
  auto pair2 = [](formulas::Pair (*f)(const BasePoint&, const ConePoint&)) {
    return [f](const BasePoint& b, const ConePoint& c) { return formulas::sides(f(b, c)); };
  };
  auto pair1 = [](formulas::Pair (*f)(const ConePoint&)) {
    return [f](const BasePoint&, const ConePoint& c) { return formulas::sides(f(c)); };
  };

  // axioms
  {
    IdentityCheck c{"1.1", "Eq (1.1)", "axioms", Level::Base, false, false, {}, {}};
    c.eval = [](const EvalContext& x) { return F::structure_axiom(x.base); };
    add(c);
    IdentityCheck m{"1.2", "Eq (1.2)", "axioms", Level::Base, false, false, {}, {}};
    m.eval = [](const EvalContext& x) { return F::metric_axiom(x.base); };
    add(m);
    add(base("1.2-skew", "Eq (1.2)", "axioms", F::phi_skew, "g(phi X, Y) + g(X, phi Y) = 0"));
    IdentityCheck d{"1.3", "Eq (1.3)", "axioms", Level::Base, false, false, {}, {}};
    d.eval = [](const EvalContext& x) { return F::sides(F::contact_metric(x.base, x.deta)); };
    add(d);
  }

  // h, *-Ricci, basic formulas
  {
    IdentityCheck c{"2.8", "Eq (2.8)", "basic", Level::Base, false, false, {}, {}};
    c.eval = [](const EvalContext& x) {
      Sides s = F::sides(F::h_xi(x.base));
      const F::Pair tr = F::h_trace(x.base);
      return s.append(tr.lhs, tr.rhs);
    };
    add(c);
  }
  add(base("2.8-sym", "Eq (2.8)", "basic", F::h_symmetric, "g(hX, Y) = g(X, hY)"));
  add(base("2.9", "Eq (2.9)", "basic", F::phi_h_anticommute));
  add(base("2.25", "Eq (2.25)", "basic", F::star_symmetry));
  add(base("3.5.1", "Eq (3.5)(1)", "basic", F::div_xi));
  add(base("3.5.2", "Eq (3.5)(2)", "basic", F::xi_nabla_phi));
  add(base("3.5.3", "Eq (3.5)(3)", "basic", F::nabla_xi));
  add(base("3.5.4", "Eq (3.5)(4)", "basic", F::xi_nabla_h));
  add(base("3.5.5", "Eq (3.5)(5)", "basic", F::div_phi));
  add(base("3.5.6", "Eq (3.5)(6)", "basic", F::ricci_xi_xi));
  add(base("3.6", "Eq (3.6)", "basic", F::cyclic_nabla_phi));
  add(base("3.7", "Eq (3.7)", "basic", F::norm_nabla_eta));

  // cone structure and transformation laws
  add(cone("1.4-J2", "Eq (1.4)", pair1(F::cone_j_squared), "Jbar^2 = -Id"));
  add(cone("1.4-herm", "Eq (1.4)", pair1(F::cone_hermitian), "gbar(Jbar X, Jbar Y) = gbar(X, Y)"));
  add(cone("almost-kahler", "Eq (1.4)", pair1(F::cone_closed), "d Omega = 0"));
  add(cone("2.10", "Eq (2.10)", pair2(F::cone_connection)));
  add(cone("2.11", "Eq (2.11)", F::cone_nabla_j_base));
  add(cone("2.12", "Eq (2.12)", F::cone_nabla_j_xi));
  add(cone("2.13", "Eq (2.13)", F::cone_nabla_j_t));
  add(cone("2.14", "Eq (2.14)", pair2(F::cone_nabla_j_lowered), "scaled by e^{2t}"));
  add(cone("2.16", "Eq (2.16)", F::cone_nabla_j));
  add(cone("2.18", "Eq (2.18)", pair2(F::cone_curvature)));
  add(cone("2.19", "Eq (2.19)", pair2(F::cone_ricci)));
  add(cone("2.20", "Eq (2.20)", pair2(F::cone_scalar)));
  add(cone("2.21", "Eq (2.21)", pair2(F::cone_star_ricci)));
  add(cone("2.22", "Eq (2.22)", pair2(F::cone_star_scalar)));
  add(cone("2.23", "Eq (2.23)", pair2(F::cone_j_ricci)));
  add(cone(
      "2.24", "Eq (2.24)",
      [](const BasePoint& b, const ConePoint& c) { return F::sides(F::cone_j_star_ricci(b, c, true)); },
      "printed form, with rho*_lj xi^l eta_k"));
  add(cone(
      "2.24-variant", "Eq (2.24)",
      [](const BasePoint& b, const ConePoint& c) { return F::sides(F::cone_j_star_ricci(b, c, false)); },
      "sign-variant without rho*_lj xi^l eta_k"));
  for (int k = 0; k < 8; ++k)
    add(cone("2.26." + std::to_string(k + 1), "Eq (2.26)(" + std::to_string(k + 1) + ")",
             [k](const BasePoint& b, const ConePoint& c) {
               return F::sides(F::cone_j_curvature(b, c)[static_cast<std::size_t>(k)]);
             }));
  add(cone("3.1", "Eq (3.1)", pair1(F::cone_identity_31)));
  add(cone("3.12", "Eq (3.12)", pair1(F::cone_identity_312)));
  add(cone("3.13", "Eq (3.13)", pair1(F::cone_identity_313)));
  add(cone("3.16", "Eq (3.16)", pair2(F::cone_identity_316)));
  add(cone("3.17", "Eq (3.17)", pair2(F::cone_identity_317)));
  add(cone("3.18", "Eq (3.18)", F::cone_identity_318));

  // contact identities and traced forms
  add(base("3.2", "Eq (3.2)", "identities", F::identity_32));
  add(base("3.3", "Eq (3.3)", "identities", F::identity_33));
  add(base("3.4", "Eq (3.4)", "identities", F::identity_34));
  add(base("3.8", "Eq (3.8)", "identities", F::identity_38));
  add(base("3.9", "Eq (3.9)", "identities", F::identity_39));
  add(base("3.10", "Eq (3.10)", "identities", F::identity_310));
  add(base("3.11", "Eq (3.11)", "identities", F::identity_311));
  add(base("3.14", "Eq (3.14)", "identities", F::identity_314));
  add(base("3.15", "Eq (3.15)", "identities", F::identity_315));
  add(base("3.15=3.10", "Eq (3.15)", "identities", F::coincidence_315_310, "residual of (3.15) against half that of (3.10)"));
  add(base("3.14:derived", "Eq (3.14)", "identities", F::derivation_314, "(3.8) residual rebuilt from (3.14) and (3.4)"));
  add(base("3.19", "Eq (3.19)", "identities", F::identity_319));

  // classification
  add(base("3.20", "Eq (3.20)", "classify", F::sasakian, "Sasakian"));
  add(base("k-contact", "Sec 4, h = 0", "classify", F::k_contact, "K-contact"));
  add(base("prop4.2", "Prop 4.2", "classify", F::prop_42));

  // Gray identities
  add(base("G1", "Lemma 4.1 (G1)", "gray", F::g1));
  add(base("G1-1", "Lemma 4.1 (G1-1)", "gray", F::g1_1));
  add(base("G2", "Lemma 4.2 (G2)", "gray", F::g2));
  add(base("G2-1", "Lemma 4.2 (G2-1)", "gray", F::g2_1));
  add(base("G2-2", "Lemma 4.2 (G2-2)", "gray", F::g2_2));
  add(base("G2-3", "Lemma 4.2 (G2-3)", "gray", F::g2_3));
  add(base("G2-4", "Lemma 4.2 (G2-4)", "gray", F::g2_4));
  add(base("G3", "Lemma 4.3 (G3)", "gray", F::g3));
  add(base("G3-1", "Lemma 4.3 (G3-1)", "gray", F::g3_1));
  add(base("G3-2", "Lemma 4.3 (G3-2)", "gray", F::g3_2));
  add(base("prop4.3", "Prop 4.3", "gray", F::prop_43));
  add(base("G1-1:derived", "Lemma 4.1 (G1-1)", "gray", F::derive_g1_1, "xi-transvection of the (G1) residual"));
  add(base("G2-1:derived", "Lemma 4.2 (G2-1)", "gray", F::derive_g2_1, "xi-transvection of the (G2) residual"));
  add(base("G2-2:derived", "Lemma 4.2 (G2-2)", "gray", F::derive_g2_2, "xi-transvection of the (G2) residual"));
  add(base("G2-3:derived", "Lemma 4.2 (G2-3)", "gray", F::derive_g2_3, "xi-transvection of the (G2) residual"));
  add(base("G2-4:derived", "Lemma 4.2 (G2-4)", "gray", F::derive_g2_4, "xi-transvection of the (G2) residual"));
  add(base("G3-1:derived", "Lemma 4.3 (G3-1)", "gray", F::derive_g3_1, "xi-transvection of the (G3) residual"));
  add(base("G3-2:derived", "Lemma 4.3 (G3-2)", "gray", F::derive_g3_2, "xi-transvection of the (G3) residual"));
  add(base("prop4.3:derived", "Prop 4.3", "gray", F::derive_prop_43, "xi-transvection of the (G3) residual"));

  // dimension three
  {
    IdentityCheck c = cone("4.3", "Eq (4.3)", pair1(F::cone_identity_43));
    c.group = "dim3";
    c.dim3_only = true;
    add(c);
  }
  for (auto [id, f] : {std::pair<const char*, BaseFn>{"4.3a", F::identity_43a}, {"4.3b", F::identity_43b},
                       {"4.3c", F::identity_43c}, {"4.3d", F::identity_43d}}) {
    IdentityCheck c = base(id, std::string("Eq (") + id + ")", "dim3", f);
    c.dim3_only = true;
    add(c);
  }

  // H-contact chain
  for (auto [id, f] : {std::pair<const char*, BaseFn>{"4.5b", F::identity_45b}, {"4.10", F::identity_410},
                       {"4.11", F::identity_411}, {"4.12", F::identity_412}, {"4.13", F::identity_413},
                       {"4.14", F::identity_414}, {"4.15", F::identity_415}, {"4.16", F::identity_416},
                       {"4.17", F::identity_417}}) {
    IdentityCheck c = base(id, std::string("Eq (") + id + ")", "hcontact", f);
    c.dim3_only = true;
    c.hcontact = std::string(id) != "4.5b";
    add(c);
  }
  for (auto& c : t)
    if (c.id == "4.5b") c.note = "sine of the angle between Q xi and xi";
  return t;
}

}  // namespace detail

inline const std::vector<IdentityCheck>& identity_table() {
  static const std::vector<IdentityCheck> t = detail::build_table();
  return t;
}

inline const IdentityCheck* find_identity(const std::string& id) {
  const auto& t = identity_table();
  auto it = std::find_if(t.begin(), t.end(), [&](const IdentityCheck& c) { return c.id == id; });
  return it == t.end() ? nullptr : &*it;
}

inline bool is_group(const std::string& s) {
  const auto& g = group_names();
  return s == "all" || std::find(g.begin(), g.end(), s) != g.end();
}

/// Evaluate one identity at a base point (and cone point for cone-level checks).
inline double evaluate_residual(const IdentityCheck& c, const BasePoint& b, const ConePoint* cp = nullptr,
                                DEtaConvention deta = DEtaConvention::Half) {
  if (c.level == Level::Cone && !cp) throw std::logic_error("identity " + c.id + " needs a cone point");
  return residual(c.eval(EvalContext{b, cp, deta}));
}

}  // namespace conecurv
