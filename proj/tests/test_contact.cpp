#include <gtest/gtest.h>

#include "conecurv/api.hpp"
#include "conecurv/catalog/catalog.hpp"
#include "oracles.hpp"

using namespace conecurv;
namespace E = conecurv::expr;

namespace {

const Points& pts3() {
  static const Points p{{0.0, 0.0, 0.0}, {0.3, -0.6, 0.2}, {-0.8, 0.45, 0.9}, {0.71, 0.12, -2.5}};
  return p;
}

Points pts_for(const Model& m, int count = 6) { return sample_points(*m.structure().chart, count, 17); }

double worst(const Report& r, const std::string& id) { return r.find(id)->max_residual; }

TensorField scaled(const TensorField& f, double s) {
  std::vector<E::Expr> c;
  for (const auto& e : f.components()) c.push_back(E::Expr(s) * e);
  return TensorField(f.chart_ptr(), f.slots(), c);
}

}  // namespace

TEST(Catalog, HeisenbergMatchesFrameOracle) {
  for (int n : {1, 2}) {
    const ExampleEntry e = darboux_sasakian(n);
    const Model m(e.structure);
    const auto fr = oracle::frame_geometry(oracle::heisenberg_frame(n));
    for (const auto& p : pts_for(m, 4)) {
      const BasePoint b = m.base_at(p);
      EXPECT_NEAR(b.tau(), fr.tau, 1e-10);
      EXPECT_NEAR(b.taus, fr.tau_star, 1e-10);
      EXPECT_NEAR(b.trh2, fr.trh2, 1e-10);
      EXPECT_NEAR(b.nphi, fr.norm_nabla_phi, 1e-10);
      EXPECT_NEAR(b.neta, fr.norm_nabla_xi, 1e-10);
      EXPECT_NEAR(b.f, fr.f, 1e-10);
    }
    EXPECT_NEAR(fr.tau, e.expected.at("tau").value, 1e-12);
    EXPECT_NEAR(fr.tau_star, e.expected.at("tau_star").value, 1e-12);
    EXPECT_NEAR(fr.trh2, e.expected.at("trh2").value, 1e-12);
    EXPECT_NEAR(fr.norm_nabla_phi, e.expected.at("norm_nabla_phi").value, 1e-12);
    EXPECT_NEAR(fr.norm_nabla_xi, e.expected.at("norm_nabla_eta").value, 1e-12);
    if (n == 1) EXPECT_NEAR(fr.f, e.expected.at("f").value, 1e-12);
  }
}

TEST(Catalog, HeisenbergOracleNumbers) {
  const auto fr = oracle::frame_geometry(oracle::heisenberg_frame(1));
  EXPECT_NEAR(fr.tau, -2.0, 1e-14);
  EXPECT_NEAR(fr.tau_star, -6.0, 1e-14);
  EXPECT_NEAR(fr.trh2, 0.0, 1e-14);
  EXPECT_NEAR(fr.norm_nabla_phi, 4.0, 1e-14);
  EXPECT_NEAR(fr.norm_nabla_xi, 2.0, 1e-14);
  EXPECT_NEAR(fr.f, 2.0, 1e-14);
}

TEST(Catalog, FlatExampleAgainstFiniteDifferences) {
  const ExampleEntry e = flat_contact_r3();
  const Model m(e.structure);
  const auto& s = e.structure;
  for (const auto& p : pts3()) {
    const BasePoint b = m.base_at(p);
    // h from central differences of the components
    const auto h = oracle::h_fd(s, p);
    double trh2 = 0;
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(b.h(j, k), h[static_cast<std::size_t>(j * 3 + k)], 1e-8);
        trh2 += h[static_cast<std::size_t>(j * 3 + k)] * h[static_cast<std::size_t>(k * 3 + j)];
      }
    EXPECT_NEAR(trh2, 2.0, 1e-8);
    // constant metric g = Id/4: Gamma = 0, so nabla is the plain partial derivative
    double nphi = 0, neta = 0;
    for (int a = 0; a < 3; ++a)
      for (int j = 0; j < 3; ++j) {
        auto ev = [](const E::Expr& x) { return [x](const std::vector<double>& q) { return E::evaluate(x, q); }; };
        const double de = oracle::fd(ev(s.eta(j)), p, a);
        neta += 16 * de * de;
        for (int k = 0; k < 3; ++k) {
          const double dp = oracle::fd(ev(s.phi(j, k)), p, a);
          nphi += 4 * dp * dp;
        }
      }
    EXPECT_NEAR(nphi, 8.0, 1e-8);
    EXPECT_NEAR(neta, 4.0, 1e-8);
    EXPECT_NEAR(b.nphi, nphi, 1e-8);
    EXPECT_NEAR(b.neta, neta, 1e-8);
    EXPECT_LE(max_abs(b.rm()), 1e-14);
    EXPECT_NEAR(b.trh2, 2.0, 1e-12);
    EXPECT_NEAR(b.taus, 0.0, 1e-12);
    EXPECT_NEAR(b.f, 0.0, 1e-12);
  }
  for (const char* k : {"tau", "tau_star", "trh2", "norm_nabla_phi", "norm_nabla_eta", "f"})
    EXPECT_TRUE(e.expected.count(k)) << k;
}

TEST(Catalog, ExpectedValuesMatchEngine) {
  for (const auto& name : example_names()) {
    const ExampleEntry e = get_example(name);
    const Model m(e.structure);
    const auto p = m.structure().chart->center();
    const BasePoint b = m.base_at(p);
    const ConePoint c = m.cone_at(p, 0.0);
    const std::map<std::string, double> got{{"tau", b.tau()},        {"tau_star", b.taus},   {"trh2", b.trh2},
                                            {"norm_nabla_phi", b.nphi}, {"norm_nabla_eta", b.neta}, {"f", b.f},
                                            {"cone_tau_t0", c.tau()},  {"cone_tau_star_t0", c.taus},
                                            {"cone_norm_nabla_j_t0", c.ndj}};
    for (const auto& [k, v] : e.expected) EXPECT_NEAR(got.at(k), v.value, 1e-6) << name << ' ' << k;
  }
}

TEST(Catalog, LookupByName) {
  EXPECT_EQ(get_example("darboux_sasakian(2)").structure.dim(), 5);
  EXPECT_EQ(get_example("darboux_sasakian").name, "heisenberg3");
  EXPECT_THROW(get_example("nope"), std::invalid_argument);
  EXPECT_THROW(darboux_sasakian(0), std::invalid_argument);
}

TEST(Axioms, ContactExamplesSatisfyAll) {
  for (const char* name : {"heisenberg3", "flat_contact_r3"}) {
    const Model m(get_example(name).structure);
    const Report r = check_axioms(m, pts_for(m, 10));
    for (const auto& x : r.results) EXPECT_LE(x.max_residual, 1e-10) << name << ' ' << x.id;
    EXPECT_TRUE(r.all_pass());
  }
}

TEST(Axioms, LieDerivativeOfPhiVanishesOnHeisenberg) {
  const Model m(darboux_sasakian(1).structure);
  for (const auto& p : pts3()) {
    const HField h = compute_h(m, p);
    EXPECT_LE(max_abs(h.h), 1e-12);
    EXPECT_NEAR(h.trh2, 0.0, 1e-12);
  }
}

TEST(Axioms, DoublingTheMetricBreaksCompatibility) {
  AlmostContactStructure s = darboux_sasakian(1).structure;
  s.g = MetricField(scaled(s.g.field(), 2.0));
  const Model m(s);
  const Report r = check_axioms(m, pts3());
  EXPECT_LE(worst(r, "1.1"), 1e-12);
  EXPECT_GT(worst(r, "1.2"), 1e-3);
  EXPECT_GT(worst(r, "1.3"), 1e-3);
  EXPECT_FALSE(r.all_pass());
}

TEST(Axioms, CompatibleRescalingFlagsOnlyContactCondition) {
  // g -> c g, eta -> sqrt(c) eta, xi -> xi / sqrt(c) keeps (1.1) and (1.2)
  const double c = 2.0;
  AlmostContactStructure s = darboux_sasakian(1).structure;
  s.g = MetricField(scaled(s.g.field(), c));
  s.eta = scaled(s.eta, std::sqrt(c));
  s.xi = scaled(s.xi, 1 / std::sqrt(c));
  const Model m(s);
  const Report r = check_axioms(m, pts3());
  EXPECT_LE(worst(r, "1.1"), 1e-12);
  EXPECT_LE(worst(r, "1.2"), 1e-12);
  EXPECT_LE(worst(r, "1.2-skew"), 1e-12);
  EXPECT_GT(worst(r, "1.3"), 1e-3);
}

TEST(Axioms, DHomotheticDeformationStaysSasakian) {
  // eta' = a eta, xi' = xi/a, g' = a g + a(a - 1) eta (x) eta, phi' = phi
  const double a = 2.0;
  AlmostContactStructure s = darboux_sasakian(1).structure;
  const TensorField eta = s.eta;
  TensorField g = scaled(s.g.field(), a);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const E::Expr v = g(i, j) + E::Expr(a * (a - 1)) * eta(i) * eta(j);
      g = g.with({i, j}, v).with({j, i}, v);
    }
  s.g = MetricField(g);
  s.eta = scaled(eta, a);
  s.xi = scaled(s.xi, 1 / a);
  const Model m(s);
  const Report r = check_axioms(m, pts3());
  EXPECT_TRUE(r.all_pass());
  const Classification c = classify(m, pts3());
  EXPECT_TRUE(c.is_sasakian);
  EXPECT_TRUE(c.is_k_contact);
}

TEST(Axioms, DEtaConventionIsDetected) {
  const Model half(flat_contact_r3(DEtaConvention::Half).structure);
  const Model plain(flat_contact_r3(DEtaConvention::Plain).structure);
  EXPECT_LE(worst(check_axioms(half, pts3(), DEtaConvention::Half), "1.3"), 1e-12);
  EXPECT_GT(worst(check_axioms(half, pts3(), DEtaConvention::Plain), "1.3"), 1e-3);
  EXPECT_LE(worst(check_axioms(plain, pts3(), DEtaConvention::Plain), "1.3"), 1e-12);
  const Report r = check_axioms(half, pts3(), DEtaConvention::Plain);
  ASSERT_EQ(r.deta_satisfied.size(), 1u);
  EXPECT_EQ(r.deta_satisfied[0], "half");
}

TEST(Axioms, CounterexampleIsNotContact) {
  const Model m(non_contact_counterexample().structure);
  const Report r = check_axioms(m, pts3());
  EXPECT_LE(worst(r, "1.1"), 1e-12);
  EXPECT_LE(worst(r, "1.2"), 1e-12);
  EXPECT_GT(worst(r, "1.3"), 1e-3);
  EXPECT_EQ(r.classification.at("contact_form"), false);
}

TEST(Basic, FormulaSuiteOnContactExamples) {
  for (const char* name : {"heisenberg3", "flat_contact_r3"}) {
    const Model m(get_example(name).structure);
    const Report r = basic_formula_suite(m, pts_for(m, 10));
    for (const auto& x : r.results) EXPECT_LE(x.max_residual, 1e-8) << name << ' ' << x.id;
  }
}

TEST(Basic, StarCurvatureOnHeisenberg) {
  const Model m(darboux_sasakian(1).structure);
  const StarCurvature s = star_curvature(m, {0.2, 0.1, -0.4});
  EXPECT_NEAR(s.tau_star, -6.0, 1e-10);
  // rho* (xi, .) = 0 for any almost contact metric structure
  const BasePoint b = m.base_at(std::vector<double>{0.2, 0.1, -0.4});
  for (int j = 0; j < 3; ++j) {
    double v = 0;
    for (int a = 0; a < 3; ++a) v += b.xi(a) * s.rho_star(a, j);
    EXPECT_NEAR(v, 0.0, 1e-12);
  }
}

TEST(Classify, SasakianOnlyForHeisenberg) {
  const Model h(darboux_sasakian(1).structure), f(flat_contact_r3().structure);
  const Classification ch = classify(h, pts3()), cf = classify(f, pts3());
  EXPECT_TRUE(ch.is_sasakian);
  EXPECT_TRUE(ch.is_k_contact);
  EXPECT_FALSE(cf.is_sasakian);
  EXPECT_FALSE(cf.is_k_contact);
  EXPECT_GT(cf.sasakian_residual, 1e-3);
}

TEST(HContact, FunctionF) {
  const Model h(darboux_sasakian(1).structure), f(flat_contact_r3().structure);
  const HContact a = h_contact_f(h, pts3());
  EXPECT_TRUE(a.h_contact);
  for (double v : a.f) EXPECT_NEAR(v, 2.0, 1e-10);
  const HContact b = h_contact_f(f, pts3());
  EXPECT_TRUE(b.h_contact);
  for (double v : b.f) EXPECT_NEAR(v, 0.0, 1e-10);
  EXPECT_LE(b.f_residual, 1e-10);
  EXPECT_THROW(h_contact_f(Model(darboux_sasakian(2).structure), pts3()), std::invalid_argument);
}
