#include <gtest/gtest.h>

#include "conecurv/api.hpp"
#include "conecurv/catalog/catalog.hpp"
#include "oracles.hpp"

using namespace conecurv;

namespace {

Points pts(const Model& m, int count = 8) { return sample_points(*m.structure().chart, count, 99); }

bool passes(const Report& r, const std::string& id) { return r.find(id)->verdict == Verdict::Pass; }

double engine(const std::string& id, const BasePoint& b, const ConePoint* c = nullptr) {
  return evaluate_residual(*find_identity(id), b, c);
}

}  // namespace

TEST(LoopOracle, AgreesWithEngineOnDim3Identities) {
  for (const auto& name : example_names()) {
    const Model m(get_example(name).structure);
    for (const auto& p : pts(m, 12)) {
      const BasePoint b = m.base_at(p);
      const oracle::Loops o(b);
      EXPECT_NEAR(o.r43a(), engine("4.3a", b), 1e-12) << name;
      EXPECT_NEAR(o.r43b(), engine("4.3b", b), 1e-12) << name;
      EXPECT_NEAR(o.r43c(), engine("4.3c", b), 1e-12) << name;
      EXPECT_NEAR(o.r43d(), engine("4.3d", b), 1e-12) << name;
      EXPECT_NEAR(o.r411(), engine("4.11", b), 1e-12) << name;
      EXPECT_NEAR(o.r412(), engine("4.12", b), 1e-12) << name;
      EXPECT_NEAR(o.r413(), engine("4.13", b), 1e-12) << name;
      EXPECT_NEAR(o.r415(), engine("4.15", b), 1e-12) << name;
      for (double t : {0.0, 0.5}) {
        const ConePoint c = m.cone_at(p, t);
        EXPECT_NEAR(oracle::cone43_loops(c), engine("4.3", b, &c), 1e-12) << name;
      }
    }
  }
}

TEST(Identities, TableIsWellFormed) {
  std::set<std::string> ids;
  for (const auto& c : identity_table()) {
    EXPECT_TRUE(ids.insert(c.id).second) << "duplicate " << c.id;
    EXPECT_TRUE(is_group(c.group)) << c.id;
    EXPECT_FALSE(c.label.empty()) << c.id;
  }
  EXPECT_EQ(find_identity("nope"), nullptr);
}

TEST(Identities, HeisenbergPassesEverything) {
  const Model m(darboux_sasakian(1).structure);
  const Report r = run_checks(m, pts(m), {"all"});
  for (const auto& x : r.results) EXPECT_EQ(x.verdict, Verdict::Pass) << x.id << ' ' << x.max_residual;
}

TEST(Identities, ContactIdentitiesOnFlatExample) {
  const Model m(flat_contact_r3().structure);
  const Report r = residual_contact_identities(m, pts(m));
  for (const auto& x : r.results) EXPECT_LE(x.max_residual, 1e-8) << x.id;
  const Report t = residual_traced(m, pts(m));
  for (const auto& x : t.results) EXPECT_LE(x.max_residual, 1e-8) << x.id;
}

TEST(Identities, ConeAlmostKahlerIffBaseIdentities) {
  for (const auto& name : example_names()) {
    const Model m(get_example(name).structure);
    const Report r = run_checks(m, pts(m), {"3.1", "3.2", "3.3", "3.4"});
    const bool base = passes(r, "3.2") && passes(r, "3.3") && passes(r, "3.4");
    EXPECT_EQ(passes(r, "3.1"), base) << name;
  }
}

TEST(Identities, ConformalExampleFailsBothSides) {
  const Model m(conformal_non_contact().structure);
  const Report r = run_checks(m, pts(m), {"3.1", "3.2", "3.3", "3.4"});
  EXPECT_GT(r.find("3.1")->max_residual, 1e-3);
  EXPECT_GT(r.find("3.2")->max_residual, 1e-3);
}

TEST(Identities, TracedFormulasAndConeNorm) {
  for (const char* name : {"heisenberg3", "flat_contact_r3"}) {
    const Model m(get_example(name).structure);
    const Report r = run_checks(m, pts(m), {"3.19", "4.3c", "3.13"});
    for (const auto& x : r.results) EXPECT_LE(x.max_residual, 1e-8) << name << ' ' << x.id;
  }
}

TEST(Gray, HeisenbergPassesFlatFailsG3) {
  const Model h(darboux_sasakian(1).structure), f(flat_contact_r3().structure);
  const Report rh = residual_gray(h, pts(h));
  for (const auto& x : rh.results) EXPECT_LE(x.max_residual, 1e-8) << x.id;
  const Report rf = residual_gray(f, pts(f));
  EXPECT_GT(rf.find("G3")->max_residual, 1e-3);
  EXPECT_EQ(rf.find("G3")->verdict, Verdict::Fail);
}

TEST(Gray, VerdictOfG3MatchesSasakian) {
  for (const auto& name : {std::string("heisenberg3"), std::string("flat_contact_r3"), std::string("darboux_sasakian(2)")}) {
    const Model m(get_example(name).structure);
    const Report r = run_checks(m, pts(m, 4), {"G3", "3.20"});
    EXPECT_EQ(passes(r, "G3"), passes(r, "3.20")) << name;
  }
}

TEST(Gray, ImplicationChainNeverViolated) {
  for (const auto& name : example_names()) {
    const Model m(get_example(name).structure);
    const Report r = residual_gray(m, pts(m));
    if (passes(r, "G1")) EXPECT_TRUE(passes(r, "G2")) << name;
    if (passes(r, "G2")) EXPECT_TRUE(passes(r, "G3")) << name;
  }
}

TEST(Gray, TransvectionDerivations) {
  for (const auto& name : example_names()) {
    const Model m(get_example(name).structure);
    const Report r = residual_gray(m, pts(m));
    for (const auto& x : r.results)
      if (x.id.find(":derived") != std::string::npos) EXPECT_LE(x.max_residual, 1e-10) << name << ' ' << x.id;
  }
}

TEST(HContactChain, ContactExamples) {
  for (const char* name : {"heisenberg3", "flat_contact_r3"}) {
    const Model m(get_example(name).structure);
    const Report r = run_checks(m, pts(m), {"hcontact"});
    for (const auto& x : r.results) {
      EXPECT_EQ(x.verdict, Verdict::Pass) << name << ' ' << x.id;
      EXPECT_LE(x.max_residual, x.id == "4.17" ? 1e-10 : 1e-8) << name << ' ' << x.id;
    }
  }
}

TEST(HContactChain, SkippedWhenNotHContact) {
  const Model m(conformal_non_contact().structure);
  const Report r = run_checks(m, pts(m), {"hcontact"});
  for (const auto& x : r.results)
    if (x.id != "4.5b") EXPECT_EQ(x.verdict, Verdict::Skipped) << x.id;
  EXPECT_EQ(r.find("4.5b")->verdict, Verdict::Fail);
}

TEST(Identities, Dim3ChecksSkippedInHigherDimension) {
  const Model m(darboux_sasakian(2).structure);
  const Report r = run_checks(m, pts(m, 2), {"all"});
  for (const auto& x : r.results)
    if (find_identity(x.id)->dim3_only) EXPECT_EQ(x.verdict, Verdict::Skipped) << x.id;
  EXPECT_THROW(run_checks(m, pts(m, 2), {"dim3"}), std::exception);
}

TEST(Magnitudes, DecisiveFailuresOnNonSasakianInputs) {
  const Model f(flat_contact_r3().structure), c(non_contact_counterexample().structure);
  EXPECT_GT(run_checks(f, pts(f), {"3.20"}).find("3.20")->max_residual, 0.1);
  const Report r = run_checks(c, pts(c), {"3.5.3", "almost-kahler"});
  EXPECT_GT(r.find("3.5.3")->max_residual, 0.1);
  EXPECT_GT(r.find("almost-kahler")->max_residual, 0.1);
}
