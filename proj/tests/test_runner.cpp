#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "conecurv/runner/emit.hpp"

using namespace conecurv;

namespace {

RunConfig cfg(const std::string& ex, std::vector<std::string> checks, int points = 5) {
  RunConfig c;
  c.example = ex;
  c.checks = std::move(checks);
  c.points = points;
  return c;
}

int veri(const std::string& args) {
  const int rc = std::system((std::string(VERI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Sampling, CenterFirstAndSeeded) {
  const auto s = get_example("flat_contact_r3").structure;
  const auto a = sample_points(*s.chart, 10, 42), b = sample_points(*s.chart, 10, 42), c = sample_points(*s.chart, 10, 43);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_EQ(a[0], s.chart->center());
  for (const auto& p : a) EXPECT_TRUE(s.chart->contains(p));
}

TEST(Runner, JsonIsDeterministicAcrossThreadCounts) {
  RunConfig a = cfg("flat_contact_r3", {"all"}, 6), b = a;
  a.threads = 1;
  b.threads = 4;
  const std::string ja = to_json(run(a)).dump(), jb = to_json(run(b)).dump();
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(ja, to_json(run(a)).dump());
}

TEST(Runner, CsvRowCount) {
  const Report r = run(cfg("heisenberg3", {"identities", "gray"}, 7));
  const std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "identity,point,residual");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, r.results.size() * 7);
}

TEST(Runner, JsonFields) {
  const auto j = to_json(run(cfg("heisenberg3", {"axioms"}, 3)));
  EXPECT_EQ(j["meta"]["example"], "heisenberg3");
  EXPECT_EQ(j["meta"]["seed"], 42);
  EXPECT_EQ(j["meta"]["points"], 3);
  EXPECT_EQ(j["meta"]["conventions"]["deta"], "half");
  EXPECT_EQ(j["meta"]["classification"]["sasakian"], true);
  ASSERT_EQ(j["results"].size(), 4u);
  for (const auto& r : j["results"]) {
    for (const char* k : {"id", "paper_label", "max_residual", "mean_residual", "verdict", "worst_point"})
      EXPECT_TRUE(r.contains(k)) << k;
    EXPECT_EQ(r["verdict"], "pass");
  }
}

TEST(Runner, TextSummaryHasCounts) {
  const std::string t = to_text(run(cfg("flat_contact_r3", {"gray"}, 3)));
  EXPECT_NE(t.find("G3"), std::string::npos);
  EXPECT_NE(t.find("failed"), std::string::npos);
}

TEST(Runner, FullHeisenbergRunPasses) {
  RunConfig c = cfg("heisenberg3", {"all"}, 50);
  const Report r = run(c);
  EXPECT_TRUE(r.all_pass());
  for (const char* g : {"G1", "G2", "G3"}) EXPECT_EQ(r.find(g)->verdict, Verdict::Pass);
}

TEST(Runner, FlatGrayRunFails) {
  const Report r = run(cfg("flat_contact_r3", {"gray"}));
  EXPECT_FALSE(r.all_pass());
  EXPECT_GT(r.find("G3")->max_residual, 1e-3);
}

TEST(Runner, CounterexampleAxiomsFlagContactCondition) {
  const Report r = run(cfg("non_contact_counterexample", {"axioms"}));
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.find("1.3")->verdict, Verdict::Fail);
  EXPECT_EQ(r.find("1.1")->verdict, Verdict::Pass);
}

TEST(Runner, ChecksByIdAndGroup) {
  const Report r = run(cfg("heisenberg3", {"3.2", "classify"}, 2));
  std::set<std::string> ids;
  for (const auto& x : r.results) ids.insert(x.id);
  EXPECT_EQ(ids, (std::set<std::string>{"3.2", "3.20", "k-contact", "prop4.2"}));
  EXPECT_THROW(run(cfg("heisenberg3", {"bogus"}, 2)), std::exception);
}

TEST(Runner, ConfigValidation) {
  RunConfig c = cfg("heisenberg3", {"all"}, 0);
  EXPECT_THROW(run(c), std::invalid_argument);
  c.points = 2;
  c.spec_path = "x.spec";
  EXPECT_THROW(run(c), std::invalid_argument);
  c.spec_path.clear();
  c.t_values.clear();
  EXPECT_THROW(run(c), std::invalid_argument);
}

TEST(Runner, WorstPointIsASamplePoint) {
  const Report r = run(cfg("conformal_non_contact", {"3.1", "3.2"}, 6));
  for (const auto& x : r.results) {
    EXPECT_NE(std::find(r.sample_points.begin(), r.sample_points.end(), x.worst_point), r.sample_points.end());
    if (x.id == "3.1") {
      ASSERT_TRUE(x.worst_t.has_value());
    }
  }
}

TEST(Cli, ExitCodesFollowVerdicts) {
  EXPECT_EQ(veri("--example heisenberg3 --points 3"), 0);
  EXPECT_EQ(veri("--example flat_contact_r3 --points 3 --checks gray"), 1);
  EXPECT_EQ(veri("--example non_contact_counterexample --points 3 --checks axioms"), 1);
  EXPECT_EQ(veri("--example nope"), 2);
  EXPECT_EQ(veri("--spec /nonexistent.spec"), 2);
  EXPECT_EQ(veri("--example heisenberg3 --checks dim3,bogus"), 2);
}

TEST(Cli, OutputFileMatchesStdout) {
  const std::string path = testing::TempDir() + "/veri_report.json";
  ASSERT_EQ(veri("--example heisenberg3 --points 2 --format json --out " + path), 0);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  const auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["meta"]["points"], 2);
}
