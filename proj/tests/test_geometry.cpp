#include <gtest/gtest.h>

#include <numbers>

#include "conecurv/catalog/catalog.hpp"
#include "conecurv/model.hpp"
#include "conecurv/tensorcalc/geometry.hpp"
#include "oracles.hpp"

using namespace conecurv;
namespace E = conecurv::expr;

namespace {

struct Metric2 {
  std::shared_ptr<const Chart> chart;
  TensorField g;
};

Metric2 metric(std::vector<std::string> names, std::vector<Interval> dom, const std::vector<std::string>& comps) {
  Metric2 m{std::make_shared<const Chart>(std::move(names), std::move(dom)), {}};
  const int d = m.chart->dim();
  m.g = TensorField::zeros(m.chart, {Slot::Down, Slot::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m.g = m.g.with({i, j}, E::parse(comps[static_cast<std::size_t>(i * d + j)], *m.chart));
  return m;
}

CurvatureBundle<double> curv_at(const TensorField& g, const std::vector<double>& p) {
  const CompiledField cf(MetricField(g).field(), 2);
  return values(curvature(cf.evaluate(p)));
}

}  // namespace

TEST(Geometry, UnitSphere) {
  const double pi = std::numbers::pi;
  const auto m = metric({"th", "ph"}, {{0.1, 3.0}, {0, 6}}, {"1", "0", "0", "sin(th)^2"});
  const auto c = curv_at(m.g, {pi / 3, 0.4});
  // R_{th ph ph th} = g(R(d_th, d_ph) d_ph, d_th) = sin^2 th for curvature +1
  EXPECT_NEAR(c.r(0, 1, 1, 0), 0.75, 1e-13);
  EXPECT_NEAR(c.r(0, 1, 0, 1), -0.75, 1e-13);
  EXPECT_NEAR(c.rho(0, 0), 1.0, 1e-13);
  EXPECT_NEAR(c.rho(1, 1), 0.75, 1e-13);
  EXPECT_NEAR(c.tau, 2.0, 1e-13);
  EXPECT_NEAR(c.gamma(0, 1, 1), -std::sin(pi / 3) * std::cos(pi / 3), 1e-14);
  EXPECT_NEAR(c.gamma(1, 0, 1), std::cos(pi / 3) / std::sin(pi / 3), 1e-14);
}

TEST(Geometry, PolarPlaneIsFlat) {
  const auto m = metric({"r", "th"}, {{0.5, 2}, {0, 6}}, {"1", "0", "0", "r^2"});
  const auto c = curv_at(m.g, {1.3, 0.2});
  EXPECT_NEAR(c.gamma(0, 1, 1), -1.3, 1e-14);
  EXPECT_NEAR(c.gamma(1, 0, 1), 1 / 1.3, 1e-14);
  EXPECT_LE(max_abs(c.rm), 1e-13);
}

TEST(Geometry, HyperbolicHalfPlane) {
  const auto m = metric({"x", "y"}, {{-1, 1}, {0.5, 2}}, {"1/y^2", "0", "0", "1/y^2"});
  EXPECT_NEAR(curv_at(m.g, {0.3, 0.8}).tau, -2.0, 1e-12);
}

TEST(Geometry, ChristoffelMatchesKoszulFiniteDifferences) {
  const auto m = metric({"x", "y", "z"}, std::vector<Interval>(3, Interval{-1, 1}),
                        {"2 + 0.3*sin(x + 2*y)", "0.2*x*y", "0.1*cos(z)",  //
                         "0.2*x*y", "2 + z^2/4", "0.2*sin(x*z)",            //
                         "0.1*cos(z)", "0.2*sin(x*z)", "exp(x/3)"});
  const std::vector<double> p{0.3, -0.5, 0.6};
  const auto c = curv_at(m.g, p);
  auto gm = [&](const std::vector<double>& q) {
    Eigen::MatrixXd a(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a(i, j) = E::evaluate(m.g(i, j), q);
    return a;
  };
  const auto G = oracle::koszul_fd(gm, p);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(c.gamma(k, i, j), G[static_cast<std::size_t>((k * 3 + i) * 3 + j)], 1e-8);
}

TEST(Geometry, CurvatureSymmetries) {
  const auto m = metric({"x", "y", "z"}, std::vector<Interval>(3, Interval{-1, 1}),
                        {"2 + x*y", "0.3*z", "0", "0.3*z", "3 + sin(x)", "0.1*y", "0", "0.1*y", "1 + z^2"});
  const auto c = curv_at(m.g, {0.1, 0.2, -0.3});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          EXPECT_NEAR(c.r(i, j, k, l), -c.r(j, i, k, l), 1e-12);
          EXPECT_NEAR(c.r(i, j, k, l), -c.r(i, j, l, k), 1e-12);
          EXPECT_NEAR(c.r(i, j, k, l), c.r(k, l, i, j), 1e-12);
          EXPECT_NEAR(c.r(i, j, k, l) + c.r(j, k, i, l) + c.r(k, i, j, l), 0.0, 1e-12);
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(c.rho(i, j), c.rho(j, i), 1e-12);
}

TEST(Geometry, HeisenbergAgainstLeftInvariantFrame) {
  const Model model(darboux_sasakian(1).structure);
  const std::vector<double> p{0.3, -0.6, 0.2};
  const BasePoint b = model.base_at(p);
  const auto fr = oracle::frame_geometry(oracle::heisenberg_frame());
  // E1 = 2(d_x + y d_z), E2 = 2 d_y, E3 = 2 d_z
  const double y = p[1];
  const double e[3][3] = {{2, 0, 2 * y}, {0, 2, 0}, {0, 0, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double v = 0;
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 3; ++c) v += e[i][a] * e[j][c] * b.rho()(a, c);
      EXPECT_NEAR(v, fr.ricci[static_cast<std::size_t>(i * 3 + j)], 1e-12) << i << j;
    }
  EXPECT_NEAR(b.tau(), fr.tau, 1e-12);
  EXPECT_NEAR(fr.tau, -2.0, 1e-14);
}
