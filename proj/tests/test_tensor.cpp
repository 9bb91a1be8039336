#include <gtest/gtest.h>

#include <random>

#include "conecurv/exprlang/parser.hpp"
#include "conecurv/numeric/jet.hpp"
#include "conecurv/tensor/tensor.hpp"
#include "conecurv/tensorcalc/geometry.hpp"
#include "oracles.hpp"

using namespace conecurv;
namespace E = conecurv::expr;

namespace {

Tensor<double> random_tensor(std::mt19937_64& rng, int d, std::vector<Slot> s) {
  std::uniform_real_distribution<double> u(-1, 1);
  Tensor<double> t(d, std::move(s));
  for (auto& x : t.data()) x = u(rng);
  return t;
}

}  // namespace

TEST(Jet, PartialsMatchSymbolicDerivatives) {
  const Chart c({"x", "y", "z"}, std::vector<Interval>(3, Interval{-1, 1}));
  const std::vector<double> p{0.2, -0.4, 0.7};
  const JetSpace& sp = JetSpace::get(3, 3);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    const E::Expr e = oracle::random_expr(rng, 3);
    const TaylorModel tm(e, 3, 3);
    const Jet j = tm.evaluate(p, 3);
    const Jet direct = evaluate_jet(e, coordinate_jets(sp, 3, p));
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int q = 0; q < 3; ++q) {
          const int m = sp.raise(sp.raise(sp.unit(a), b), q);
          const double sym = E::evaluate(E::differentiate(E::differentiate(E::differentiate(e, a), b), q), p);
          EXPECT_NEAR(j.partial(m), sym, 1e-9 * (1 + std::abs(sym))) << E::to_string(e);
          EXPECT_NEAR(direct.partial(m), sym, 1e-9 * (1 + std::abs(sym))) << E::to_string(e);
        }
  }
}

TEST(Jet, ArithmeticRules) {
  const JetSpace& sp = JetSpace::get(2, 2);
  const std::vector<double> p{0.5, 1.5};
  const auto v = coordinate_jets(sp, 2, p);
  const Jet f = jetfn::exp(v[0]) * jetfn::sin(v[1]);
  const int xy = sp.raise(sp.unit(0), 1);
  const int yy = sp.raise(sp.unit(1), 1);
  EXPECT_NEAR(f.value(), std::exp(0.5) * std::sin(1.5), 1e-15);
  EXPECT_NEAR(f.partial(xy), std::exp(0.5) * std::cos(1.5), 1e-14);
  EXPECT_NEAR(f.partial(yy), -std::exp(0.5) * std::sin(1.5), 1e-14);
  const Jet q = v[0] / v[1];
  EXPECT_NEAR(q.partial(yy), 2 * 0.5 / (1.5 * 1.5 * 1.5), 1e-14);
  const Jet d = f.derivative(0);
  EXPECT_NEAR(d.value(), f.value(), 1e-15);
}

TEST(Einsum, MatchesLoops) {
  std::mt19937_64 rng(3);
  const int d = 4;
  const auto A = random_tensor(rng, d, {Slot::Up, Slot::Up});
  const auto B = random_tensor(rng, d, {Slot::Up, Slot::Up});
  const auto R = random_tensor(rng, d, {Slot::Down, Slot::Down, Slot::Down, Slot::Up});
  const auto T = einsum("ai,bj,abkl->ijkl", A, B, R);
  EXPECT_EQ(slot_string(T.slots()), "UUDU");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = 0;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) v += A(a, i) * B(b, j) * R(a, b, k, l);
          EXPECT_NEAR(T(i, j, k, l), v, 1e-13);
        }
  const auto tr = einsum("abca->bc", R);
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c) {
      double v = 0;
      for (int a = 0; a < d; ++a) v += R(a, b, c, a);
      EXPECT_NEAR(tr(b, c), v, 1e-14);
    }
}

TEST(Einsum, RejectsVarianceMismatch) {
  std::mt19937_64 rng(5);
  const auto g = random_tensor(rng, 3, {Slot::Down, Slot::Down});
  const auto v = random_tensor(rng, 3, {Slot::Up});
  const auto w = random_tensor(rng, 3, {Slot::Down});
  EXPECT_NO_THROW(einsum("a,ab->b", v, g));
  EXPECT_THROW(einsum("a,ab->b", w, g), std::invalid_argument);
  EXPECT_THROW(einsum("aa->", g), std::invalid_argument);
  EXPECT_THROW(einsum("ab,b", g, v), std::invalid_argument);
  EXPECT_THROW(einsum("ab->abc", g), std::invalid_argument);
  EXPECT_THROW(einsum("abc,b->ac", g, v), std::invalid_argument);
  EXPECT_THROW(einsum("a,b->ab", v, random_tensor(rng, 4, {Slot::Up})), std::invalid_argument);
}

TEST(Tensor, IndexChecks) {
  Tensor<double> t(3, {Slot::Down, Slot::Up});
  EXPECT_THROW(t(3, 0), std::out_of_range);
  EXPECT_THROW(t.value(), std::logic_error);
  EXPECT_THROW(Tensor<double>(0, {}), std::invalid_argument);
  EXPECT_THROW(t + Tensor<double>(3, {Slot::Up, Slot::Up}), std::invalid_argument);
}

TEST(Tensor, LowerRaiseRoundTrip) {
  std::mt19937_64 rng(9);
  const int d = 3;
  Tensor<double> g(d, {Slot::Down, Slot::Down});
  auto m = random_tensor(rng, d, {Slot::Down, Slot::Down});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double v = i == j ? 3.0 : 0.0;
      for (int k = 0; k < d; ++k) v += 0.3 * m(i, k) * m(j, k);
      g(i, j) = v;
    }
  const auto gi = inverse_metric(g);
  const auto id = einsum("ab,bc->ac", g, gi);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) EXPECT_NEAR(id(i, j), i == j ? 1.0 : 0.0, 1e-14);
  const auto t = random_tensor(rng, d, {Slot::Down, Slot::Up, Slot::Down});
  const auto back = raise(lower(t, 1, g), 1, gi);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(back.data()[k], t.data()[k], 1e-13);
  const auto c = contract(t, 0, 1);
  EXPECT_EQ(c.rank(), 1);
  EXPECT_THROW(contract(t, 0, 2), std::invalid_argument);
}
