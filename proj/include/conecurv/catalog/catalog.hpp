#pragma once

#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "../contact/structure.hpp"
#include "../exprlang/parser.hpp"

namespace conecurv {

/// Expected value of an invariant together with where it comes from.
struct Expected {
  double value;
  std::string provenance;
};

struct ExampleEntry {
  std::string name;
  std::string description;
  AlmostContactStructure structure;
  // keys: tau, tau_star, trh2, norm_nabla_phi, norm_nabla_eta, f, cone_tau_t0, cone_tau_star_t0, cone_norm_nabla_j_t0
  std::map<std::string, Expected> expected;
  bool contact_metric = true;
  std::optional<bool> sasakian;
};

namespace catalog_detail {

struct Builder {
  std::shared_ptr<const Chart> chart;
  TensorField phi, xi, eta, g;

  Builder(std::vector<std::string> names, std::vector<Interval> dom, std::vector<expr::Expr> excl = {})
      : chart(std::make_shared<const Chart>(std::move(names), std::move(dom), std::move(excl))),
        phi(TensorField::zeros(chart, {Slot::Down, Slot::Up})),
        xi(TensorField::zeros(chart, {Slot::Up})),
        eta(TensorField::zeros(chart, {Slot::Down})),
        g(TensorField::zeros(chart, {Slot::Down, Slot::Down})) {}

  expr::Expr e(const std::string& s) const { return expr::parse(s, *chart); }
  int at(const std::string& nm) const { return chart->index_of(nm).value(); }

  /// phi d_low = ... + value d_up
  void set_phi(const std::string& low, const std::string& up, const std::string& v) { phi = phi.with({at(low), at(up)}, e(v)); }
  void set_g(const std::string& a, const std::string& b, const std::string& v) {
    g = g.with({at(a), at(b)}, e(v));
    if (a != b) g = g.with({at(b), at(a)}, e(v));
  }

  AlmostContactStructure build(std::string name, int n) const {
    AlmostContactStructure s;
    s.name = std::move(name);
    s.n = n;
    s.chart = chart;
    s.phi = phi;
    s.xi = xi;
    s.eta = eta;
    s.g = MetricField(g);
    s.validate();
    return s;
  }
};

inline std::vector<Interval> box(int d, Interval iv = {-1.0, 1.0}) { return std::vector<Interval>(static_cast<std::size_t>(d), iv); }

}  // namespace catalog_detail

/// R^{2n+1} with eta = (1/2)(dz - sum y_i dx_i), xi = 2 d_z, g = eta (x) eta + (1/4) sum (dx_i^2 + dy_i^2)
/// and the Darboux phi: phi d_x_i = -d_y_i, phi d_y_i = d_x_i + y_i d_z.
inline ExampleEntry darboux_sasakian(int n) {
  if (n < 1) throw std::invalid_argument("darboux_sasakian needs n >= 1");
  using catalog_detail::Builder;
  std::vector<std::string> xs, ys, names;
  for (int i = 1; i <= n; ++i) {
    xs.push_back(n == 1 ? "x" : "x" + std::to_string(i));
    ys.push_back(n == 1 ? "y" : "y" + std::to_string(i));
  }
  names = xs;
  names.insert(names.end(), ys.begin(), ys.end());
  names.push_back("z");
  Builder b(names, catalog_detail::box(2 * n + 1));
  for (int i = 0; i < n; ++i) b.eta = b.eta.with({b.at(xs[i])}, b.e("-" + ys[i] + "/2"));
  b.eta = b.eta.with({b.at("z")}, b.e("1/2"));
  b.xi = b.xi.with({b.at("z")}, b.e("2"));
  const int d = 2 * n + 1;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const expr::Expr v = b.eta(i) * b.eta(j) + (i == j && i < 2 * n ? expr::Expr(0.25) : expr::Expr(0.0));
      b.g = b.g.with({i, j}, v);
      b.g = b.g.with({j, i}, v);
    }
  for (int i = 0; i < n; ++i) {
    b.set_phi(xs[i], ys[i], "-1");
    b.set_phi(ys[i], xs[i], "1");
    b.set_phi(ys[i], "z", ys[i]);
  }
  ExampleEntry e;
  e.name = n == 1 ? "heisenberg3" : "darboux_sasakian(" + std::to_string(n) + ")";
  e.description = "Darboux contact form on R^" + std::to_string(d) + " with its Sasakian metric";
  e.structure = b.build(e.name, n);
  const double nn = n;
  const char* frame = "left-invariant frame computation";
  e.expected["trh2"] = {0.0, "h = 0 (Lie derivative of phi along xi vanishes)"};
  e.expected["norm_nabla_phi"] = {4.0 * nn, "Sasakian nabla phi contracted by hand"};
  e.expected["norm_nabla_eta"] = {2.0 * nn, "norm of nabla eta with tr h^2 = 0"};
  e.expected["tau"] = {-2.0 * nn, n == 1 ? frame : "Sasakian space form of phi-sectional curvature -3"};
  e.expected["tau_star"] = {-2.0 * nn - 4.0 * nn * nn, "tau* - tau + 4n^2 = tr h^2 + (|nabla phi|^2 - 4n)/2"};
  e.expected["cone_tau_t0"] = {-2.0 * nn - 4.0 * nn * nn - 2.0 * nn, "cone scalar curvature tau - 4n^2 - 2n"};
  e.expected["cone_tau_star_t0"] = {-2.0 * nn - 4.0 * nn * nn - 2.0 * nn, "cone tau* = tau* - 2n"};
  e.expected["cone_norm_nabla_j_t0"] = {0.0, "Kahler cone"};
  if (n == 1) e.expected["f"] = {2.0, "f = 2 - tr h^2"};
  e.sasakian = true;
  return e;
}

/// Flat R^3 with eta = (1/2)(cos z dx + sin z dy), g = Euclid/4, xi = 2(cos z d_x + sin z d_y);
/// phi is solved from d eta(X, Y) = g(X, phi Y) in the chosen convention.
inline ExampleEntry flat_contact_r3(DEtaConvention conv = DEtaConvention::Half) {
  using catalog_detail::Builder;
  const double pi = std::numbers::pi;
  Builder b({"x", "y", "z"}, {{-1.0, 1.0}, {-1.0, 1.0}, {-pi, pi}});
  b.eta = b.eta.with({0}, b.e("cos(z)/2")).with({1}, b.e("sin(z)/2"));
  b.xi = b.xi.with({0}, b.e("2*cos(z)")).with({1}, b.e("2*sin(z)"));
  for (int i = 0; i < 3; ++i) b.g = b.g.with({i, i}, expr::Expr(0.25));
  // phi_j^a = g^{ai} (d eta)_ij with g^{-1} = 4 Id
  const double scale = conv == DEtaConvention::Half ? 0.5 : 1.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const expr::Expr w =
          expr::Expr(4.0 * scale) * (expr::differentiate(b.eta(j), i) - expr::differentiate(b.eta(i), j));
      b.phi = b.phi.with({j, i}, w);
    }
  ExampleEntry e;
  e.name = "flat_contact_r3";
  e.description = "flat contact metric structure on R^3, not Sasakian";
  e.structure = b.build(e.name, 1);
  e.expected["tau"] = {0.0, "g is a constant multiple of the Euclidean metric"};
  e.expected["trh2"] = {2.0, "rho(xi, xi) = 2n - tr h^2 with rho = 0"};
  e.expected["tau_star"] = {0.0, "tau* - tau + 4 = 2 tr h^2"};
  e.expected["norm_nabla_phi"] = {8.0, "tau* - tau + 4n^2 = tr h^2 + (|nabla phi|^2 - 4n)/2"};
  e.expected["norm_nabla_eta"] = {4.0, "|nabla eta|^2 = 2n + tr h^2"};
  e.expected["f"] = {0.0, "f = 2 - tr h^2"};
  e.expected["cone_norm_nabla_j_t0"] = {8.0, "|nabla J|^2 = 2(tau* - tau + 4n^2)"};
  e.sasakian = false;
  return e;
}

/// R^2 x R with the flat cosymplectic structure: eta = dz closed, so not contact metric.
inline ExampleEntry non_contact_counterexample() {
  using catalog_detail::Builder;
  Builder b({"x", "y", "z"}, catalog_detail::box(3));
  b.eta = b.eta.with({2}, expr::Expr(1.0));
  b.xi = b.xi.with({2}, expr::Expr(1.0));
  for (int i = 0; i < 3; ++i) b.g = b.g.with({i, i}, expr::Expr(1.0));
  b.set_phi("x", "y", "1");
  b.set_phi("y", "x", "-1");
  ExampleEntry e;
  e.name = "non_contact_counterexample";
  e.description = "almost contact metric, d eta = 0";
  e.structure = b.build(e.name, 1);
  e.contact_metric = false;
  return e;
}

/// Conformally flat almost contact metric structure with eta ^ d eta = 0:
/// g = e^{2f} Euclid, eta = e^f dz, xi = e^{-f} d_z, f = xy/2 + z/3.
inline ExampleEntry conformal_non_contact() {
  using catalog_detail::Builder;
  Builder b({"x", "y", "z"}, catalog_detail::box(3));
  b.eta = b.eta.with({2}, b.e("exp(x*y/2 + z/3)"));
  b.xi = b.xi.with({2}, b.e("exp(-x*y/2 - z/3)"));
  for (int i = 0; i < 3; ++i) b.g = b.g.with({i, i}, b.e("exp(x*y + 2*z/3)"));
  b.set_phi("x", "y", "1");
  b.set_phi("y", "x", "-1");
  ExampleEntry e;
  e.name = "conformal_non_contact";
  e.description = "conformally flat almost contact metric, eta ^ d eta = 0";
  e.structure = b.build(e.name, 1);
  e.contact_metric = false;
  return e;
}

inline std::vector<std::string> example_names() {
  return {"heisenberg3", "flat_contact_r3", "non_contact_counterexample", "conformal_non_contact"};
}

/// Catalog lookup; also accepts darboux_sasakian(n) and darboux_sasakian (n = 1).
inline ExampleEntry get_example(const std::string& name, DEtaConvention conv = DEtaConvention::Half) {
  if (name == "heisenberg3" || name == "darboux_sasakian") return darboux_sasakian(1);
  if (name == "flat_contact_r3") return flat_contact_r3(conv);
  if (name == "non_contact_counterexample") return non_contact_counterexample();
  if (name == "conformal_non_contact") return conformal_non_contact();
  static const std::regex pat(R"(darboux_sasakian\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, pat)) return darboux_sasakian(std::stoi(m[1].str()));
  throw std::invalid_argument("unknown example '" + name + "'");
}

}  // namespace conecurv
