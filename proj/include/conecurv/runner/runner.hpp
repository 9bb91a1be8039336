#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "../catalog/catalog.hpp"
#include "../identities/suite.hpp"
#include "../io/specfile.hpp"
#include "../model.hpp"

namespace conecurv {

struct RunConfig {
  std::string spec_path;  // either this or example
  std::string example;
  int points = 20;
  std::uint64_t seed = 42;
  double tol = 1e-8;
  double fail_threshold = 1e-3;
  std::vector<std::string> checks{"all"};
  std::vector<double> t_values{0.0, 0.5};
  DEtaConvention deta = DEtaConvention::Half;
  int threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (points < 1) throw std::invalid_argument("point count must be at least 1");
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    if (!(fail_threshold > 0)) throw std::invalid_argument("fail threshold must be positive");
    if (t_values.empty()) throw std::invalid_argument("need at least one t value");
    for (double t : t_values)
      if (!std::isfinite(t)) throw std::invalid_argument("t values must be finite");
    if (spec_path.empty() == example.empty()) throw std::invalid_argument("give exactly one of a spec file or an example");
  }
};

class RunError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { Pass, Fail, Skipped };
inline const char* to_string(Verdict v) { return v == Verdict::Pass ? "pass" : v == Verdict::Fail ? "fail" : "skipped"; }

struct IdentityResult {
  std::string id, label, group;
  Verdict verdict = Verdict::Skipped;
  double max_residual = 0, mean_residual = 0;
  std::vector<double> worst_point;
  std::optional<double> worst_t;
  std::vector<double> residuals;  // one per sample point (max over t for cone checks)
  std::string note;
};

struct Report {
  std::string example;
  std::uint64_t seed = 0;
  int points = 0;
  double tol = 0, fail_threshold = 0;
  std::vector<double> t_values;
  DEtaConvention deta = DEtaConvention::Half;
  std::vector<std::string> deta_satisfied;  // conventions under which (1.3) holds
  std::map<std::string, std::optional<bool>> classification;
  std::vector<std::vector<double>> sample_points;
  std::vector<IdentityResult> results;

  bool all_pass() const {
    return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.verdict != Verdict::Fail; });
  }
  const IdentityResult* find(const std::string& id) const {
    for (const auto& r : results)
      if (r.id == id) return &r;
    return nullptr;
  }
};

/// Box center first, then seeded uniform samples; points near an excluded locus are rejected.
inline std::vector<std::vector<double>> sample_points(const Chart& chart, int count, std::uint64_t seed) {
  std::vector<std::vector<double>> pts;
  std::mt19937_64 rng(seed);
  const auto center = chart.center();
  if (!chart.is_excluded(center)) pts.push_back(center);
  std::vector<std::uniform_real_distribution<double>> dist;
  for (const auto& iv : chart.domain()) dist.emplace_back(iv.lo, iv.hi);
  long attempts = 0;
  const long limit = 1000L * count + 1000;
  while (static_cast<int>(pts.size()) < count) {
    if (++attempts > limit) throw RunError("could not find enough sample points outside the excluded region");
    std::vector<double> p;
    for (auto& d : dist) p.push_back(d(rng));
    if (!chart.is_excluded(p)) pts.push_back(std::move(p));
  }
  return pts;
}

inline std::string format_point(const std::vector<double>& p) {
  std::ostringstream o;
  o.precision(6);
  o << '(';
  for (std::size_t i = 0; i < p.size(); ++i) o << (i ? ", " : "") << p[i];
  o << ')';
  return o.str();
}

/// Expand group names and identity IDs into table order; errors on unknown names
/// and on explicit dimension-3 requests for other dimensions.
inline std::vector<const IdentityCheck*> select_checks(const std::vector<std::string>& tokens, int dim,
                                                       std::set<std::string>* skipped_for_dim = nullptr) {
  std::set<std::string> ids;
  for (const auto& tok : tokens) {
    if (tok == "all") {
      for (const auto& c : identity_table()) {
        if (c.dim3_only && dim != 3) {
          if (skipped_for_dim) skipped_for_dim->insert(c.id);
        }
        ids.insert(c.id);
      }
    } else if (is_group(tok)) {
      if ((tok == "dim3" || tok == "hcontact") && dim != 3)
        throw std::invalid_argument("check group '" + tok + "' needs a 3-dimensional structure, got dimension " +
                                    std::to_string(dim));
      for (const auto& c : identity_table())
        if (c.group == tok) ids.insert(c.id);
    } else if (const IdentityCheck* c = find_identity(tok)) {
      if (c->dim3_only && dim != 3)
        throw std::invalid_argument("identity '" + tok + "' needs a 3-dimensional structure");
      ids.insert(c->id);
    } else {
      throw std::invalid_argument("unknown check '" + tok + "'");
    }
  }
  std::vector<const IdentityCheck*> out;
  for (const auto& c : identity_table())
    if (ids.count(c.id)) out.push_back(&c);
  return out;
}

namespace runner_detail {

struct PointEval {
  std::vector<double> residual;             // per selected check
  std::vector<double> worst_t;              // per selected check, cone only
  std::map<std::string, double> extra;      // classification and convention probes
  std::string error;
};

template <class F>
void parallel_for(int n, int threads, F f) {
  int k = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  k = std::min(k, n);
  if (k <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < k; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += k) f(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace runner_detail

/// Evaluate the selected checks on a compiled model at the given points.
inline Report run_model(const Model& model, const std::vector<std::vector<double>>& pts, const RunConfig& cfg,
                        const std::string& example_name) {
  const int dim = model.dim();
  std::set<std::string> dim_skip;
  const auto checks = select_checks(cfg.checks, dim, &dim_skip);
  const bool need_cone = std::any_of(checks.begin(), checks.end(), [&](const IdentityCheck* c) {
    return c->level == Level::Cone && !dim_skip.count(c->id);
  });

  std::vector<runner_detail::PointEval> evals(pts.size());
  runner_detail::parallel_for(static_cast<int>(pts.size()), cfg.threads, [&](int pi) {
    auto& ev = evals[static_cast<std::size_t>(pi)];
    const auto& p = pts[static_cast<std::size_t>(pi)];
    std::string current = "base geometry";
    try {
      const BasePoint b = model.base_at(p);
      std::vector<ConePoint> cones;
      if (need_cone) {
        current = "cone geometry";
        for (double t : cfg.t_values) cones.push_back(model.cone_at(p, t));
      }
      for (const IdentityCheck* c : checks) {
        current = c->id;
        double r = 0.0, wt = 0.0;
        if (dim_skip.count(c->id)) {
          r = std::numeric_limits<double>::quiet_NaN();
        } else if (c->level == Level::Base) {
          r = evaluate_residual(*c, b, nullptr, cfg.deta);
        } else {
          r = -1.0;
          for (std::size_t k = 0; k < cones.size(); ++k) {
            const double x = evaluate_residual(*c, b, &cones[k], cfg.deta);
            if (x > r || std::isnan(x)) {
              r = x;
              wt = cfg.t_values[k];
            }
          }
        }
        ev.residual.push_back(r);
        ev.worst_t.push_back(wt);
      }
      current = "classification";
      auto probe = [&](const std::string& id, DEtaConvention conv) {
        return evaluate_residual(*find_identity(id), b, nullptr, conv);
      };
      ev.extra["1.1"] = probe("1.1", cfg.deta);
      ev.extra["1.2"] = probe("1.2", cfg.deta);
      ev.extra["1.3:half"] = probe("1.3", DEtaConvention::Half);
      ev.extra["1.3:plain"] = probe("1.3", DEtaConvention::Plain);
      ev.extra["3.20"] = probe("3.20", cfg.deta);
      ev.extra["k-contact"] = probe("k-contact", cfg.deta);
      if (dim == 3) ev.extra["4.5b"] = probe("4.5b", cfg.deta);
      ev.extra["contact_volume"] = std::abs(b.contact_volume);
    } catch (const std::exception& e) {
      ev.error = "identity " + current + " at point " + format_point(p) + ": " + e.what();
    }
  });
  for (const auto& ev : evals)
    if (!ev.error.empty()) throw RunError(ev.error);

  Report rep;
  rep.example = example_name;
  rep.seed = cfg.seed;
  rep.points = static_cast<int>(pts.size());
  rep.tol = cfg.tol;
  rep.fail_threshold = cfg.fail_threshold;
  rep.t_values = cfg.t_values;
  rep.deta = cfg.deta;
  rep.sample_points = pts;

  auto max_extra = [&](const std::string& key) {
    double m = 0.0;
    for (const auto& ev : evals) m = std::max(m, ev.extra.at(key));
    return m;
  };
  auto min_extra = [&](const std::string& key) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& ev : evals) m = std::min(m, ev.extra.at(key));
    return m;
  };
  if (max_extra("1.3:half") <= cfg.tol) rep.deta_satisfied.push_back("half");
  if (max_extra("1.3:plain") <= cfg.tol) rep.deta_satisfied.push_back("plain");
  const std::string sel = cfg.deta == DEtaConvention::Half ? "1.3:half" : "1.3:plain";
  const bool almost_contact_metric = max_extra("1.1") <= cfg.tol && max_extra("1.2") <= cfg.tol;
  const bool contact_metric = almost_contact_metric && max_extra(sel) <= cfg.tol;
  rep.classification["almost_contact_metric"] = almost_contact_metric;
  rep.classification["contact_form"] = min_extra("contact_volume") > cfg.tol;
  rep.classification["contact_metric"] = contact_metric;
  rep.classification["sasakian"] = contact_metric && max_extra("3.20") <= cfg.tol;
  rep.classification["k_contact"] = contact_metric && max_extra("k-contact") <= cfg.tol;
  if (dim == 3)
    rep.classification["h_contact"] = contact_metric && max_extra("4.5b") <= cfg.tol;
  else
    rep.classification["h_contact"] = std::nullopt;

  // the H-contact chain presupposes Q xi = f xi
  const bool h_contact_holds = dim == 3 && max_extra("4.5b") <= cfg.tol;

  for (std::size_t k = 0; k < checks.size(); ++k) {
    const IdentityCheck& c = *checks[k];
    IdentityResult r;
    r.id = c.id;
    r.label = c.label;
    r.group = c.group;
    r.note = c.note;
    if (dim_skip.count(c.id)) {
      r.verdict = Verdict::Skipped;
      r.note = "requires dimension 3";
      rep.results.push_back(std::move(r));
      continue;
    }
    if (c.hcontact && !h_contact_holds) {
      r.verdict = Verdict::Skipped;
      r.note = "not H-contact";
      rep.results.push_back(std::move(r));
      continue;
    }
    double sum = 0.0, mx = -1.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      const double x = evals[i].residual[k];
      r.residuals.push_back(x);
      sum += x;
      if (x > mx || std::isnan(x)) {
        mx = x;
        worst = i;
      }
    }
    r.max_residual = mx;
    r.mean_residual = sum / static_cast<double>(evals.size());
    r.worst_point = pts[worst];
    if (c.level == Level::Cone) r.worst_t = evals[worst].worst_t[k];
    r.verdict = mx <= cfg.tol ? Verdict::Pass : Verdict::Fail;
    if (c.id == "1.3") {
      std::string sat = rep.deta_satisfied.empty() ? "none" : rep.deta_satisfied.front();
      if (rep.deta_satisfied.size() > 1) sat += ", " + rep.deta_satisfied[1];
      r.note = std::string("convention ") + to_string(cfg.deta) + "; satisfied under: " + sat;
    }
    rep.results.push_back(std::move(r));
  }
  return rep;
}

/// Load the structure named by the config and run it.
inline Report run(const RunConfig& cfg) {
  cfg.validate();
  AlmostContactStructure s;
  std::string name;
  if (!cfg.example.empty()) {
    s = get_example(cfg.example, cfg.deta).structure;
    name = cfg.example;
  } else {
    s = load_spec(cfg.spec_path);
    name = s.name;
  }
  const Model model(std::move(s));
  const auto pts = sample_points(*model.structure().chart, cfg.points, cfg.seed);
  return run_model(model, pts, cfg, name);
}

}  // namespace conecurv
