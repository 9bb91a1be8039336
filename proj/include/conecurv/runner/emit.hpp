#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "runner.hpp"

namespace conecurv {

enum class Format { Json, Csv, Text };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw std::invalid_argument("unknown format '" + s + "' (expected json, csv or text)");
}

namespace emit_detail {
// JSON has no inf/nan; such residuals are written as null
inline nlohmann::json number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }
}  // namespace emit_detail

inline nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json meta;
  meta["example"] = r.example;
  meta["seed"] = r.seed;
  meta["points"] = r.points;
  meta["tol"] = r.tol;
  meta["fail_threshold"] = r.fail_threshold;
  meta["t_values"] = r.t_values;
  meta["conventions"] = {{"deta", to_string(r.deta)},
                         {"deta_satisfied", r.deta_satisfied},
                         {"curvature", "R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y]Z, R_ijkl = g(R(d_i,d_j)d_k, d_l)"},
                         {"cone", "gbar = exp(-2t)(g + dt^2), t is the last coordinate"}};
  json cls = json::object();
  for (const auto& [k, v] : r.classification) cls[k] = v ? json(*v) : json(nullptr);
  meta["classification"] = cls;
  json results = json::array();
  for (const auto& x : r.results) {
    json o;
    o["id"] = x.id;
    o["paper_label"] = x.label;
    o["group"] = x.group;
    o["verdict"] = to_string(x.verdict);
    if (x.verdict == Verdict::Skipped) {
      o["max_residual"] = nullptr;
      o["mean_residual"] = nullptr;
      o["worst_point"] = nullptr;
    } else {
      o["max_residual"] = emit_detail::number(x.max_residual);
      o["mean_residual"] = emit_detail::number(x.mean_residual);
      o["worst_point"] = x.worst_point;
      if (x.worst_t) o["worst_t"] = *x.worst_t;
    }
    if (!x.note.empty()) o["note"] = x.note;
    results.push_back(std::move(o));
  }
  return json{{"meta", meta}, {"results", results}};
}

/// identity,point,residual with one row per (identity, sample point)
inline std::string to_csv(const Report& r) {
  std::ostringstream o;
  o << std::setprecision(17);
  o << "identity,point,residual\n";
  for (const auto& x : r.results)
    for (int p = 0; p < r.points; ++p) {
      o << x.id << ',' << p << ',';
      if (x.verdict != Verdict::Skipped) o << x.residuals[static_cast<std::size_t>(p)];
      o << '\n';
    }
  return o.str();
}

inline std::string to_text(const Report& r) {
  std::ostringstream o;
  o << "example " << r.example << "  points " << r.points << "  seed " << r.seed << "  tol " << r.tol << "\n";
  o << "d eta convention " << to_string(r.deta) << ", (1.3) satisfied under: ";
  if (r.deta_satisfied.empty()) o << "none";
  for (std::size_t i = 0; i < r.deta_satisfied.size(); ++i) o << (i ? ", " : "") << r.deta_satisfied[i];
  o << "\nclassification:";
  for (const auto& [k, v] : r.classification) o << ' ' << k << '=' << (v ? (*v ? "yes" : "no") : "n/a");
  o << "\n\n";
  o << std::left << std::setw(16) << "id" << std::setw(20) << "label" << std::setw(14) << "max" << std::setw(14)
    << "mean" << "verdict\n";
  for (const auto& x : r.results) {
    o << std::left << std::setw(16) << x.id << std::setw(20) << x.label;
    if (x.verdict == Verdict::Skipped) {
      o << std::setw(14) << "-" << std::setw(14) << "-";
    } else {
      std::ostringstream a, b;
      a << std::scientific << std::setprecision(3) << x.max_residual;
      b << std::scientific << std::setprecision(3) << x.mean_residual;
      o << std::setw(14) << a.str() << std::setw(14) << b.str();
    }
    o << to_string(x.verdict);
    if (!x.note.empty()) o << "  (" << x.note << ")";
    o << '\n';
  }
  int pass = 0, fail = 0, skip = 0;
  for (const auto& x : r.results) (x.verdict == Verdict::Pass ? pass : x.verdict == Verdict::Fail ? fail : skip)++;
  o << "\n" << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return o.str();
}

inline std::string emit(const Report& r, Format f) {
  switch (f) {
    case Format::Json: return to_json(r).dump(2) + "\n";
    case Format::Csv: return to_csv(r);
    case Format::Text: return to_text(r);
  }
  return {};
}

}  // namespace conecurv
