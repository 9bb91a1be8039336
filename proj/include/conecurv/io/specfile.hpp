#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "../contact/structure.hpp"
#include "../exprlang/parser.hpp"

// Sectioned plain-text structure files:
//
//   [meta]    name = ..., n = ...
//   [chart]   coords = x y z ; x = [lo, hi] ; exclude = <expr>
//   [metric]  x y = <expr>        g_xy (symmetric completion)
//   [eta]     x = <expr>          eta_x
//   [xi]      x = <expr>          xi^x
//   [phi]     y x = <expr>        phi^y_x, i.e. phi d_x has d_y-component <expr>
//
// Omitted entries are 0; '#' starts a comment.

namespace conecurv {

class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& msg, int line, int column)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg
                                    : msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> w;
  for (std::string x; in >> x;) w.push_back(x);
  return w;
}

struct SpecLine {
  int number;
  int key_col;    // 1-based column of the key
  int value_col;  // 1-based column of the value
  std::string key, value;
};

}  // namespace detail

inline AlmostContactStructure parse_spec(const std::string& text) {
  using detail::SpecLine;
  std::map<std::string, std::vector<SpecLine>> sections;
  std::vector<std::string> order;
  std::string current;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    const std::string t = detail::trim(line);
    if (t.empty()) continue;
    const int indent = static_cast<int>(line.find_first_not_of(" \t")) + 1;
    if (t.front() == '[') {
      if (t.back() != ']') throw SpecError("unterminated section header", lineno, indent);
      current = detail::trim(t.substr(1, t.size() - 2));
      static const char* known[] = {"meta", "chart", "metric", "eta", "xi", "phi"};
      if (std::find(std::begin(known), std::end(known), current) == std::end(known))
        throw SpecError("unknown section [" + current + "]", lineno, indent);
      if (sections.count(current)) throw SpecError("duplicate section [" + current + "]", lineno, indent);
      sections[current];
      order.push_back(current);
      continue;
    }
    if (current.empty()) throw SpecError("entry outside of any section", lineno, indent);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError("expected 'key = value'", lineno, indent);
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw SpecError("missing key before '='", lineno, indent);
    const int vcol = static_cast<int>(line.find_first_not_of(" \t", eq + 1)) + 1;
    if (value.empty()) throw SpecError("missing value after '='", lineno, static_cast<int>(eq) + 2);
    sections[current].push_back(SpecLine{lineno, indent, vcol, key, value});
  }

  for (const char* s : {"chart", "metric", "eta", "xi", "phi"})
    if (!sections.count(s)) throw SpecError(std::string("missing component: no [") + s + "] section", 0, 0);

  // chart
  std::vector<std::string> names;
  std::map<std::string, Interval> dom;
  std::vector<const SpecLine*> excludes;
  std::vector<const SpecLine*> ranges;
  for (const SpecLine& l : sections["chart"]) {
    if (l.key == "coords") {
      if (!names.empty()) throw SpecError("coords declared twice", l.number, l.key_col);
      names = detail::words(l.value);
    } else if (l.key == "exclude") {
      excludes.push_back(&l);
    } else {
      ranges.push_back(&l);
    }
  }
  if (names.empty()) throw SpecError("missing component: [chart] has no coords", 0, 0);
  std::shared_ptr<Chart> bare;
  try {
    std::vector<Interval> unit(names.size(), Interval{-1.0, 1.0});
    bare = std::make_shared<Chart>(names, unit);
  } catch (const std::invalid_argument& e) {
    const SpecLine& l = sections["chart"].front();
    throw SpecError(e.what(), l.number, l.value_col);
  }
  auto parse_at = [](const SpecLine& l, const std::string& text, int col, const Chart& chart) {
    try {
      return expr::parse(text, chart);
    } catch (const expr::ParseError& e) {
      throw SpecError(e.message(), l.number, col + static_cast<int>(e.position()));
    }
  };
  auto constant = [&](const SpecLine& l, const std::string& text, int col) {
    const expr::Expr e = parse_at(l, text, col, *bare);
    if (expr::max_variable(e) >= 0) throw SpecError("interval bounds must be constants", l.number, col);
    return expr::evaluate(e, std::vector<double>{});
  };
  for (const SpecLine* l : ranges) {
    if (!bare->index_of(l->key)) throw SpecError("unknown coordinate '" + l->key + "'", l->number, l->key_col);
    const std::string& v = l->value;
    if (v.front() != '[' || v.back() != ']') throw SpecError("expected an interval [lo, hi]", l->number, l->value_col);
    const auto comma = v.find(',');
    if (comma == std::string::npos) throw SpecError("expected an interval [lo, hi]", l->number, l->value_col);
    const double lo = constant(*l, v.substr(1, comma - 1), l->value_col + 1);
    const double hi = constant(*l, v.substr(comma + 1, v.size() - comma - 2), l->value_col + static_cast<int>(comma) + 1);
    dom[l->key] = Interval{lo, hi};
  }
  std::vector<Interval> domain;
  for (const auto& nm : names) domain.push_back(dom.count(nm) ? dom[nm] : Interval{-1.0, 1.0});
  std::vector<expr::Expr> excluded;
  for (const SpecLine* l : excludes) excluded.push_back(parse_at(*l, l->value, l->value_col, *bare));
  std::shared_ptr<const Chart> chart;
  try {
    chart = std::make_shared<const Chart>(names, domain, excluded);
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what(), 0, 0);
  }
  const int d = chart->dim();

  auto index = [&](const SpecLine& l, const std::string& w) {
    const auto i = chart->index_of(w);
    if (!i) throw SpecError("unknown coordinate '" + w + "'", l.number, l.key_col);
    return *i;
  };
  auto field = [&](const std::string& sec, std::vector<Slot> slots) {
    TensorField f = TensorField::zeros(chart, slots);
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(d), std::vector<bool>(static_cast<std::size_t>(d)));
    for (const SpecLine& l : sections[sec]) {
      const auto w = detail::words(l.key);
      if (static_cast<int>(w.size()) != static_cast<int>(slots.size()))
        throw SpecError("[" + sec + "] keys need " + std::to_string(slots.size()) + " coordinate name(s)", l.number,
                        l.key_col);
      const expr::Expr e = parse_at(l, l.value, l.value_col, *chart);
      if (w.size() == 1) {
        f = f.with({index(l, w[0])}, e);
      } else {
        int a = index(l, w[0]), b = index(l, w[1]);
        if (sec == "phi") std::swap(a, b);  // key is (upper, lower); storage is (lower, upper)
        if (seen[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
          throw SpecError("duplicate entry '" + l.key + "'", l.number, l.key_col);
        seen[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
        f = f.with({a, b}, e);
      }
    }
    return f;
  };

  AlmostContactStructure s;
  s.chart = chart;
  s.name = "unnamed";
  s.n = (d - 1) / 2;
  for (const SpecLine& l : sections["meta"]) {
    if (l.key == "name") {
      s.name = l.value;
    } else if (l.key == "n") {
      try {
        s.n = std::stoi(l.value);
      } catch (const std::exception&) {
        throw SpecError("n must be an integer", l.number, l.value_col);
      }
    } else {
      throw SpecError("unknown [meta] key '" + l.key + "'", l.number, l.key_col);
    }
  }
  if (d % 2 == 0) throw SpecError("dimension mismatch: " + std::to_string(d) + " coordinates, expected an odd number", 0, 0);
  if (d != 2 * s.n + 1)
    throw SpecError("dimension mismatch: " + std::to_string(d) + " coordinates but n = " + std::to_string(s.n), 0, 0);

  s.phi = field("phi", {Slot::Down, Slot::Up});
  s.xi = field("xi", {Slot::Up});
  s.eta = field("eta", {Slot::Down});
  try {
    s.g = MetricField(field("metric", {Slot::Down, Slot::Down}));
  } catch (const std::exception& e) {
    throw SpecError(std::string("metric: ") + e.what(), 0, 0);
  }
  s.validate();
  return s;
}

inline AlmostContactStructure load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open spec file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_spec(ss.str());
}

inline std::string write_spec(const AlmostContactStructure& s) {
  const Chart& c = *s.chart;
  const int d = c.dim();
  std::ostringstream out;
  out << "[meta]\nname = " << s.name << "\nn = " << s.n << "\n\n[chart]\ncoords =";
  for (const auto& nm : c.names()) out << ' ' << nm;
  out << '\n';
  for (int i = 0; i < d; ++i)
    out << c.names()[static_cast<std::size_t>(i)] << " = [" << expr::detail::format_number(c.domain()[static_cast<std::size_t>(i)].lo)
        << ", " << expr::detail::format_number(c.domain()[static_cast<std::size_t>(i)].hi) << "]\n";
  for (const auto& e : c.excluded()) out << "exclude = " << expr::to_string(e) << '\n';
  auto nonzero = [](const expr::Expr& e) { return !e.is_number(0.0); };
  out << "\n[metric]\n";
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j)
      if (nonzero(s.g.field()(i, j)))
        out << c.names()[static_cast<std::size_t>(i)] << ' ' << c.names()[static_cast<std::size_t>(j)] << " = "
            << expr::to_string(s.g.field()(i, j)) << '\n';
  out << "\n[eta]\n";
  for (int i = 0; i < d; ++i)
    if (nonzero(s.eta(i))) out << c.names()[static_cast<std::size_t>(i)] << " = " << expr::to_string(s.eta(i)) << '\n';
  out << "\n[xi]\n";
  for (int i = 0; i < d; ++i)
    if (nonzero(s.xi(i))) out << c.names()[static_cast<std::size_t>(i)] << " = " << expr::to_string(s.xi(i)) << '\n';
  out << "\n[phi]\n";
  for (int up = 0; up < d; ++up)
    for (int low = 0; low < d; ++low)
      if (nonzero(s.phi(low, up)))
        out << c.names()[static_cast<std::size_t>(up)] << ' ' << c.names()[static_cast<std::size_t>(low)] << " = "
            << expr::to_string(s.phi(low, up)) << '\n';
  return out.str();
}

}  // namespace conecurv
