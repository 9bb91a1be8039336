// veri: run the identity suite on a catalog example or a spec file.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "conecurv/runner/emit.hpp"

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) {
    const auto a = tok.find_first_not_of(' ');
    const auto b = tok.find_last_not_of(' ');
    if (a != std::string::npos) out.push_back(tok.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace conecurv;
  CLI::App app{"Curvature identity verifier for almost contact metric manifolds and their cones"};
  RunConfig cfg;
  std::string checks = "all", tvals = "0,0.5", deta = "half", out, format = "text", export_name;
  bool list = false;
  auto* spec = app.add_option("--spec", cfg.spec_path, "structure file");
  auto* ex = app.add_option("--example", cfg.example, "catalog example name");
  spec->excludes(ex);
  app.add_option("--points", cfg.points, "number of sample points (box center included)")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--tol", cfg.tol, "pass tolerance on the relative residual");
  app.add_option("--fail-threshold", cfg.fail_threshold, "residual above which a failure counts as decisive");
  app.add_option("--checks", checks, "comma list of groups (axioms, basic, cone, identities, gray, dim3, hcontact, classify, all) or ids");
  app.add_option("--t-values", tvals, "comma list of cone t values");
  app.add_option("--deta-convention", deta, "half or plain")->check(CLI::IsMember({"half", "plain"}));
  app.add_option("--out", out, "output file (default stdout)");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app.add_flag("--list", list, "list catalog examples and identity ids");
  app.add_option("--export-spec", export_name, "print a catalog example as a spec file and exit");
  CLI11_PARSE(app, argc, argv);

  try {
    cfg.deta = parse_deta_convention(deta);
    if (list) {
      std::cout << "examples:";
      for (const auto& n : example_names()) std::cout << ' ' << n;
      std::cout << " darboux_sasakian(n)\n";
      for (const auto& c : identity_table()) std::cout << c.group << '\t' << c.id << '\t' << c.label << '\n';
      return 0;
    }
    if (!export_name.empty()) {
      std::cout << write_spec(get_example(export_name, cfg.deta).structure);
      return 0;
    }
    cfg.checks = split(checks);
    cfg.t_values.clear();
    for (const auto& t : split(tvals)) cfg.t_values.push_back(std::stod(t));
    const Format fmt = parse_format(format);
    const Report rep = run(cfg);
    const std::string text = emit(rep, fmt);
    if (out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw std::runtime_error("cannot write '" + out + "'");
      f << text;
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
