// Prints the scalar invariants of every catalog example at the box center.
#include <cstdio>

#include "conecurv/conecurv.hpp"

int main() {
  using namespace conecurv;
  std::printf("%-28s %9s %9s %9s %9s %9s %9s\n", "example", "tau", "tau*", "tr h^2", "|Dphi|^2", "|Deta|^2", "f");
  for (const auto& name : example_names()) {
    const Model m(get_example(name).structure);
    const BasePoint b = m.base_at(m.structure().chart->center());
    std::printf("%-28s %9.4f %9.4f %9.4f %9.4f %9.4f %9.4f\n", name.c_str(), b.tau(), b.taus, b.trh2, b.nphi, b.neta, b.f);
  }
}
