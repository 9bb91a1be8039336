// Scalar curvatures of the cone over an example along t. They scale like e^{2t}.
#include <cmath>
#include <cstdio>
#include <string>

#include "conecurv/conecurv.hpp"

int main(int argc, char** argv) {
  using namespace conecurv;
  const std::string name = argc > 1 ? argv[1] : "flat_contact_r3";
  const Model m(get_example(name).structure);
  const auto p = m.structure().chart->center();
  std::printf("cone over %s\n%6s %12s %12s %12s %14s\n", name.c_str(), "t", "taubar", "taubar*", "|DJ|^2",
              "e^{-2t}|DJ|^2");
  for (double t = -1.0; t <= 1.0 + 1e-9; t += 0.5) {
    const ConePoint c = m.cone_at(p, t);
    std::printf("%6.2f %12.6f %12.6f %12.6f %14.6f\n", t, c.tau(), c.taus, c.ndj, std::exp(-2 * t) * c.ndj);
  }
}
