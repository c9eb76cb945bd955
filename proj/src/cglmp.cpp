#include "nldist/cglmp.hpp"

#include <stdexcept>
#include <vector>

namespace nldist {

double correlator(const ProbTable& t, int x, int y) {
  if (x < 0 || x > 1 || y < 0 || y > 1) {
    throw std::invalid_argument("correlator: inputs must be bits");
  }
  const int d = t.dim();
  // residue[r] = P((b - a) mod d == r | x y)
  std::vector<double> residue(static_cast<std::size_t>(d), 0.0);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) residue[static_cast<std::size_t>(((b - a) % d + d) % d)] += t(x, y, a, b);
  }
  double e = 0.0;
  for (int k = 0; k < d / 2; ++k) {
    const double weight = 1.0 - 2.0 * k / (d - 1);
    const auto down = static_cast<std::size_t>((d - k) % d);
    const auto up = static_cast<std::size_t>((k + 1) % d);
    e += weight * (residue[down] - residue[up]);
  }
  return e;
}

CglmpReport cglmp_value(const ProbTable& t) {
  CglmpReport r;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) r.correlators[x][y] = correlator(t, x, y);
  }
  r.value = r.correlators[0][0] + r.correlators[1][0] + r.correlators[0][1] - r.correlators[1][1];
  return r;
}

}  // namespace nldist
