#pragma once

#include <array>

#include "nldist/box.hpp"

namespace nldist {

struct CglmpReport {
  // correlators[x][y] = E_xy
  std::array<std::array<double, 2>, 2> correlators{};
  // E_00 + E_10 + E_01 - E_11; local bound 2, algebraic maximum 4.
  double value = 0.0;
};

// Weighted residue correlator
//   E_xy = sum_{k=0}^{floor(d/2)-1} (1 - 2k/(d-1)) [P(b-a = -k mod d) - P(b-a = k+1 mod d)].
double correlator(const ProbTable& table, int x, int y);
inline double correlator(const Box& box, int x, int y) { return correlator(box.table(), x, y); }

CglmpReport cglmp_value(const ProbTable& table);
inline CglmpReport cglmp_value(const Box& box) { return cglmp_value(box.table()); }

}  // namespace nldist
