#pragma once

#include <random>

#include "nldist/box.hpp"
#include "nldist/wiring.hpp"

namespace nldist {

using Rng = std::mt19937_64;

// Random nonsignaling box: a random convex mixture of local deterministic
// boxes, shifted-relation boxes (uniform on b - a = h(x, y) mod d) and the
// mixed box, then pushed away from the mixed box by a random factor >= 1 as
// long as every entry stays nonnegative (rejection step). Affine moves keep
// normalization and both marginal families exact, so the result can leave
// the generating hull.
Box random_nonsignaling_box(int d, Rng& rng);

// Uniformly random deterministic wiring tables.
WiringSpec random_wiring(int d, Rng& rng);

// Random point of the probability simplex of the given size.
std::vector<double> random_simplex_weights(std::size_t n, Rng& rng);

}  // namespace nldist
