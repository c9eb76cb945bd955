#include "nldist/random.hpp"

#include <algorithm>
#include <cmath>

namespace nldist {

std::vector<double> random_simplex_weights(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) {
    v = expo(rng);
    total += v;
  }
  for (double& v : w) v /= total;
  return w;
}

namespace {

ProbTable random_vertex(int d, Rng& rng) {
  std::uniform_int_distribution<int> sym(0, d - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  ProbTable t(d);
  switch (kind(rng)) {
    case 0: {  // local deterministic a = alpha(x), b = beta(y)
      const int alpha[2] = {sym(rng), sym(rng)};
      const int beta[2] = {sym(rng), sym(rng)};
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) t(x, y, alpha[x], beta[y]) = 1.0;
      }
      break;
    }
    case 1: {  // uniform on (b - a) mod d == h(x, y)
      int h[2][2];
      for (auto& row : h) {
        for (int& v : row) v = sym(rng);
      }
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          for (int a = 0; a < d; ++a) t(x, y, a, (a + h[x][y]) % d) = 1.0 / d;
        }
      }
      break;
    }
    default: {
      const double u = 1.0 / (static_cast<double>(d) * d);
      std::fill(t.values().begin(), t.values().end(), u);
    }
  }
  return t;
}

}  // namespace

Box random_nonsignaling_box(int d, Rng& rng) {
  std::uniform_int_distribution<int> count(1, 6);
  const int k = count(rng);
  std::vector<ProbTable> vertices;
  vertices.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) vertices.push_back(random_vertex(d, rng));
  const std::vector<double> w = random_simplex_weights(vertices.size(), rng);

  std::vector<const ProbTable*> ptrs;
  for (const auto& v : vertices) ptrs.push_back(&v);
  const ProbTable inside = affine_combination(ptrs, w);

  const double u = 1.0 / (static_cast<double>(d) * d);
  std::uniform_real_distribution<double> stretch(1.0, 2.0);
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double s = stretch(rng);
    ProbTable out(d);
    bool nonneg = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double v = u + s * (inside.values()[i] - u);
      if (v < 0.0) {
        nonneg = false;
        break;
      }
      out.values()[i] = v;
    }
    if (nonneg) return Box::from_table(std::move(out));
  }
  return Box::from_table(inside);
}

WiringSpec random_wiring(int d, Rng& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  std::uniform_int_distribution<int> sym(0, d - 1);
  const auto n = static_cast<std::size_t>(d);
  auto bits = [&] {
    WiringSpec::InputTable t(2, std::vector<int>(n));
    for (auto& row : t) {
      for (int& v : row) v = bit(rng);
    }
    return t;
  };
  auto syms = [&] {
    WiringSpec::OutputTable t(n, std::vector<int>(n));
    for (auto& row : t) {
      for (int& v : row) v = sym(rng);
    }
    return t;
  };
  auto fa = bits();
  auto fb = bits();
  auto ga = syms();
  auto gb = syms();
  return WiringSpec(d, std::move(fa), std::move(fb), std::move(ga), std::move(gb));
}

}  // namespace nldist
