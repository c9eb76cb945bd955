#include "nldist/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "nldist/box.hpp"
#include "nldist/distillation.hpp"

namespace nldist {

Dim Dim::finite(int d) {
  require_dimension(d);
  Dim out;
  out.d_ = d;
  return out;
}

Dim Dim::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinite();
  int d = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, d);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("invalid dimension '" + text + "'");
  }
  return finite(d);
}

int Dim::value() const {
  if (!d_) throw std::invalid_argument("dimension is the infinite limit");
  return *d_;
}

std::string Dim::str() const { return d_ ? std::to_string(*d_) : "inf"; }

double predict_epsilon(Protocol protocol, double epsilon, const Dim& d) {
  if (protocol == Protocol::B) return predict_epsilon_b(epsilon);
  return d.is_infinite() ? epsilon : predict_epsilon_a(epsilon, d.value());
}

std::vector<double> epsilon_grid(int steps) {
  if (steps < 1) throw std::invalid_argument("grid needs at least one step");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) out.push_back(static_cast<double>(i) / steps);
  return out;
}

std::vector<EfficiencyRow> efficiency_curve(const EfficiencyGrid& grid) {
  for (double e : grid.epsilons) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
  std::vector<Dim> dims = grid.dims;
  std::sort(dims.begin(), dims.end());
  std::vector<double> eps = grid.epsilons;
  std::sort(eps.begin(), eps.end());

  std::vector<EfficiencyRow> rows;
  rows.reserve(dims.size() * eps.size());
  for (const Dim& d : dims) {
    for (double e : eps) {
      rows.push_back({grid.protocol, d, e, 2.0 + 2.0 * e,
                      2.0 + 2.0 * predict_epsilon(grid.protocol, e, d)});
    }
  }
  return rows;
}

RegionPoint works_region(double xi, double gamma, const Dim& d) {
  if (!(xi >= 0.0 && gamma >= 0.0) || xi + gamma > 1.0 + kInvariantTol) {
    throw std::invalid_argument("(xi, gamma) must lie in the simplex xi, gamma >= 0, xi + gamma <= 1");
  }
  const double initial = initial_noisy_cglmp(xi, gamma);
  const double final_value =
      d.is_infinite() ? 4.0 * xi * xi + 8.0 * xi * gamma + 2.0 * gamma * gamma
                      : noisy_final_cglmp({xi, gamma, LocalFamily::Ld, d.value()});
  const double margin = final_value - initial;
  return {xi, gamma, d, initial, final_value, margin > 0.0, margin};
}

std::vector<std::pair<double, double>> simplex_grid(int steps) {
  if (steps < 1) throw std::invalid_argument("grid needs at least one step");
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(steps + 1) * static_cast<std::size_t>(steps + 2) / 2);
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      out.emplace_back(static_cast<double>(i) / steps, static_cast<double>(j) / steps);
    }
  }
  return out;
}

std::vector<RegionPoint> region_map_serial(const std::vector<std::pair<double, double>>& points,
                                           const Dim& d) {
  std::vector<RegionPoint> out;
  out.reserve(points.size());
  for (const auto& [xi, gamma] : points) out.push_back(works_region(xi, gamma, d));
  return out;
}

std::vector<RegionPoint> region_map(const std::vector<std::pair<double, double>>& points,
                                    const Dim& d) {
  for (const auto& [xi, gamma] : points) {
    if (!(xi >= 0.0 && gamma >= 0.0) || xi + gamma > 1.0 + kInvariantTol) {
      throw std::invalid_argument("region point outside the simplex");
    }
  }
  std::vector<RegionPoint> out(points.size(), RegionPoint{0.0, 0.0, d, 0.0, 0.0, false, 0.0});
  const long long n = static_cast<long long>(points.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto& [xi, gamma] = points[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = works_region(xi, gamma, d);
  }
  return out;
}

FixedPoints fixed_points(Protocol protocol, const Dim& d) {
  // eps' - eps is eps(1 - eps)/d for A and eps(1 - eps) for B.
  if (protocol == Protocol::A && d.is_infinite()) return {{}, true};
  return {{0.0, 1.0}, false};
}

}  // namespace nldist
