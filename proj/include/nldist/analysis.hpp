#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nldist/wiring.hpp"

namespace nldist {

// A box dimension, or the symbolic d -> infinity limit.
class Dim {
 public:
  static Dim finite(int d);
  static Dim infinite() noexcept { return Dim(); }
  static Dim parse(const std::string& text);  // integer >= 2 or "inf"

  bool is_infinite() const noexcept { return !d_.has_value(); }
  int value() const;  // throws for the infinite limit
  std::string str() const;

  friend bool operator==(const Dim&, const Dim&) = default;
  // Finite dimensions ascending, infinity last.
  friend bool operator<(const Dim& l, const Dim& r) noexcept {
    if (l.is_infinite()) return false;
    if (r.is_infinite()) return true;
    return *l.d_ < *r.d_;
  }

 private:
  Dim() = default;
  std::optional<int> d_;
};

double predict_epsilon(Protocol protocol, double epsilon, const Dim& d);

struct EfficiencyGrid {
  Protocol protocol = Protocol::A;
  std::vector<Dim> dims;
  std::vector<double> epsilons;
};

struct EfficiencyRow {
  Protocol protocol;
  Dim d;
  double epsilon;
  double cglmp_initial;
  double cglmp_final;
};

// epsilon in [0, 1] with `steps` equal intervals (steps + 1 points).
std::vector<double> epsilon_grid(int steps);

// initial = 2 + 2 eps, final = 2 + 2 eps'. Rows sorted by (d, eps).
std::vector<EfficiencyRow> efficiency_curve(const EfficiencyGrid& grid);

struct RegionPoint {
  double xi;
  double gamma;
  Dim d;
  double cglmp_initial;
  double cglmp_final;
  bool works;     // strict improvement; the boundary itself is false
  double margin;  // final - initial
};

// Ld-noisy box under protocol B. The infinite mode uses the limit
// polynomial 4 xi^2 + 8 xi gamma + 2 gamma^2 symbolically.
RegionPoint works_region(double xi, double gamma, const Dim& d);

// Lattice points (i/steps, j/steps) with i + j <= steps, ordered by (i, j).
std::vector<std::pair<double, double>> simplex_grid(int steps);

std::vector<RegionPoint> region_map(const std::vector<std::pair<double, double>>& points, const Dim& d);
std::vector<RegionPoint> region_map_serial(const std::vector<std::pair<double, double>>& points,
                                           const Dim& d);

struct FixedPoints {
  std::vector<double> points;
  bool every_point_fixed = false;  // protocol A in the infinite limit
};

FixedPoints fixed_points(Protocol protocol, const Dim& d);

}  // namespace nldist
