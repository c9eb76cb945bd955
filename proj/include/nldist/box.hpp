#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace nldist {

inline constexpr double kInvariantTol = 1e-9;
inline constexpr double kOracleTol = 1e-12;

// Raw conditional probability table p[x][y][a][b] with binary inputs and
// d-ary outputs. Stored row-major in (x, y, a, b). Carries no invariants
// beyond its shape; use Box for a validated nonsignaling box.
class ProbTable {
 public:
  explicit ProbTable(int d);
  ProbTable(int d, std::vector<double> values);

  int dim() const noexcept { return d_; }
  std::size_t size() const noexcept { return p_.size(); }

  std::size_t index(int x, int y, int a, int b) const noexcept {
    return ((static_cast<std::size_t>(x) * 2 + static_cast<std::size_t>(y)) * d_ + a) * d_ + b;
  }
  double operator()(int x, int y, int a, int b) const noexcept { return p_[index(x, y, a, b)]; }
  double& operator()(int x, int y, int a, int b) noexcept { return p_[index(x, y, a, b)]; }

  std::span<const double> values() const noexcept { return p_; }
  std::span<double> values() noexcept { return p_; }

  friend bool operator==(const ProbTable&, const ProbTable&) = default;

 private:
  int d_;
  std::vector<double> p_;
};

double max_abs_diff(const ProbTable& lhs, const ProbTable& rhs);

enum class Violation { none, normalization, nonnegativity, bob_marginal, alice_marginal };

std::string_view to_string(Violation v);

// Worst deviation per constraint family. bob_marginal is the A->B family
// (sum_a p[x,y,a,b] must not depend on x); alice_marginal is B->A.
struct ValidationReport {
  bool ok = true;
  double worst = 0.0;
  Violation worst_family = Violation::none;
  double normalization = 0.0;
  double nonnegativity = 0.0;
  double bob_marginal = 0.0;
  double alice_marginal = 0.0;
};

ValidationReport validate_nonsignaling(const ProbTable& table, double tol = kInvariantTol);

// Immutable, validated nonsignaling box.
class Box {
 public:
  // Clamps entries within tol of [0, 1] onto the interval, then checks
  // normalization and both marginal families. Throws std::invalid_argument.
  static Box from_table(ProbTable table, double tol = kInvariantTol);

  int dim() const noexcept { return table_.dim(); }
  const ProbTable& table() const noexcept { return table_; }
  double operator()(int x, int y, int a, int b) const noexcept { return table_(x, y, a, b); }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  explicit Box(ProbTable table) : table_(std::move(table)) {}
  ProbTable table_;
};

void require_dimension(int d);

/// Nonlocal vertex: uniform on (b - a) mod d == x*y. The PR box for d = 2.
Box make_nl_box(int d);
/// Local correlated box: uniform on a == b.
Box make_lc_box(int d);
/// Local deterministic box: a = b = d - 1 in every context.
Box make_ld_box(int d);
Box make_mixed_box(int d);

// Convex combination. Weights must be nonnegative and sum to 1.
Box mix(const std::vector<Box>& boxes, const std::vector<double>& weights);

// Entrywise affine combination; negative weights allowed, no validation of
// the result. Weights must still sum to 1.
ProbTable affine_combination(const std::vector<const ProbTable*>& tables,
                             const std::vector<double>& weights);

// Coefficients over the canonical basis {NL, Lc, Ld, mixed}.
struct AffineDecomposition {
  double c_nl = 0.0;
  double c_lc = 0.0;
  double c_ld = 0.0;
  double c_mix = 0.0;
  double residual = 0.0;

  double sum() const noexcept { return c_nl + c_lc + c_ld + c_mix; }
};

// Least-squares affine fit of the table over the canonical basis of its
// dimension. The residual is the max-norm reconstruction error.
AffineDecomposition decompose_affine(const ProbTable& table);
inline AffineDecomposition decompose_affine(const Box& box) { return decompose_affine(box.table()); }

// Table for c_nl*NL + c_lc*Lc + c_ld*Ld + c_mix*mixed (quasi-mixtures allowed).
ProbTable compose_basis(int d, double c_nl, double c_lc, double c_ld, double c_mix);

}  // namespace nldist
