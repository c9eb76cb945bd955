#include "nldist/box.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nldist {

void require_dimension(int d) {
  if (d < 2) {
    throw std::invalid_argument("box dimension must be >= 2, got " + std::to_string(d));
  }
}

ProbTable::ProbTable(int d) : d_(d) {
  require_dimension(d);
  p_.assign(4 * static_cast<std::size_t>(d) * static_cast<std::size_t>(d), 0.0);
}

ProbTable::ProbTable(int d, std::vector<double> values) : d_(d), p_(std::move(values)) {
  require_dimension(d);
  const std::size_t want = 4 * static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (p_.size() != want) {
    throw std::invalid_argument("probability table for d=" + std::to_string(d) + " needs " +
                                std::to_string(want) + " entries, got " +
                                std::to_string(p_.size()));
  }
}

double max_abs_diff(const ProbTable& lhs, const ProbTable& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double worst = 0.0;
  auto a = lhs.values();
  auto b = rhs.values();
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

std::string_view to_string(Violation v) {
  switch (v) {
    case Violation::none: return "none";
    case Violation::normalization: return "normalization";
    case Violation::nonnegativity: return "nonnegativity";
    case Violation::bob_marginal: return "bob_marginal";
    case Violation::alice_marginal: return "alice_marginal";
  }
  return "unknown";
}

ValidationReport validate_nonsignaling(const ProbTable& t, double tol) {
  const int d = t.dim();
  ValidationReport r;

  for (double v : t.values()) {
    if (!std::isfinite(v)) {
      r.nonnegativity = std::numeric_limits<double>::infinity();
    } else if (v < 0.0) {
      r.nonnegativity = std::max(r.nonnegativity, -v);
    }
  }

  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      double total = 0.0;
      for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) total += t(x, y, a, b);
      }
      r.normalization = std::max(r.normalization, std::abs(total - 1.0));
    }
  }

  // Bob's marginal must not depend on Alice's input x.
  for (int y = 0; y < 2; ++y) {
    for (int b = 0; b < d; ++b) {
      double m0 = 0.0, m1 = 0.0;
      for (int a = 0; a < d; ++a) {
        m0 += t(0, y, a, b);
        m1 += t(1, y, a, b);
      }
      r.bob_marginal = std::max(r.bob_marginal, std::abs(m0 - m1));
    }
  }
  // Alice's marginal must not depend on Bob's input y.
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < d; ++a) {
      double m0 = 0.0, m1 = 0.0;
      for (int b = 0; b < d; ++b) {
        m0 += t(x, 0, a, b);
        m1 += t(x, 1, a, b);
      }
      r.alice_marginal = std::max(r.alice_marginal, std::abs(m0 - m1));
    }
  }

  const std::pair<double, Violation> families[] = {
      {r.normalization, Violation::normalization},
      {r.nonnegativity, Violation::nonnegativity},
      {r.bob_marginal, Violation::bob_marginal},
      {r.alice_marginal, Violation::alice_marginal},
  };
  for (const auto& [value, family] : families) {
    if (value > r.worst || (std::isnan(value))) {
      r.worst = value;
      r.worst_family = family;
    }
  }
  r.ok = r.worst <= tol;
  if (r.ok) r.worst_family = Violation::none;
  return r;
}

Box Box::from_table(ProbTable table, double tol) {
  for (double& v : table.values()) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("box entry is not finite");
    }
    if (v < -tol || v > 1.0 + tol) {
      std::ostringstream msg;
      msg << "box entry " << v << " outside [0, 1]";
      throw std::invalid_argument(msg.str());
    }
    v = std::clamp(v, 0.0, 1.0);
  }
  const ValidationReport report = validate_nonsignaling(table, tol);
  if (!report.ok) {
    std::ostringstream msg;
    msg << "table is not a valid nonsignaling box: " << to_string(report.worst_family)
        << " violated by " << report.worst;
    throw std::invalid_argument(msg.str());
  }
  return Box(std::move(table));
}

Box make_nl_box(int d) {
  ProbTable t(d);
  const double w = 1.0 / d;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < d; ++a) t(x, y, a, (a + x * y) % d) = w;
    }
  }
  return Box::from_table(std::move(t));
}

Box make_lc_box(int d) {
  ProbTable t(d);
  const double w = 1.0 / d;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int a = 0; a < d; ++a) t(x, y, a, a) = w;
    }
  }
  return Box::from_table(std::move(t));
}

Box make_ld_box(int d) {
  ProbTable t(d);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) t(x, y, d - 1, d - 1) = 1.0;
  }
  return Box::from_table(std::move(t));
}

Box make_mixed_box(int d) {
  ProbTable t(d);
  const double w = 1.0 / (static_cast<double>(d) * d);
  std::fill(t.values().begin(), t.values().end(), w);
  return Box::from_table(std::move(t));
}

namespace {

void check_weights(std::size_t n_tables, const std::vector<double>& weights, int d_first,
                   const auto& dim_of) {
  if (n_tables == 0) throw std::invalid_argument("mix: no boxes given");
  if (n_tables != weights.size()) {
    throw std::invalid_argument("mix: number of weights does not match number of boxes");
  }
  for (std::size_t i = 0; i < n_tables; ++i) {
    if (dim_of(i) != d_first) throw std::invalid_argument("mix: boxes have different dimensions");
    if (!std::isfinite(weights[i])) throw std::invalid_argument("mix: weight is not finite");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > kInvariantTol) {
    std::ostringstream msg;
    msg << "mix: weights sum to " << total << ", expected 1";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

ProbTable affine_combination(const std::vector<const ProbTable*>& tables,
                             const std::vector<double>& weights) {
  if (tables.empty()) throw std::invalid_argument("mix: no boxes given");
  const int d = tables.front()->dim();
  check_weights(tables.size(), weights, d, [&](std::size_t i) { return tables[i]->dim(); });
  ProbTable out(d);
  auto dst = out.values();
  for (std::size_t k = 0; k < tables.size(); ++k) {
    auto src = tables[k]->values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += weights[k] * src[i];
  }
  return out;
}

Box mix(const std::vector<Box>& boxes, const std::vector<double>& weights) {
  if (boxes.empty()) throw std::invalid_argument("mix: no boxes given");
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mix: weights must be nonnegative");
  }
  std::vector<const ProbTable*> tables;
  tables.reserve(boxes.size());
  for (const Box& b : boxes) tables.push_back(&b.table());
  return Box::from_table(affine_combination(tables, weights));
}

ProbTable compose_basis(int d, double c_nl, double c_lc, double c_ld, double c_mix) {
  const Box nl = make_nl_box(d), lc = make_lc_box(d), ld = make_ld_box(d), mx = make_mixed_box(d);
  return affine_combination({&nl.table(), &lc.table(), &ld.table(), &mx.table()},
                            {c_nl, c_lc, c_ld, c_mix});
}

AffineDecomposition decompose_affine(const ProbTable& table) {
  const int d = table.dim();
  const Box nl = make_nl_box(d), lc = make_lc_box(d), ld = make_ld_box(d), mx = make_mixed_box(d);
  const auto n = static_cast<Eigen::Index>(table.size());

  // Eliminate the sum-to-one constraint: p - mixed = sum_i c_i (B_i - mixed).
  Eigen::MatrixXd basis(n, 3);
  Eigen::VectorXd rhs(n);
  const double u = mx.table().values()[0];
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    basis(i, 0) = nl.table().values()[k] - u;
    basis(i, 1) = lc.table().values()[k] - u;
    basis(i, 2) = ld.table().values()[k] - u;
    rhs(i) = table.values()[k] - u;
  }
  const Eigen::Vector3d c = basis.colPivHouseholderQr().solve(rhs);

  AffineDecomposition out;
  out.c_nl = c(0);
  out.c_lc = c(1);
  out.c_ld = c(2);
  out.c_mix = 1.0 - c(0) - c(1) - c(2);
  out.residual = max_abs_diff(compose_basis(d, out.c_nl, out.c_lc, out.c_ld, out.c_mix), table);
  return out;
}

}  // namespace nldist
