#include "nldist/distillation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nldist/cglmp.hpp"

namespace nldist {

std::string_view to_string(LocalFamily f) { return f == LocalFamily::Lc ? "lc" : "ld"; }

LocalFamily parse_family(std::string_view text) {
  if (text == "lc" || text == "Lc" || text == "LC") return LocalFamily::Lc;
  if (text == "ld" || text == "Ld" || text == "LD") return LocalFamily::Ld;
  throw std::invalid_argument("unknown local family '" + std::string(text) + "' (expected lc or ld)");
}

void MixtureParams::validate() const {
  require_dimension(d);
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1]");
  }
}

void NoisyParams::validate() const {
  require_dimension(d);
  if (!(xi >= 0.0 && gamma >= 0.0)) throw std::invalid_argument("xi and gamma must be >= 0");
  if (xi + gamma > 1.0 + kInvariantTol) throw std::invalid_argument("xi + gamma must be <= 1");
}

Box local_box(LocalFamily family, int d) {
  return family == LocalFamily::Lc ? make_lc_box(d) : make_ld_box(d);
}

Box build_mixture(const MixtureParams& p) {
  p.validate();
  return mix({make_nl_box(p.d), local_box(p.family, p.d)}, {p.epsilon, 1.0 - p.epsilon});
}

Box build_noisy(const NoisyParams& p) {
  p.validate();
  const double mu = std::max(0.0, p.mu());
  return mix({make_nl_box(p.d), local_box(p.local_family, p.d), make_mixed_box(p.d)},
             {p.xi, 1.0 - p.xi - mu, mu});
}

double predict_epsilon_a(double epsilon, int d) {
  const double inv = 1.0 / d;
  return (1.0 + inv) * epsilon - inv * epsilon * epsilon;
}

double predict_epsilon_b(double epsilon) { return 2.0 * epsilon - epsilon * epsilon; }

double predict_epsilon(Protocol protocol, double epsilon, int d) {
  return protocol == Protocol::A ? predict_epsilon_a(epsilon, d) : predict_epsilon_b(epsilon);
}

LocalFamily native_family(Protocol protocol) {
  return protocol == Protocol::A ? LocalFamily::Lc : LocalFamily::Ld;
}

namespace {

double mixture_cglmp(double epsilon) { return 2.0 + 2.0 * epsilon; }

// epsilon if the table is epsilon*NL + (1-epsilon)*local(family) exactly.
std::optional<double> family_weight(const ProbTable& table, LocalFamily family) {
  const AffineDecomposition dec = decompose_affine(table);
  const double other = family == LocalFamily::Lc ? dec.c_ld : dec.c_lc;
  if (dec.residual > kFamilyTol || std::abs(other) > kFamilyTol || std::abs(dec.c_mix) > kFamilyTol) {
    return std::nullopt;
  }
  if (dec.c_nl < -kFamilyTol || dec.c_nl > 1.0 + kFamilyTol) return std::nullopt;
  return std::clamp(dec.c_nl, 0.0, 1.0);
}

}  // namespace

DistillationResult distill_with(const Box& box, const WiringSpec& spec) {
  Box final_box = wire(box, box, spec);
  const double final_cglmp = cglmp_value(final_box).value;
  return DistillationResult{std::move(final_box), cglmp_value(box).value, final_cglmp,
                            std::nullopt, std::nullopt, std::nullopt};
}

DistillationResult distill_once(const Box& box, Protocol protocol) {
  const int d = box.dim();
  DistillationResult result = distill_with(box, protocol_wiring(protocol, d));

  const LocalFamily family = native_family(protocol);
  if (auto eps = family_weight(box.table(), family)) {
    const double eps_out = predict_epsilon(protocol, *eps, d);
    ClosedFormPrediction pred;
    pred.epsilon_in = *eps;
    pred.epsilon_out = eps_out;
    pred.box = build_mixture({eps_out, family, d});
    pred.cglmp = mixture_cglmp(eps_out);
    result.oracle_residual = max_abs_diff(result.final_box.table(), pred.box->table());
    result.cglmp_residual = std::abs(result.final_cglmp - pred.cglmp);
    result.prediction = std::move(pred);
  }
  return result;
}

std::vector<double> epsilon_trajectory(Protocol protocol, double epsilon, int d, int rounds) {
  if (rounds < 0) throw std::invalid_argument("rounds must be >= 0");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(rounds) + 1);
  out.push_back(epsilon);
  for (int r = 0; r < rounds; ++r) {
    epsilon = predict_epsilon(protocol, epsilon, d);
    out.push_back(epsilon);
  }
  return out;
}

std::vector<IterationRow> distill_iterate(const MixtureParams& params, Protocol protocol, int rounds) {
  params.validate();
  const std::vector<double> eps = epsilon_trajectory(protocol, params.epsilon, params.d, rounds);
  const WiringSpec spec = protocol_wiring(protocol, params.d);

  std::vector<IterationRow> rows;
  rows.reserve(eps.size());
  Box carried = build_mixture(params);
  for (int r = 0; r <= rounds; ++r) {
    if (r > 0) carried = wire(carried, carried, spec);
    const Box expected = build_mixture({eps[static_cast<std::size_t>(r)], params.family, params.d});
    rows.push_back({r, eps[static_cast<std::size_t>(r)], cglmp_value(carried).value,
                    max_abs_diff(carried.table(), expected.table())});
  }
  return rows;
}

double noisy_final_cglmp(const NoisyParams& p) {
  const double inv2 = 1.0 / (static_cast<double>(p.d) * p.d);
  return (4.0 - 2.0 * inv2) * p.xi * p.xi + (8.0 - 2.0 * inv2) * p.xi * p.gamma +
         2.0 * inv2 * p.xi + 2.0 * p.gamma * p.gamma;
}

double noisy_lc_final_cglmp(const NoisyParams& p) {
  const double inv = 1.0 / p.d;
  const double inv2 = inv * inv;
  return (4.0 - 2.0 * inv2) * p.xi * p.xi + (6.0 + 2.0 * inv - 2.0 * inv2) * p.xi * p.gamma +
         2.0 * inv2 * p.xi + 2.0 * p.gamma * p.gamma;
}

double noisy_final_cglmp_plus_variant(double xi, double gamma, int d) {
  const double inv2 = 1.0 / (static_cast<double>(d) * d);
  return (4.0 + 2.0 * inv2) * xi * xi + (8.0 - 2.0 * inv2) * xi * gamma + 2.0 * inv2 * xi +
         2.0 * gamma * gamma;
}

AffineDecomposition noisy_final_decomposition(const NoisyParams& p) {
  const double inv2 = 1.0 / (static_cast<double>(p.d) * p.d);
  const double xi = p.xi, g = p.gamma, mu = p.mu();
  AffineDecomposition c;
  c.c_nl = (1.0 - inv2) * xi * xi + (2.0 - inv2) * xi * g + inv2 * xi;
  c.c_ld = g * g;
  c.c_mix = (1.0 + xi + g) * mu;
  c.c_lc = -inv2 * xi * mu;
  return c;
}

DistillationResult distill_noisy(const NoisyParams& params) {
  const Box box = build_noisy(params);
  if (params.local_family == LocalFamily::Ld) {
    DistillationResult result = distill_with(box, protocol_wiring(Protocol::B, params.d));
    const AffineDecomposition c = noisy_final_decomposition(params);
    ClosedFormPrediction pred;
    pred.box = Box::from_table(compose_basis(params.d, c.c_nl, c.c_lc, c.c_ld, c.c_mix));
    pred.cglmp = noisy_final_cglmp(params);
    result.oracle_residual = max_abs_diff(result.final_box.table(), pred.box->table());
    result.cglmp_residual = std::abs(result.final_cglmp - pred.cglmp);
    result.prediction = std::move(pred);
    return result;
  }
  DistillationResult result = distill_with(box, protocol_wiring(Protocol::A, params.d));
  ClosedFormPrediction pred;
  pred.cglmp = noisy_lc_final_cglmp(params);
  result.cglmp_residual = std::abs(result.final_cglmp - pred.cglmp);
  result.prediction = std::move(pred);
  return result;
}

}  // namespace nldist

namespace nldist {

std::string_view to_string(BasisBox b) {
  switch (b) {
    case BasisBox::NL: return "NL";
    case BasisBox::Lc: return "Lc";
    case BasisBox::Ld: return "Ld";
    case BasisBox::Mixed: return "1";
  }
  return "?";
}

Box basis_box(BasisBox which, int d) {
  switch (which) {
    case BasisBox::NL: return make_nl_box(d);
    case BasisBox::Lc: return make_lc_box(d);
    case BasisBox::Ld: return make_ld_box(d);
    case BasisBox::Mixed: break;
  }
  return make_mixed_box(d);
}

std::vector<TransformationRule> comparator_transformation_rules(int d) {
  require_dimension(d);
  const double inv = 1.0 / d;
  const double inv2 = inv * inv;
  auto c = [](double nl, double lc, double ld, double mx) { return AffineDecomposition{nl, lc, ld, mx, 0.0}; };
  using enum BasisBox;
  return {
      {Protocol::A, NL, NL, c(1, 0, 0, 0)},
      {Protocol::A, NL, Lc, c(1, 0, 0, 0)},
      {Protocol::A, Lc, NL, c(inv, 1.0 - inv, 0, 0)},
      {Protocol::A, Lc, Lc, c(0, 1, 0, 0)},
      {Protocol::B, NL, NL, c(1, 0, 0, 0)},
      {Protocol::B, NL, Ld, c(1, 0, 0, 0)},
      {Protocol::B, Ld, NL, c(1, 0, 0, 0)},
      {Protocol::B, Ld, Ld, c(0, 0, 1, 0)},
      {Protocol::B, NL, Mixed, c(0, 0, 0, 1)},
      {Protocol::B, Mixed, NL, c(inv2, -inv2, 0, 1)},
      {Protocol::B, Ld, Mixed, c(0, 0, 0, 1)},
      {Protocol::B, Mixed, Ld, c(0, 0, 0, 1)},
      {Protocol::B, Mixed, Mixed, c(0, 0, 0, 1)},
  };
}

}  // namespace nldist
