#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nldist/box.hpp"
#include "nldist/wiring.hpp"

namespace nldist {

enum class LocalFamily { Lc, Ld };

std::string_view to_string(LocalFamily f);
LocalFamily parse_family(std::string_view text);

// epsilon * NL + (1 - epsilon) * local
struct MixtureParams {
  double epsilon = 0.0;
  LocalFamily family = LocalFamily::Lc;
  int d = 2;

  void validate() const;
};

// xi * NL + gamma * local + mu * mixed, mu = 1 - xi - gamma
struct NoisyParams {
  double xi = 0.0;
  double gamma = 0.0;
  LocalFamily local_family = LocalFamily::Ld;
  int d = 2;

  double mu() const noexcept { return 1.0 - xi - gamma; }
  void validate() const;
};

Box local_box(LocalFamily family, int d);
Box build_mixture(const MixtureParams& params);
Box build_noisy(const NoisyParams& params);

/// (1 + 1/d) eps - eps^2 / d
double predict_epsilon_a(double epsilon, int d);
/// 2 eps - eps^2, any d
double predict_epsilon_b(double epsilon);
double predict_epsilon(Protocol protocol, double epsilon, int d);

// The comparator protocols act natively on one local family each.
LocalFamily native_family(Protocol protocol);

struct ClosedFormPrediction {
  std::optional<double> epsilon_in;
  std::optional<double> epsilon_out;
  std::optional<Box> box;
  double cglmp = 0.0;
};

struct DistillationResult {
  Box final_box;
  double initial_cglmp = 0.0;
  double final_cglmp = 0.0;
  std::optional<ClosedFormPrediction> prediction;
  // max-norm gap between the wired box and the predicted box
  std::optional<double> oracle_residual;
  // |final_cglmp - prediction.cglmp|
  std::optional<double> cglmp_residual;
};

// Decomposition residual (and zero-coefficient slack) below which an input
// box is treated as an exact member of a two-box family.
inline constexpr double kFamilyTol = 1e-10;

// Wires two copies of the box with the protocol's comparator wiring. A
// closed-form prediction is attached when the box is an exact
// epsilon*NL + (1-epsilon)*local mixture of the protocol's native family.
DistillationResult distill_once(const Box& box, Protocol protocol);

// Same, with an arbitrary wiring; no prediction is attached.
DistillationResult distill_with(const Box& box, const WiringSpec& spec);

struct IterationRow {
  int round = 0;
  double epsilon = 0.0;    // closed-form nonlocal weight after `round` rounds
  double cglmp = 0.0;      // CGLMP of the brute-force carried box
  double residual = 0.0;   // max-norm gap, carried box vs closed-form mixture
};

// Row 0 is the input. Each round wires two copies of the previous box
// (2^round copies of the original in total). The brute-force box is carried
// forward and compared against the closed-form mixture at every round.
std::vector<IterationRow> distill_iterate(const MixtureParams& params, Protocol protocol, int rounds);

// Closed-form only, no wiring. Cheap enough for long trajectories.
std::vector<double> epsilon_trajectory(Protocol protocol, double epsilon, int d, int rounds);

// Final CGLMP of the Ld-noisy box after protocol B:
//   (4 - 2/d^2) xi^2 + (8 - 2/d^2) xi gamma + (2/d^2) xi + 2 gamma^2.
double noisy_final_cglmp(const NoisyParams& params);
// Final CGLMP of the Lc-noisy box after protocol A:
//   (4 - 2/d^2) xi^2 + (6 + 2/d - 2/d^2) xi gamma + (2/d^2) xi + 2 gamma^2.
double noisy_lc_final_cglmp(const NoisyParams& params);
// The variant with a (4 + 2/d^2) xi^2 coefficient. Inconsistent with the
// decomposition below (gives 4 + 2/d^2 at xi = 1); kept for the verify report.
double noisy_final_cglmp_plus_variant(double xi, double gamma, int d);

// Predicted basis coefficients of the Ld-noisy box after protocol B.
AffineDecomposition noisy_final_decomposition(const NoisyParams& params);

inline double initial_noisy_cglmp(double xi, double gamma) { return 4.0 * xi + 2.0 * gamma; }

// Ld family -> protocol B with the box prediction; Lc family -> protocol A
// with the CGLMP polynomial.
DistillationResult distill_noisy(const NoisyParams& params);

}  // namespace nldist

namespace nldist {

enum class BasisBox { NL, Lc, Ld, Mixed };

std::string_view to_string(BasisBox b);
Box basis_box(BasisBox which, int d);

// P_first P_second -> c_nl NL + c_lc Lc + c_ld Ld + c_mix mixed under the
// protocol's comparator wiring.
struct TransformationRule {
  Protocol protocol;
  BasisBox first;
  BasisBox second;
  AffineDecomposition expected;  // residual unused
};

// The four protocol A cases on {NL, Lc} and the nine protocol B rules on
// {NL, Ld, mixed}.
std::vector<TransformationRule> comparator_transformation_rules(int d);

}  // namespace nldist
