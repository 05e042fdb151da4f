#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcorr/measures.hpp"

namespace qcorr {

enum class Measure {
  S1,
  S2,
  J,
  DiscordDelta,
  Mid,
  Red,
  Ree,
  Dissonance,
  ClassicalC,
  TotalT,
  AdditivityL,
  ConfusionPN,
  Unified,
};

std::string_view measure_name(Measure m);

/// Comma-separated names: S1, S2, J, delta, MID, D, E, Q, C, T, L, PN,
/// unified, or "all" (E, D, Q, C, T, L, delta, MID). Case-insensitive.
std::vector<Measure> parse_measures(std::string_view list);

struct MeasureRequest {
  std::vector<Measure> targets;
  /// Measured side for the asymmetric quantities (S1, S2, J, delta);
  /// empty means subsystem 0.
  IndexSet measured;
  OptimizerSettings options;
  long long confusion_trials = 1;
};

/// Everything computed for one state. Value keys: T, D, C, L, E, Q, T_sigma,
/// C_sigma, L_sigma, delta, delta_AB (measured on subsystem 0), delta_BA
/// (measured on the last subsystem), MID, S1, S2, J, PN_E, PN_D,
/// unified_original, unified_mid, unified_red.
struct CorrelationReport {
  SubsystemLayout layout;
  IndexSet measured;
  std::map<std::string, double> values;
  /// chi_rho, pi_rho, pi_chi, sigma, chi_sigma, pi_sigma, pi_chi_sigma
  std::map<std::string, DensityMatrix> closest_states;
  std::map<std::string, LocalBasisSet> optimal_bases;
  std::map<std::string, OptimizerDiagnostics> diagnostics;
  std::optional<ProductDecomposition> separable_certificate;
  std::vector<UnifiedQuantumness> unified;
  std::map<std::string, std::string> failures;
  std::vector<std::string> flags;
  std::optional<double> additivity_residual;        // |D + C - T - L|
  std::optional<double> additivity_residual_sigma;  // |Q + C_sigma - T_sigma - L_sigma|

  bool failed() const { return !failures.empty(); }
};

inline constexpr double kAdditivityTol = 1e-9;

/// Computes the requested measures. Optimizer failures are recorded in
/// `failures` (dependent measures fail with them); validation errors throw.
CorrelationReport compute_report(const DensityMatrix& rho, const MeasureRequest& request);

}  // namespace qcorr
