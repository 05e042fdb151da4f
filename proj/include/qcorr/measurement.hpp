#pragma once

#include <optional>
#include <vector>

#include "qcorr/basis.hpp"
#include "qcorr/density_matrix.hpp"

namespace qcorr {

struct MeasurementOutcome {
  std::vector<int> label;  // local outcome index per measured subsystem
  double probability;
  DensityMatrix state;     // conditional state of the unmeasured subsystems
};

struct MeasurementEnsemble {
  IndexSet measured;
  SubsystemLayout unmeasured_layout;
  std::vector<MeasurementOutcome> outcomes;
};

/// Projective measurement of the subsystems covered by `basis`. Outcomes with
/// probability <= tol::trace are dropped and the remaining conditional states
/// renormalized. The measured set must be a nonempty proper subset.
MeasurementEnsemble measure(const DensityMatrix& rho, const LocalBasisSet& basis);

/// sum_i p_i |i><i| (x) rho_i, flags written in `basis` and placed back on the
/// measured subsystems; equals dephase(rho, basis) up to pruned outcomes.
DensityMatrix reassemble(const MeasurementEnsemble& ensemble, const SubsystemLayout& layout,
                         const LocalBasisSet& basis);

/// S(rho) - S(rho_A) with A = conditioned_on. Throws InvalidSubset unless A is
/// a nonempty proper subset.
double conditional_entropy_s1(const DensityMatrix& rho, const IndexSet& conditioned_on);

/// sum_i p_i S(rho_i) after measuring the subsystems covered by `basis`.
double conditional_entropy_s2(const DensityMatrix& rho, const LocalBasisSet& basis);

struct ConditionalAmplitude {
  Matrix op;
  /// Set when rho was rank deficient and replaced by (1-eps) rho + eps I/d.
  std::optional<double> regularization;
};

inline constexpr double kAmplitudeRegularization = 1e-9;

/// exp(log rho - log(rho_A (x) 1)), matrix functions taken spectrally.
ConditionalAmplitude conditional_amplitude(const DensityMatrix& rho, const IndexSet& conditioned_on);

}  // namespace qcorr
