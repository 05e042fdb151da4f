#pragma once

#include <map>
#include <optional>
#include <string>

#include "qcorr/basis.hpp"
#include "qcorr/density_matrix.hpp"
#include "qcorr/optimizer.hpp"
#include "qcorr/separable.hpp"

namespace qcorr {

/// J = S(rho_rest) - S2 for the measurement described by `basis`.
double classical_correlation_J(const DensityMatrix& rho, const LocalBasisSet& basis);

struct DiscordResult {
  double value;
  LocalBasisSet basis;
  DensityMatrix chi;
  OptimizerDiagnostics diagnostics;
};

/// min over bases on `measured` of I(rho) - I(dephase(rho)).
DiscordResult discord_delta(const DensityMatrix& rho, const IndexSet& measured, const OptimizerSettings& settings);

struct MarginalEigenbasis {
  LocalBasisSet basis;
  bool degenerate;  // some marginal had an eigenvalue gap below kDegeneracyGap
};

inline constexpr double kDegeneracyGap = 1e-9;

/// Eigenbases of the single-subsystem marginals on `subsystems`. Degenerate
/// eigenspaces are spanned by the projections of the computational basis
/// vectors, taken in order.
MarginalEigenbasis marginal_eigenbasis(const DensityMatrix& rho, const IndexSet& subsystems);

struct MidResult {
  double value;
  LocalBasisSet basis;
  DensityMatrix chi;
  bool degenerate;
};

/// S(chi) - S(rho) with chi the dephasing of rho in all marginal eigenbases
/// (equivalently I(rho) - I(chi), the marginals being unchanged).
MidResult mid(const DensityMatrix& rho);

struct RedResult {
  double value;
  DensityMatrix chi;
  LocalBasisSet basis;
  OptimizerDiagnostics diagnostics;
};

/// min over bases on `measured` of S(dephase(rho)) - S(rho). The marginal
/// eigenbasis seeds the search, so the result never exceeds MID.
RedResult red(const DensityMatrix& rho, const IndexSet& measured, const OptimizerSettings& settings);

struct ReeResult {
  double value;
  DensityMatrix sigma;
  ProductDecomposition certificate;
  bool feasible;
  OptimizerDiagnostics diagnostics;
};

/// Relative entropy of entanglement over the separable ansatz, seeded with
/// the closest classical state from `red` (so the result never exceeds it).
ReeResult ree(const DensityMatrix& rho, const OptimizerSettings& settings,
              const std::optional<RedResult>& red_hint = std::nullopt);

struct DissonanceResult {
  double value;
  DensityMatrix sigma;
  DensityMatrix chi_sigma;
  LocalBasisSet basis;
  OptimizerDiagnostics ree_diagnostics;
  OptimizerDiagnostics red_diagnostics;
};

/// Symmetric relative entropy of discord of the closest separable state.
/// When the REE is within opt_tol of zero, rho itself serves as sigma.
DissonanceResult dissonance(const DensityMatrix& rho, const OptimizerSettings& settings,
                            const std::optional<ReeResult>& ree_result = std::nullopt);

struct ClassicalCorrelation {
  double value;
  DensityMatrix closest_product;
};

/// S(chi || pi_chi) = I(chi) for a classical chi. Throws NotClassical when
/// chi is not diagonal in any product basis.
ClassicalCorrelation classical_C(const DensityMatrix& chi, const OptimizerSettings& settings);

/// S(pi_chi) - S(pi_rho) with chi = dephase(rho, basis).
double additivity_L(const DensityMatrix& rho, const LocalBasisSet& basis);

/// exp(-n s ln 2) for s in bits; 0 for infinite s and n > 0.
double confusion_probability(double s_rel_bits, long long n);

enum class QuantumnessVariant { OriginalDiscord, Mid, Red };

struct UnifiedQuantumness {
  QuantumnessVariant variant;
  double value;
  LocalBasisSet basis;
  DensityMatrix rho;
  DensityMatrix pi_rho;
  DensityMatrix chi;
  DensityMatrix pi_chi;
  /// Relative entropies along the edges and diagonals of the four elements:
  /// "T" S(rho||pi_rho), "D" S(rho||chi), "C" S(chi||pi_chi),
  /// "L" S(pi_rho||pi_chi), "rho_pi_chi" and "chi_pi_rho".
  std::map<std::string, double> distances;
};

/// The ORIGINAL_DISCORD variant dephases `measured` in the basis minimizing
/// I(rho) - I(chi); MID uses the marginal eigenbases of every subsystem; RED
/// minimizes S(chi) - S(rho) over bases on `measured`.
UnifiedQuantumness unified_quantumness(const DensityMatrix& rho, QuantumnessVariant variant,
                                       const IndexSet& measured, const OptimizerSettings& settings);

/// Values below -opt_tol throw OptimizerFailure; the rest are clamped at 0.
double clamp_correlation(double value, double opt_tol, const char* what);

}  // namespace qcorr
