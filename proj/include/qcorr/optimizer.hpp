#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qcorr/basis.hpp"
#include "qcorr/layout.hpp"

namespace qcorr {

struct OptimizerSettings {
  int grid_points_per_angle = 21;
  int restarts = 16;
  int refine_max_iter = 500;
  double opt_tol = 1e-6;      // bits
  double opt_gap_tol = 1e-4;  // bits
  std::uint64_t seed = 0;

  /// Coarse-grid budget; the points per angle are lowered until the grid
  /// fits. Keeps three-party symmetric scans tractable.
  long long max_grid_evaluations = 40000;
  /// Product terms of the separable ansatz; 0 means total_dim^2.
  int separable_terms = 0;
  int separable_max_iter = 3000;
  /// Worker threads; 0 reads QCORR_THREADS, falling back to the hardware.
  int threads = 0;

  /// Throws ParameterOutOfRange on grid_points_per_angle < 2 or restarts < 1.
  void check() const;
};

struct OptimizerDiagnostics {
  int restarts = 0;
  long long evaluations = 0;
  int grid_points_per_angle = 0;
  double best = 0.0;
  double second_best = 0.0;  // best value of a distinct basin; equals best if none
  double gap = 0.0;
  bool converged = false;
};

using BasisObjective = std::function<double(const LocalBasisSet&)>;

struct BasisOptimum {
  double value;
  LocalBasisSet basis;
  OptimizerDiagnostics diagnostics;
};

/// Coarse grid scan over the Givens angles of every measured subsystem, then
/// Nelder-Mead from each seed and from the best `restarts` grid cells.
/// Throws OptimizerFailure when the two best basins differ by more than
/// opt_gap_tol and the best refinement did not converge.
BasisOptimum minimize_over_bases(const BasisObjective& objective, const SubsystemLayout& layout,
                                 const IndexSet& measured, const OptimizerSettings& settings,
                                 std::span<const LocalBasisSet> seeds = {});

struct GridOptimum {
  double value;
  LocalBasisSet basis;
  std::vector<double> parameters;
  long long index;
};

inline constexpr long long kMaxOracleEvaluations = 100'000'000;

/// Exhaustive scan of the uniform angle grid (theta inclusive on [0, pi],
/// phi on [0, 2 pi)). Ties resolve to the lowest grid index. Throws
/// GridTooLarge beyond kMaxOracleEvaluations points.
GridOptimum brute_force_oracle(const BasisObjective& objective, const SubsystemLayout& layout,
                               const IndexSet& measured, int resolution, int threads = 0);

/// Number of workers for a requested count (see OptimizerSettings::threads).
int worker_count(int requested);

/// Splits [0, n) into contiguous chunks, one per worker; chunk w is
/// processed by fn(w, begin, end).
void parallel_chunks(std::size_t n, int workers,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

}  // namespace qcorr
