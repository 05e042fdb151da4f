#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcorr {

using ScalarObjective = std::function<double(std::span<const double>)>;

struct SimplexOptions {
  int max_iter = 500;
  double ftol = 1e-13;  // absolute spread of vertex values
  double xtol = 1e-10;  // largest vertex distance from the best vertex
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead with dimension-adaptive coefficients. On convergence the
/// simplex is rebuilt once around the best point to guard against collapse.
SimplexResult nelder_mead(const ScalarObjective& f, std::vector<double> x0, std::span<const double> steps,
                          const SimplexOptions& options = {});

}  // namespace qcorr
