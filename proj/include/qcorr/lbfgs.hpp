#pragma once

#include <functional>
#include <span>
#include <vector>

namespace qcorr {

/// Returns f(x) and writes the gradient into `grad`.
using GradientObjective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct LbfgsOptions {
  int max_iter = 500;
  int history = 12;
  double gtol = 1e-10;  // infinity norm of the gradient
  double ftol = 1e-15;  // relative decrease per iteration
};

struct LbfgsResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Limited-memory BFGS with backtracking Armijo line search.
LbfgsResult lbfgs(const GradientObjective& f, std::vector<double> x0, const LbfgsOptions& options = {});

}  // namespace qcorr
