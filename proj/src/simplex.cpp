#include "qcorr/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace qcorr {
namespace {

struct Run {
  std::vector<std::vector<double>> vertices;
  std::vector<double> values;
};

double spread_x(const Run& r, std::size_t best) {
  double m = 0.0;
  for (const auto& v : r.vertices) {
    for (std::size_t k = 0; k < v.size(); ++k) m = std::max(m, std::abs(v[k] - r.vertices[best][k]));
  }
  return m;
}

}  // namespace

SimplexResult nelder_mead(const ScalarObjective& f, std::vector<double> x0, std::span<const double> steps,
                          const SimplexOptions& options) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(std::max<std::size_t>(n, 1));
  const double alpha = 1.0;
  const double beta = 1.0 + 2.0 / dn;
  const double gamma = 0.75 - 0.5 / dn;
  const double delta = 1.0 - 1.0 / dn;

  SimplexResult result;
  auto eval = [&](const std::vector<double>& x) {
    ++result.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<double> best_x = std::move(x0);
  double best_v = eval(best_x);
  if (n == 0) {
    result.x = best_x;
    result.value = best_v;
    result.converged = true;
    return result;
  }

  std::vector<double> scale(steps.begin(), steps.end());
  bool restarted = false;
  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);

  while (true) {
    Run r;
    r.vertices.assign(n + 1, best_x);
    r.values.assign(n + 1, best_v);
    for (std::size_t k = 0; k < n; ++k) {
      r.vertices[k + 1][k] += scale[k];
      r.values[k + 1] = eval(r.vertices[k + 1]);
    }

    bool converged = false;
    while (result.iterations < options.max_iter) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return r.values[a] < r.values[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[n - 1];

      if (r.values[hi] - r.values[lo] <= options.ftol || spread_x(r, lo) <= options.xtol) {
        converged = true;
        break;
      }
      ++result.iterations;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t v = 0; v <= n; ++v) {
        if (v == hi) continue;
        for (std::size_t k = 0; k < n; ++k) centroid[k] += r.vertices[v][k] / dn;
      }
      for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + alpha * (centroid[k] - r.vertices[hi][k]);
      const double fr = eval(trial);

      if (fr < r.values[lo]) {
        for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + beta * (trial[k] - centroid[k]);
        const double fe = eval(trial2);
        if (fe < fr) {
          r.vertices[hi] = trial2;
          r.values[hi] = fe;
        } else {
          r.vertices[hi] = trial;
          r.values[hi] = fr;
        }
        continue;
      }
      if (fr < r.values[second]) {
        r.vertices[hi] = trial;
        r.values[hi] = fr;
        continue;
      }
      const bool outside = fr < r.values[hi];
      for (std::size_t k = 0; k < n; ++k) {
        const double target = outside ? trial[k] : r.vertices[hi][k];
        trial2[k] = centroid[k] + gamma * (target - centroid[k]);
      }
      const double fc = eval(trial2);
      if (fc < (outside ? fr : r.values[hi])) {
        r.vertices[hi] = trial2;
        r.values[hi] = fc;
        continue;
      }
      for (std::size_t v = 0; v <= n; ++v) {
        if (v == lo) continue;
        for (std::size_t k = 0; k < n; ++k) {
          r.vertices[v][k] = r.vertices[lo][k] + delta * (r.vertices[v][k] - r.vertices[lo][k]);
        }
        r.values[v] = eval(r.vertices[v]);
      }
    }

    const auto best = static_cast<std::size_t>(
        std::min_element(r.values.begin(), r.values.end()) - r.values.begin());
    const double improvement = best_v - r.values[best];
    best_x = r.vertices[best];
    best_v = r.values[best];

    if (!converged) {
      // Out of iterations; a restart only happens after a converged pass.
      result.converged = restarted;
      break;
    }
    if (restarted && improvement <= options.ftol) {
      result.converged = true;
      break;
    }
    restarted = true;
    for (auto& s : scale) s *= 0.05;
  }

  result.x = std::move(best_x);
  result.value = best_v;
  return result;
}

}  // namespace qcorr
