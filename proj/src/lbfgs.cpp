#include "qcorr/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace qcorr {
namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double inf_norm(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

struct Pair {
  std::vector<double> s, y;
  double rho;
};

}  // namespace

LbfgsResult lbfgs(const GradientObjective& f, std::vector<double> x0, const LbfgsOptions& options) {
  const std::size_t n = x0.size();
  LbfgsResult result;
  std::vector<double> x = std::move(x0);
  std::vector<double> g(n), g_new(n), x_new(n), d(n);

  auto eval = [&](const std::vector<double>& at, std::vector<double>& grad) {
    ++result.evaluations;
    const double v = f(at, grad);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  double fx = eval(x, g);
  std::deque<Pair> memory;
  std::vector<double> alpha(options.history);
  int stalls = 0;

  for (; result.iterations < options.max_iter; ++result.iterations) {
    if (!std::isfinite(fx)) break;
    if (inf_norm(g) <= options.gtol) {
      result.converged = true;
      break;
    }

    // Two-loop recursion for d = -H g.
    d = g;
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha[k] = memory[k].rho * dot(memory[k].s, d);
      for (std::size_t i = 0; i < n; ++i) d[i] -= alpha[k] * memory[k].y[i];
    }
    double gamma = 1.0;
    if (!memory.empty()) gamma = dot(memory.back().s, memory.back().y) / dot(memory.back().y, memory.back().y);
    for (auto& v : d) v *= gamma;
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * dot(memory[k].y, d);
      for (std::size_t i = 0; i < n; ++i) d[i] += (alpha[k] - beta) * memory[k].s[i];
    }
    for (auto& v : d) v = -v;

    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
      slope = dot(g, d);
    }

    double step = memory.empty() ? std::min(1.0, 1.0 / std::max(inf_norm(g), 1e-300)) : 1.0;
    double f_new = std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * d[i];
      f_new = eval(x_new, g_new);
      if (f_new <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No descent along d; a gradient restart is the only remaining move.
      if (memory.empty()) {
        result.converged = true;
        break;
      }
      memory.clear();
      continue;
    }

    Pair p;
    p.s.resize(n);
    p.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      p.s[i] = x_new[i] - x[i];
      p.y[i] = g_new[i] - g[i];
    }
    const double sy = dot(p.s, p.y);
    if (sy > 1e-300) {
      p.rho = 1.0 / sy;
      memory.push_back(std::move(p));
      if (memory.size() > static_cast<std::size_t>(options.history)) memory.pop_front();
    }

    const double decrease = fx - f_new;
    x.swap(x_new);
    g.swap(g_new);
    fx = f_new;
    if (decrease <= options.ftol * std::max(1.0, std::abs(fx))) {
      if (++stalls >= 3) {
        result.converged = true;
        ++result.iterations;
        break;
      }
    } else {
      stalls = 0;
    }
  }

  result.x = std::move(x);
  result.value = fx;
  return result;
}

}  // namespace qcorr
