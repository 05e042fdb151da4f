#include "qcorr/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <mutex>
#include <thread>

#include "qcorr/error.hpp"
#include "qcorr/simplex.hpp"

namespace qcorr {
namespace {

struct Cell {
  double value;
  long long index;
  bool operator<(const Cell& o) const { return value < o.value || (value == o.value && index < o.index); }
};

long long checked_power(long long base, std::size_t exp, long long cap) {
  long long out = 1;
  for (std::size_t k = 0; k < exp; ++k) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

// Angle of grid coordinate `j` for parameter position `k` (even = theta).
double grid_angle(std::size_t k, long long j, int points) {
  if (k % 2 == 0) return std::numbers::pi * static_cast<double>(j) / (points - 1);
  return 2.0 * std::numbers::pi * static_cast<double>(j) / points;
}

std::vector<double> grid_point(long long index, std::size_t params, int points) {
  std::vector<double> x(params);
  for (std::size_t k = params; k-- > 0;) {
    x[k] = grid_angle(k, index % points, points);
    index /= points;
  }
  return x;
}

// The `keep` best cells of the grid, deterministic for any worker count.
std::vector<Cell> scan_grid(const BasisObjective& objective, const SubsystemLayout& layout, const IndexSet& measured,
                            int points, long long total, std::size_t keep, int workers) {
  const std::size_t params = LocalBasisSet::parameter_count(layout, measured);
  std::vector<std::vector<Cell>> partial(workers);
  parallel_chunks(static_cast<std::size_t>(total), workers, [&](int w, std::size_t begin, std::size_t end) {
    auto& best = partial[w];
    for (std::size_t i = begin; i < end; ++i) {
      const auto x = grid_point(static_cast<long long>(i), params, points);
      double v = objective(LocalBasisSet::from_parameters(layout, measured, x));
      if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
      const Cell c{v, static_cast<long long>(i)};
      if (best.size() < keep) {
        best.push_back(c);
        std::push_heap(best.begin(), best.end());
      } else if (c < best.front()) {
        std::pop_heap(best.begin(), best.end());
        best.back() = c;
        std::push_heap(best.begin(), best.end());
      }
    }
  });
  std::vector<Cell> merged;
  for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  std::sort(merged.begin(), merged.end());
  if (merged.size() > keep) merged.resize(keep);
  return merged;
}

}  // namespace

void OptimizerSettings::check() const {
  if (grid_points_per_angle < 2) throw Error(ErrorCode::ParameterOutOfRange, "grid_points_per_angle must be >= 2");
  if (restarts < 1) throw Error(ErrorCode::ParameterOutOfRange, "restarts must be >= 1");
  if (refine_max_iter < 0 || separable_max_iter < 0) {
    throw Error(ErrorCode::ParameterOutOfRange, "iteration limits must be >= 0");
  }
  if (!(opt_tol >= 0.0) || !(opt_gap_tol >= 0.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "tolerances must be >= 0");
  }
  if (max_grid_evaluations < 1 || separable_terms < 0) {
    throw Error(ErrorCode::ParameterOutOfRange, "grid budget and ansatz size must be positive");
  }
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCORR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_chunks(std::size_t n, int workers, const std::function<void(int, std::size_t, std::size_t)>& fn) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {
constexpr double kTieTol = 1e-12;
}  // namespace

BasisOptimum minimize_over_bases(const BasisObjective& objective, const SubsystemLayout& layout,
                                 const IndexSet& measured_in, const OptimizerSettings& settings,
                                 std::span<const LocalBasisSet> seeds) {
  settings.check();
  if (measured_in.empty()) throw Error(ErrorCode::EmptyMeasuredSet, "no subsystem to optimize over");
  const IndexSet measured = normalize_subset(layout, measured_in);
  const std::size_t params = LocalBasisSet::parameter_count(layout, measured);
  const int workers = worker_count(settings.threads);

  int points = settings.grid_points_per_angle;
  while (points > 2 && checked_power(points, params, settings.max_grid_evaluations) > settings.max_grid_evaluations) {
    --points;
  }
  const long long total = checked_power(points, params, std::numeric_limits<long long>::max() / 2);

  OptimizerDiagnostics diag;
  diag.grid_points_per_angle = points;
  diag.evaluations = total;

  std::vector<std::vector<double>> starts;
  for (const auto& s : seeds) {
    s.check_against(layout);
    if (s.measured() != measured) throw Error(ErrorCode::BasisDimensionMismatch, "seed covers other subsystems");
    starts.push_back(s.parameters());
  }
  for (const auto& c : scan_grid(objective, layout, measured, points, total,
                                 static_cast<std::size_t>(settings.restarts), workers)) {
    starts.push_back(grid_point(c.index, params, points));
  }

  std::vector<double> steps(params);
  for (std::size_t k = 0; k < params; ++k) {
    steps[k] = 0.5 * (k % 2 == 0 ? std::numbers::pi / (points - 1) : 2.0 * std::numbers::pi / points);
  }
  const ScalarObjective flat = [&](std::span<const double> x) {
    return objective(LocalBasisSet::from_parameters(layout, measured, x));
  };

  std::vector<SimplexResult> runs(starts.size());
  parallel_chunks(starts.size(), workers, [&](int, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      runs[i] = nelder_mead(flat, starts[i], steps, SimplexOptions{settings.refine_max_iter, 1e-13, 1e-10});
    }
  });

  // Unrefined seeds compete too, so a seed that is already optimal is
  // returned as given rather than drifted along a flat valley.
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    SimplexResult as_given{starts[i], flat(starts[i]), 0, runs[i].evaluations + 1, runs[i].converged};
    if (as_given.value <= runs[i].value + kTieTol) runs[i] = std::move(as_given);
  }
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& r : runs) {
    diag.evaluations += r.evaluations;
    lowest = std::min(lowest, r.value);
  }
  std::size_t best = 0;
  while (runs[best].value > lowest + kTieTol) ++best;
  const auto best_basis = LocalBasisSet::from_parameters(layout, measured, wrap_angles(runs[best].x));

  double second = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (i == best || runs[i].value >= second) continue;
    const auto b = LocalBasisSet::from_parameters(layout, measured, runs[i].x);
    if (!b.same_projectors(best_basis, 1e-6)) second = runs[i].value;
  }

  diag.restarts = static_cast<int>(runs.size());
  diag.best = runs[best].value;
  diag.second_best = std::isfinite(second) ? second : diag.best;
  diag.gap = diag.second_best - diag.best;
  diag.converged = runs[best].converged || diag.gap <= settings.opt_gap_tol;
  if (!diag.converged) {
    throw Error(ErrorCode::OptimizerFailure, "basis refinement did not converge and basins disagree by " +
                                                 std::to_string(diag.gap) + " bits");
  }
  return BasisOptimum{runs[best].value, best_basis, diag};
}

GridOptimum brute_force_oracle(const BasisObjective& objective, const SubsystemLayout& layout,
                               const IndexSet& measured_in, int resolution, int threads) {
  if (resolution < 2) throw Error(ErrorCode::ParameterOutOfRange, "resolution must be >= 2");
  if (measured_in.empty()) throw Error(ErrorCode::EmptyMeasuredSet, "no subsystem to scan");
  const IndexSet measured = normalize_subset(layout, measured_in);
  const std::size_t params = LocalBasisSet::parameter_count(layout, measured);
  const long long total = checked_power(resolution, params, kMaxOracleEvaluations);
  if (total > kMaxOracleEvaluations) {
    throw Error(ErrorCode::GridTooLarge, std::to_string(resolution) + "^" + std::to_string(params) +
                                             " points exceed the oracle budget");
  }
  const auto cells = scan_grid(objective, layout, measured, resolution, total, 1, worker_count(threads));
  auto x = grid_point(cells.front().index, params, resolution);
  auto basis = LocalBasisSet::from_parameters(layout, measured, x);
  return GridOptimum{cells.front().value, std::move(basis), std::move(x), cells.front().index};
}

}  // namespace qcorr
