#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qcorr/error.hpp"
#include "qcorr/families.hpp"
#include "qcorr/io.hpp"
#include "qcorr/report.hpp"
#include "qcorr/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitOptimizer = 3;

struct Settings {
  std::optional<int> grid;
  std::optional<int> restarts;
  std::optional<int> refine_max_iter;
  std::optional<double> opt_tol;
  std::optional<double> opt_gap_tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;

  void attach(CLI::App* app) {
    app->add_option("--grid", grid, "Coarse grid points per angle");
    app->add_option("--restarts", restarts, "Local refinements from the best grid cells");
    app->add_option("--max-iter", refine_max_iter, "Iteration cap per local refinement");
    app->add_option("--opt-tol", opt_tol, "Optimizer tolerance in bits");
    app->add_option("--gap-tol", opt_gap_tol, "Basin gap tolerated without convergence");
    app->add_option("--seed", seed, "Random seed for optimizer starts");
    app->add_option("--threads", threads, "Worker threads (default: QCORR_THREADS or hardware)");
  }

  qcorr::OptimizerSettings resolve() const {
    qcorr::OptimizerSettings s;
    if (grid) s.grid_points_per_angle = *grid;
    if (restarts) s.restarts = *restarts;
    if (refine_max_iter) s.refine_max_iter = *refine_max_iter;
    if (opt_tol) s.opt_tol = *opt_tol;
    if (opt_gap_tol) s.opt_gap_tol = *opt_gap_tol;
    if (seed) s.seed = *seed;
    if (threads) s.threads = *threads;
    s.check();
    return s;
  }
};

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw qcorr::Error(qcorr::ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

qcorr::MeasureRequest make_request(const std::string& measures, const std::string& measured, long long trials,
                                   const Settings& settings) {
  qcorr::MeasureRequest req;
  req.targets = qcorr::parse_measures(measures);
  if (!measured.empty()) req.measured = qcorr::parse_index_set(measured);
  req.options = settings.resolve();
  req.confusion_trials = trials;
  return req;
}

std::string substitute(const std::string& tmpl, const std::string& value) {
  const auto pos = tmpl.find("{}");
  if (pos == std::string::npos || tmpl.find("{}", pos + 2) != std::string::npos) {
    throw qcorr::Error(qcorr::ErrorCode::ParseError, "template must contain exactly one {} placeholder");
  }
  return tmpl.substr(0, pos) + value + tmpl.substr(pos + 2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative-entropy correlation measures for finite-dimensional quantum states"};
  app.require_subcommand(1);

  Settings settings;
  std::string file, family_spec, measures = "all", measured, format = "json", out;
  long long trials = 1;

  auto* compute = app.add_subcommand("compute", "Compute measures for one state");
  auto* src = compute->add_option_group("source");
  src->add_option("--file", file, "State JSON file");
  src->add_option("--family", family_spec, "Family spec, e.g. bell:phi+, werner:0.5, ghz:3");
  src->require_option(1);
  compute->add_option("--measures", measures, "Comma-separated measure names or 'all'");
  compute->add_option("--measured", measured, "Measured subsystems for S1, S2, J and delta (A, B, ... or 0, 1, ...)");
  compute->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  compute->add_option("--out", out, "Output path (default stdout)");
  compute->add_option("--trials", trials, "Copies n for the confusion probability");
  settings.attach(compute);

  std::string tmpl;
  double start = 0.0, stop = 1.0;
  int steps = 11;
  auto* sweep = app.add_subcommand("sweep", "Scan a family over one parameter and write CSV");
  sweep->add_option("--template", tmpl, "Family spec with one {} placeholder, e.g. werner:{}")->required();
  sweep->add_option("--start", start)->required();
  sweep->add_option("--stop", stop)->required();
  sweep->add_option("--steps", steps)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--measures", measures, "Comma-separated measure names or 'all'");
  sweep->add_option("--measured", measured, "Measured subsystems for delta");
  sweep->add_option("--out", out, "Output CSV path (default stdout)");
  settings.attach(sweep);

  std::string suite = "identities", failure_dir = "verify_failures";
  std::uint64_t verify_seed = 1;
  int verify_trials = 100;
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", suite, "identities, additivity or oracles")
      ->check(CLI::IsMember({"identities", "additivity", "oracles"}));
  verify->add_option("--seed", verify_seed);
  verify->add_option("--trials", verify_trials)->check(CLI::NonNegativeNumber);
  verify->add_option("--failure-dir", failure_dir, "Where failing states are written");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (compute->parsed()) {
      const auto req = make_request(measures, measured, trials, settings);
      const qcorr::DensityMatrix rho = !file.empty() ? qcorr::load_state_file(file)
                                                     : qcorr::instantiate(qcorr::parse_family(family_spec));
      const auto report = qcorr::compute_report(rho, req);
      if (format == "json") {
        write_output(qcorr::report_to_json(report).dump(2) + "\n", out);
      } else {
        const std::string name = !file.empty() ? std::string("file") : family_spec.substr(0, family_spec.find(':'));
        const std::string params = !file.empty() ? file : family_spec;
        write_output(qcorr::csv_header() + "\n" + qcorr::csv_row(name, params, &report) + "\n", out);
      }
      for (const auto& [key, why] : report.failures) std::cerr << "failed: " << key << ": " << why << "\n";
      return report.failed() ? kExitOptimizer : kExitOk;
    }

    if (sweep->parsed()) {
      const auto req = make_request(measures, measured, trials, settings);
      const std::string name = tmpl.substr(0, tmpl.find(':'));
      // Validate the template before running anything.
      substitute(tmpl, qcorr::format_number(start));
      std::ostringstream csv;
      csv << qcorr::csv_header() << "\n";
      bool any_failed = false;
      for (int i = 0; i < steps; ++i) {
        const double x = steps == 1 ? start : start + (stop - start) * i / (steps - 1);
        const std::string value = qcorr::format_number(x);
        const std::string spec = substitute(tmpl, value);
        try {
          const auto report = qcorr::compute_report(qcorr::instantiate(qcorr::parse_family(spec)), req);
          any_failed = any_failed || report.failed();
          csv << qcorr::csv_row(name, value, &report) << "\n";
        } catch (const qcorr::Error& e) {
          if (i == 0 && e.code() == qcorr::ErrorCode::ParseError) throw;
          any_failed = true;
          csv << qcorr::csv_row(name, value, nullptr, e.what()) << "\n";
        }
      }
      write_output(csv.str(), out);
      return any_failed ? kExitOptimizer : kExitOk;
    }

    if (verify->parsed()) {
      const auto summary = qcorr::run_verify(qcorr::parse_suite(suite), verify_seed, verify_trials, failure_dir);
      for (const auto& f : summary.failures) {
        std::cout << "FAIL " << f.check << ": " << f.detail << " (state: " << f.state_file.string() << ")\n";
      }
      std::cout << suite << ": " << (summary.checks - static_cast<int>(summary.failures.size())) << "/"
                << summary.checks << " checks passed\n";
      return summary.ok() ? kExitOk : 1;
    }
  } catch (const qcorr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == qcorr::ErrorCode::OptimizerFailure ? kExitOptimizer : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
