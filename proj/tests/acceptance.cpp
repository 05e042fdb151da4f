// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcorr/families.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/report.hpp"
#include "qcorr/state_ops.hpp"

using namespace qcorr;

namespace {

const SubsystemLayout kTwoQubits = SubsystemLayout::qubits(2);
const OptimizerSettings kSettings;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0: no runtime bound
  std::function<Outcome()> run;
};

// Largest value seen, with a running verdict.
struct Worst {
  double value = 0.0;
  bool ok = true;
  void add(double v, double limit) {
    value = std::max(value, v);
    ok = ok && v < limit;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// The two-qubit corpus shared by criteria 1 and 2: 200 seeded random states
// with 20 random product bases each.
template <class Fn>
void for_each_corpus_pair(Fn&& fn) {
  Rng rng(2024);
  for (int s = 0; s < 200; ++s) {
    const auto rho = random_state(kTwoQubits, 1 + s % 4, rng);
    for (int b = 0; b < 20; ++b) fn(rho, random_basis_set(kTwoQubits, {0, 1}, rng));
  }
}

Outcome entropy_difference_identity() {
  Worst w;
  for_each_corpus_pair([&](const DensityMatrix& rho, const LocalBasisSet& b) {
    const auto chi = dephase(rho, b);
    w.add(std::abs(relative_entropy(rho, chi) - (entropy(chi) - entropy(rho))), 1e-10);
  });
  return {w.ok, fmt("max |S(rho||chi) - (S(chi) - S(rho))| = %.3g over 4000 pairs (limit 1e-10)", w.value)};
}

Outcome additivity_loop() {
  Worst w;
  for_each_corpus_pair([&](const DensityMatrix& rho, const LocalBasisSet& b) {
    const auto chi = dephase(rho, b);
    const auto pi_rho = marginal_product(rho);
    const auto pi_chi = marginal_product(chi);
    const double d = relative_entropy(rho, chi), c = relative_entropy(chi, pi_chi);
    const double t = relative_entropy(rho, pi_rho), l = relative_entropy(pi_rho, pi_chi);
    w.add(std::abs(d + c - t - l), 1e-9);
  });
  return {w.ok, fmt("max |D + C - T - L| = %.3g over 4000 pairs (limit 1e-9)", w.value)};
}

Outcome bell_table() {
  MeasureRequest req;
  req.targets = parse_measures("all");
  const auto r = compute_report(instantiate(family::Bell{}), req);
  if (r.failed()) return {false, "optimizer failure: " + r.failures.begin()->second};
  const auto& v = r.values;
  struct Row {
    const char* key;
    double expected, tol;
  };
  const Row rows[] = {{"T", 2.0, 1e-9},        {"delta_AB", 1.0, 1e-6}, {"D", 1.0, 1e-6}, {"MID", 1.0, 1e-9},
                      {"E", 1.0, 1e-4},        {"Q", 0.0, 1e-4},        {"C", 1.0, 1e-6}};
  bool ok = true;
  std::string detail;
  for (const auto& row : rows) {
    const double got = v.at(row.key);
    ok = ok && std::abs(got - row.expected) <= row.tol;
    detail += std::string(row.key) + "=" + fmt("%.9g ", got);
  }
  return {ok, detail};
}

Outcome zero_classes() {
  Rng rng(77);
  MeasureRequest all;
  all.targets = parse_measures("all");
  Worst product, classical, cq;
  for (int t = 0; t < 100; ++t) {
    const auto r = compute_report(random_product_state(kTwoQubits, rng), all);
    if (r.failed()) return {false, "optimizer failure on a product state"};
    for (const auto& [k, v] : r.values) product.add(std::abs(v), 1e-8);
  }
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_classical_state(kTwoQubits, rng);
    const auto r = compute_report(rho, all);
    if (r.failed()) return {false, "optimizer failure on a classical state"};
    for (const char* k : {"delta_AB", "delta_BA", "D", "MID", "Q"}) classical.add(std::abs(r.values.at(k)), 1e-8);
  }
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_classical_quantum_state(kTwoQubits, rng);
    cq.add(std::abs(discord_delta(rho, {0}, kSettings).value), 1e-6);
  }
  return {product.ok && classical.ok && cq.ok,
          fmt("max over product: %.3g (limit 1e-8); classical-classical: %.3g (limit 1e-8); "
              "classical-quantum delta: %.3g (limit 1e-6)",
              product.value, classical.value, cq.value)};
}

Outcome werner_oracles() {
  Worst delta, red_gap;
  for (int i = 1; i <= 9; ++i) {
    const double p = i / 10.0;
    const auto rho = instantiate(family::Werner{p});
    const double mi = mutual_information(rho), s = entropy(rho);
    BasisObjective fd = [&](const LocalBasisSet& b) { return mi - classical_correlation_J(rho, b); };
    BasisObjective fr = [&](const LocalBasisSet& b) { return dephased_entropy(rho, b) - s; };
    delta.add(std::abs(discord_delta(rho, {0}, kSettings).value - brute_force_oracle(fd, kTwoQubits, {0}, 41).value),
              1e-4);
    red_gap.add(std::abs(red(rho, {0, 1}, kSettings).value - brute_force_oracle(fr, kTwoQubits, {0, 1}, 41).value),
                1e-4);
  }
  return {delta.ok && red_gap.ok,
          fmt("max |delta - grid| = %.3g, max |RED - grid| = %.3g (41 points per angle, limit 1e-4)", delta.value,
              red_gap.value)};
}

Outcome ordering() {
  Rng rng(99);
  Worst mid_red, d_e, s2_s1, s2_neg;
  for (int t = 0; t < 200; ++t) {
    const auto rho = random_state(kTwoQubits, 1 + t % 4, rng);
    const auto r = red(rho, {0, 1}, kSettings);
    mid_red.add(r.value - mid(rho).value, 1e-8);
    d_e.add(ree(rho, kSettings, r).value - r.value, kSettings.opt_gap_tol);
    const double s1 = conditional_entropy_s1(rho, {0});
    for (int b = 0; b < 20; ++b) {
      const double s2 = conditional_entropy_s2(rho, random_basis_set(kTwoQubits, {0}, rng));
      s2_s1.add(s1 - s2, 1e-12);
      s2_neg.add(-s2, 1e-12);
    }
  }
  return {mid_red.ok && d_e.ok && s2_s1.ok && s2_neg.ok,
          fmt("max(RED - MID) = %.3g, max(E - D) = %.3g, max(S1 - S2) = %.3g", mid_red.value, d_e.value, s2_s1.value) +
              fmt(", min S2 = %.3g", -s2_neg.value)};
}

Outcome werner_threshold() {
  bool ok = true;
  double worst_feasible = 0.0, least_entangled = INFINITY;
  for (int i = 0; i <= 10; ++i) {
    const double p = i / 10.0;
    const auto rho = instantiate(family::Werner{p});
    const auto e = ree(rho, kSettings);
    if (p <= 1.0 / 3.0) {
      const double certified = relative_entropy(rho, e.certificate.state());
      worst_feasible = std::max(worst_feasible, certified);
      ok = ok && certified <= 1e-5 && e.certificate.certificate_error() < 1e-10;
    }
    if (p >= 0.5) {
      least_entangled = std::min(least_entangled, e.value);
      ok = ok && e.value > 1e-3;
    }
  }
  return {ok, fmt("max certified S(rho||sigma) for p <= 1/3: %.3g (limit 1e-5); min E for p >= 0.5: %.6g "
                  "(limit > 1e-3)",
                  worst_feasible, least_entangled)};
}

Outcome conditional_amplitude_check() {
  Rng rng(5);
  double min_eig = INFINITY;
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_classical_state(kTwoQubits, rng);
    min_eig = std::min(min_eig, hermitian_eigenvalues(conditional_amplitude(rho, {0}).op).minCoeff());
  }
  Worst s1;
  for (int t = 0; t < 100; ++t) {
    const auto rho = random_state(kTwoQubits, 4, rng);
    const Matrix log_amp = hermitian_function(conditional_amplitude(rho, {0}).op, [](double x) { return std::log2(x); });
    s1.add(std::abs(-(rho.matrix() * log_amp).trace().real() - conditional_entropy_s1(rho, {0})), 1e-8);
  }
  return {min_eig > -1e-10 && s1.ok,
          fmt("min eigenvalue on classical states: %.3g (limit > -1e-10); max |-tr(rho log amp) - S1| = %.3g "
              "(limit 1e-8)",
              min_eig, s1.value)};
}

Outcome local_unitary_invariance() {
  Rng rng(11);
  Worst w;
  for (int t = 0; t < 50; ++t) {
    const auto rho = random_state(kTwoQubits, 1 + t % 4, rng);
    const auto moved = apply_unitary(rho, random_local_unitary(kTwoQubits, rng));
    const double tol = kSettings.opt_gap_tol;
    w.add(std::abs(discord_delta(rho, {0}, kSettings).value - discord_delta(moved, {0}, kSettings).value), tol);
    const auto r0 = red(rho, {0, 1}, kSettings), r1 = red(moved, {0, 1}, kSettings);
    w.add(std::abs(r0.value - r1.value), tol);
    w.add(std::abs(mid(rho).value - mid(moved).value), tol);
    w.add(std::abs(ree(rho, kSettings, r0).value - ree(moved, kSettings, r1).value), tol);
  }
  return {w.ok, fmt("max change of delta, RED, MID, E = %.3g over 50 trials (limit %.0e)", w.value,
                    kSettings.opt_gap_tol)};
}

Outcome confusion() {
  bool monotone = true;
  for (double s : {0.01, 0.5, 1.0, 3.0}) {
    for (long long n = 0; n < 100; ++n) monotone = monotone && confusion_probability(s, n + 1) < confusion_probability(s, n);
  }
  const double p0 = confusion_probability(0.7, 0);
  const double p10 = confusion_probability(1.0, 10);
  const bool ok = monotone && p0 == 1.0 && std::abs(p10 - std::pow(2.0, -10)) < 1e-12;
  return {ok, fmt("P_0 = %.17g, P_10(S=1) - 2^-10 = %.3g, monotone = %g", p0, p10 - std::pow(2.0, -10),
                  monotone ? 1.0 : 0.0)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "entropy-difference identity", 30, entropy_difference_identity},
      {2, "additivity loop", 30, additivity_loop},
      {3, "Bell-state table", 120, bell_table},
      {4, "zero classes", 120, zero_classes},
      {5, "Werner oracle equivalence", 300, werner_oracles},
      {6, "ordering properties", 0, ordering},
      {7, "Werner separability threshold", 0, werner_threshold},
      {8, "conditional amplitude", 0, conditional_amplitude_check},
      {9, "local-unitary invariance", 0, local_unitary_invariance},
      {10, "confusion probability", 0, confusion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds <= 0 || secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::string timing = fmt("%.1f s", secs);
    if (c.budget_seconds > 0) timing += fmt(" of %.0f s budget", c.budget_seconds);
    std::printf("criterion %2d %-30s %s  %s [%s]\n", c.id, c.name, pass ? "PASS" : "FAIL", o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
  }
  std::printf("criterion 11 %-30s SKIP  operational state-merging checks are out of scope\n",
              "state merging / Koashi-Winter");
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
