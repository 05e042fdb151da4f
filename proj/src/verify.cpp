#include "qcorr/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/families.hpp"
#include "qcorr/io.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"
#include "qcorr/state_ops.hpp"

namespace qcorr {
namespace {

class Checker {
 public:
  Checker(VerifySummary& summary, std::filesystem::path dir, std::string suite)
      : summary_(summary), dir_(std::move(dir)), suite_(std::move(suite)) {}

  void check(bool ok, const std::string& name, const std::string& detail, const DensityMatrix& rho) {
    ++summary_.checks;
    if (ok) return;
    std::filesystem::create_directories(dir_);
    auto path = dir_ / (suite_ + "_failure_" + std::to_string(summary_.failures.size()) + ".json");
    save_state_file(rho, path);
    summary_.failures.push_back({name, detail, path});
  }

 private:
  VerifySummary& summary_;
  std::filesystem::path dir_;
  std::string suite_;
};

std::string residual(double r) {
  std::ostringstream os;
  os << "residual " << r;
  return os.str();
}

void identities(Checker& c, std::uint64_t seed, int trials) {
  Rng rng(seed);
  const auto layout = SubsystemLayout::qubits(2);
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = random_state(layout, 1 + t % 4, rng);
    const double s_rho = entropy(rho);
    for (const IndexSet& set : {IndexSet{0}, IndexSet{1}, IndexSet{0, 1}}) {
      const LocalBasisSet b = random_basis_set(layout, set, rng);
      const DensityMatrix chi = dephase(rho, b);
      const double d = relative_entropy(rho, chi) - (entropy(chi) - s_rho);
      c.check(std::abs(d) < kIdentityTol, "S(rho||chi) = S(chi) - S(rho)", residual(d), rho);
      c.check(entropy(chi) >= s_rho - kIdentityTol, "dephasing does not lower entropy", residual(entropy(chi) - s_rho),
              rho);
      if (set.size() == 1) {
        const double s1 = conditional_entropy_s1(rho, set);
        const double s2 = conditional_entropy_s2(rho, b);
        c.check(s2 >= s1 - kIdentityTol, "S2 >= S1", residual(s2 - s1), rho);
      }
    }
    const double t_id = relative_entropy(rho, marginal_product(rho)) - mutual_information(rho);
    c.check(std::abs(t_id) < kIdentityTol, "S(rho||pi_rho) = I(rho)", residual(t_id), rho);
  }
}

void additivity(Checker& c, std::uint64_t seed, int trials) {
  Rng rng(seed);
  const auto layout = SubsystemLayout::qubits(2);
  for (int t = 0; t < trials; ++t) {
    const DensityMatrix rho = random_state(layout, 1 + t % 4, rng);
    const LocalBasisSet b = random_basis_set(layout, layout.all(), rng);
    const DensityMatrix chi = dephase(rho, b);
    const double d = relative_entropy(rho, chi);
    const double cc = relative_entropy(chi, marginal_product(chi));
    const double tt = relative_entropy(rho, marginal_product(rho));
    const double l = relative_entropy(marginal_product(rho), marginal_product(chi));
    const double r = d + cc - tt - l;
    c.check(std::abs(r) < kIdentityTol, "D + C = T + L", residual(r), rho);
  }
}

void oracles(Checker& c, const OptimizerSettings& settings) {
  struct Case {
    std::string family;
    IndexSet measured;  // for the discord entries; empty means RED
    int resolution;
  };
  const std::vector<Case> table = {
      {"bell:phi+", {}, 21},  {"bell:psi-", {}, 21},    {"werner:0.25", {}, 21}, {"werner:0.5", {}, 21},
      {"werner:0.75", {}, 21}, {"ghz:3", {}, 5},        {"bell:phi+", {0}, 41},  {"werner:0.5", {0}, 41},
      {"werner:0.75", {1}, 41}, {"cc:2x2:0.4,0.1,0.1,0.4", {}, 21}};
  for (const auto& k : table) {
    const DensityMatrix rho = instantiate(parse_family(k.family));
    const auto& layout = rho.layout();
    double found = 0.0;
    double oracle = 0.0;
    if (k.measured.empty()) {
      const double s = entropy(rho);
      BasisObjective f = [&](const LocalBasisSet& b) { return dephased_entropy(rho, b) - s; };
      oracle = brute_force_oracle(f, layout, layout.all(), k.resolution, settings.threads).value;
      found = red(rho, layout.all(), settings).value;
    } else {
      const double i = mutual_information(rho);
      BasisObjective f = [&](const LocalBasisSet& b) { return i - classical_correlation_J(rho, b); };
      oracle = brute_force_oracle(f, layout, k.measured, k.resolution, settings.threads).value;
      found = discord_delta(rho, k.measured, settings).value;
    }
    const std::string name = (k.measured.empty() ? "RED " : "delta ") + k.family;
    std::ostringstream detail;
    detail << "optimizer " << found << ", grid oracle " << oracle;
    c.check(found <= oracle + kIdentityTol && oracle - found < 1e-3, name, detail.str(), rho);
  }
}

}  // namespace

VerifySuite parse_suite(std::string_view name) {
  if (name == "identities") return VerifySuite::Identities;
  if (name == "additivity") return VerifySuite::Additivity;
  if (name == "oracles") return VerifySuite::Oracles;
  throw Error(ErrorCode::ParseError, "unknown suite '" + std::string(name) + "'");
}

VerifySummary run_verify(VerifySuite suite, std::uint64_t seed, int trials, const std::filesystem::path& failure_dir,
                         const OptimizerSettings& settings) {
  VerifySummary summary;
  switch (suite) {
    case VerifySuite::Identities: {
      Checker c(summary, failure_dir, "identities");
      identities(c, seed, trials);
      break;
    }
    case VerifySuite::Additivity: {
      Checker c(summary, failure_dir, "additivity");
      additivity(c, seed, trials);
      break;
    }
    case VerifySuite::Oracles: {
      Checker c(summary, failure_dir, "oracles");
      oracles(c, settings);
      break;
    }
  }
  return summary;
}

}  // namespace qcorr
