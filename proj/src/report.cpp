#include "qcorr/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>

#include "qcorr/error.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/state_ops.hpp"

namespace qcorr {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool wants(const std::vector<Measure>& targets, Measure m) {
  return std::find(targets.begin(), targets.end(), m) != targets.end();
}

// Runs `fn`, turning optimizer failures into a report entry.
bool attempt(CorrelationReport& report, const std::string& key, const std::function<void()>& fn) {
  try {
    fn();
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::OptimizerFailure && e.code() != ErrorCode::NotClassical) throw;
    report.failures[key] = e.what();
    return false;
  }
}

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::S1: return "S1";
    case Measure::S2: return "S2";
    case Measure::J: return "J";
    case Measure::DiscordDelta: return "delta";
    case Measure::Mid: return "MID";
    case Measure::Red: return "D";
    case Measure::Ree: return "E";
    case Measure::Dissonance: return "Q";
    case Measure::ClassicalC: return "C";
    case Measure::TotalT: return "T";
    case Measure::AdditivityL: return "L";
    case Measure::ConfusionPN: return "PN";
    case Measure::Unified: return "unified";
  }
  return "?";
}

std::vector<Measure> parse_measures(std::string_view list) {
  static const std::vector<Measure> every = {Measure::S1,         Measure::S2,         Measure::J,
                                             Measure::DiscordDelta, Measure::Mid,      Measure::Red,
                                             Measure::Ree,        Measure::Dissonance, Measure::ClassicalC,
                                             Measure::TotalT,     Measure::AdditivityL, Measure::ConfusionPN,
                                             Measure::Unified};
  std::vector<Measure> out;
  auto add = [&](Measure m) {
    if (!wants(out, m)) out.push_back(m);
  };
  std::size_t start = 0;
  while (start <= list.size()) {
    auto end = list.find(',', start);
    if (end == std::string_view::npos) end = list.size();
    const std::string name = lower(list.substr(start, end - start));
    start = end + 1;
    if (name.empty()) continue;
    if (name == "all") {
      for (auto m : {Measure::Ree, Measure::Red, Measure::Dissonance, Measure::ClassicalC, Measure::TotalT,
                     Measure::AdditivityL, Measure::DiscordDelta, Measure::Mid}) {
        add(m);
      }
      continue;
    }
    bool found = false;
    for (auto m : every) {
      if (lower(measure_name(m)) == name) {
        add(m);
        found = true;
      }
    }
    if (name == "red") add(Measure::Red), found = true;
    if (name == "ree") add(Measure::Ree), found = true;
    if (!found) throw Error(ErrorCode::ParseError, "unknown measure '" + name + "'");
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "no measures requested");
  return out;
}

CorrelationReport compute_report(const DensityMatrix& rho, const MeasureRequest& request) {
  request.options.check();
  const SubsystemLayout& layout = rho.layout();
  const auto& t = request.targets;
  const OptimizerSettings& opt = request.options;

  CorrelationReport report{layout, request.measured.empty() ? IndexSet{0} : normalize_subset(layout, request.measured),
                           {}, {}, {}, {}, std::nullopt, {}, {}, {}, std::nullopt, std::nullopt};
  report.flags.push_back("projective_measurements_only");

  const bool need_t = wants(t, Measure::TotalT) || wants(t, Measure::ClassicalC) || wants(t, Measure::AdditivityL);
  const bool need_q = wants(t, Measure::Dissonance);
  const bool need_e = wants(t, Measure::Ree) || need_q || wants(t, Measure::ConfusionPN);
  const bool need_d = wants(t, Measure::Red) || wants(t, Measure::ClassicalC) || wants(t, Measure::AdditivityL) ||
                      need_e || wants(t, Measure::ConfusionPN);

  if (need_t) {
    report.values["T"] = relative_entropy(rho, marginal_product(rho));
    report.closest_states.emplace("pi_rho", marginal_product(rho));
  }

  std::optional<RedResult> red_result;
  if (need_d) {
    attempt(report, "D", [&] {
      red_result = red(rho, layout.all(), opt);
      report.values["D"] = red_result->value;
      report.closest_states.emplace("chi_rho", red_result->chi);
      report.optimal_bases.emplace("D", red_result->basis);
      report.diagnostics.emplace("D", red_result->diagnostics);
    });
  }
  if (red_result && (wants(t, Measure::ClassicalC) || wants(t, Measure::AdditivityL))) {
    const DensityMatrix& chi = red_result->chi;
    // chi is classical by construction; C = S(chi || pi_chi).
    const DensityMatrix pi_chi = marginal_product(chi);
    report.values["C"] = relative_entropy(chi, pi_chi);
    report.values["L"] = additivity_L(rho, red_result->basis);
    report.closest_states.emplace("pi_chi", pi_chi);
    report.additivity_residual =
        std::abs(report.values["D"] + report.values["C"] - report.values["T"] - report.values["L"]);
    if (*report.additivity_residual > kAdditivityTol) report.flags.push_back("additivity_residual_exceeded");
  }

  std::optional<ReeResult> ree_result;
  if (need_e) {
    if (!red_result) {
      report.failures["E"] = "requires D";
    } else {
      attempt(report, "E", [&] {
        ree_result = ree(rho, opt, red_result);
        report.values["E"] = ree_result->value;
        report.closest_states.emplace("sigma", ree_result->sigma);
        report.separable_certificate = ree_result->certificate;
        report.diagnostics.emplace("E", ree_result->diagnostics);
        if (ree_result->value > red_result->value + 1e-9) report.flags.push_back("E_exceeds_D");
      });
    }
  }

  if (need_q) {
    if (!ree_result) {
      report.failures["Q"] = "requires E";
    } else {
      attempt(report, "Q", [&] {
        const auto q = dissonance(rho, opt, ree_result);
        report.values["Q"] = q.value;
        report.closest_states.insert_or_assign("sigma", q.sigma);
        report.closest_states.emplace("chi_sigma", q.chi_sigma);
        report.optimal_bases.emplace("Q", q.basis);
        report.diagnostics.emplace("Q", q.red_diagnostics);
        const DensityMatrix pi_sigma = marginal_product(q.sigma);
        const DensityMatrix pi_chi_sigma = marginal_product(q.chi_sigma);
        report.values["T_sigma"] = relative_entropy(q.sigma, pi_sigma);
        report.values["C_sigma"] = relative_entropy(q.chi_sigma, pi_chi_sigma);
        report.values["L_sigma"] = additivity_L(q.sigma, q.basis);
        report.closest_states.emplace("pi_sigma", pi_sigma);
        report.closest_states.emplace("pi_chi_sigma", pi_chi_sigma);
        report.additivity_residual_sigma = std::abs(q.value + report.values["C_sigma"] - report.values["T_sigma"] -
                                                    report.values["L_sigma"]);
      });
    }
  }

  if (wants(t, Measure::DiscordDelta)) {
    const IndexSet first{0};
    const IndexSet last{layout.size() - 1};
    for (const auto& [key, set] : {std::pair{std::string("delta_AB"), first}, std::pair{std::string("delta_BA"), last},
                                   std::pair{std::string("delta"), report.measured}}) {
      attempt(report, key, [&] {
        const auto d = discord_delta(rho, set, opt);
        report.values[key] = d.value;
        report.optimal_bases.emplace(key, d.basis);
        report.diagnostics.emplace(key, d.diagnostics);
      });
    }
  }

  if (wants(t, Measure::Mid)) {
    const auto m = mid(rho);
    report.values["MID"] = m.value;
    report.optimal_bases.emplace("MID", m.basis);
    report.flags.push_back("mid_sign:S(chi)-S(rho)");
    if (m.degenerate) report.flags.push_back("mid_degenerate_marginals");
  }

  if (wants(t, Measure::S1)) report.values["S1"] = conditional_entropy_s1(rho, report.measured);
  if (wants(t, Measure::S2) || wants(t, Measure::J)) {
    attempt(report, "J", [&] {
      // The discord-optimal basis maximizes J.
      const auto d = discord_delta(rho, report.measured, opt);
      report.values["S2"] = conditional_entropy_s2(rho, d.basis);
      report.values["J"] = classical_correlation_J(rho, d.basis);
      report.optimal_bases.insert_or_assign("J", d.basis);
    });
  }

  if (wants(t, Measure::ConfusionPN)) {
    if (ree_result) report.values["PN_E"] = confusion_probability(ree_result->value, request.confusion_trials);
    if (red_result) report.values["PN_D"] = confusion_probability(red_result->value, request.confusion_trials);
  }

  if (wants(t, Measure::Unified)) {
    for (const auto& [key, variant, set] :
         {std::tuple{std::string("unified_original"), QuantumnessVariant::OriginalDiscord, report.measured},
          std::tuple{std::string("unified_mid"), QuantumnessVariant::Mid, layout.all()},
          std::tuple{std::string("unified_red"), QuantumnessVariant::Red, layout.all()}}) {
      attempt(report, key, [&] {
        report.unified.push_back(unified_quantumness(rho, variant, set, opt));
        report.values[key] = report.unified.back().value;
      });
    }
  }
  return report;
}

}  // namespace qcorr
