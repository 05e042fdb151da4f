#include "qcorr/measures.hpp"

#include <cmath>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/state_ops.hpp"

namespace qcorr {
namespace {

// Entropy of the diagonal of u^dagger m u.
double dephased_local_entropy(const Matrix& m, const Matrix& u) {
  const Matrix mu = m * u;
  RealVector p(u.cols());
  for (Eigen::Index k = 0; k < u.cols(); ++k) p[k] = u.col(k).dot(mu.col(k)).real();
  return shannon_bits(p);
}

IndexSet checked_measured(const SubsystemLayout& layout, const IndexSet& measured) {
  if (measured.empty()) throw Error(ErrorCode::EmptyMeasuredSet, "no measured subsystem");
  return normalize_subset(layout, measured);
}

Matrix gram_schmidt_projected(const Matrix& eigvecs) {
  // Orthonormal basis of span(eigvecs) built from P e_0, P e_1, ...
  const auto d = eigvecs.rows();
  const auto m = eigvecs.cols();
  const Matrix proj = eigvecs * eigvecs.adjoint();
  Matrix out(d, m);
  Eigen::Index found = 0;
  for (Eigen::Index j = 0; j < d && found < m; ++j) {
    Vector v = proj.col(j);
    for (Eigen::Index k = 0; k < found; ++k) v -= out.col(k).dot(v) * out.col(k);
    for (Eigen::Index k = 0; k < found; ++k) v -= out.col(k).dot(v) * out.col(k);
    const double n = v.norm();
    if (n > 1e-6) out.col(found++) = v / n;
  }
  return out;
}

}  // namespace

double clamp_correlation(double value, double opt_tol, const char* what) {
  if (value < -opt_tol) {
    throw Error(ErrorCode::OptimizerFailure, std::string(what) + " came out negative: " + std::to_string(value));
  }
  return std::max(0.0, value);
}

double classical_correlation_J(const DensityMatrix& rho, const LocalBasisSet& basis) {
  const IndexSet rest = rho.layout().complement(basis.measured());
  if (rest.empty()) throw Error(ErrorCode::InvalidSubset, "J needs an unmeasured subsystem");
  return entropy(partial_trace(rho, rest)) - conditional_entropy_s2(rho, basis);
}

DiscordResult discord_delta(const DensityMatrix& rho, const IndexSet& measured_in, const OptimizerSettings& settings) {
  const SubsystemLayout& layout = rho.layout();
  const IndexSet measured = checked_measured(layout, measured_in);
  if (measured.size() == layout.size()) {
    throw Error(ErrorCode::InvalidSubset, "discord needs a proper subset of measured subsystems");
  }
  const auto parts = marginals(rho);
  const double s_rho = entropy(rho);
  double s_measured = 0.0;
  for (auto n : measured) s_measured += entropy(parts[n]);

  // I(rho) - I(chi): unmeasured marginals cancel.
  const BasisObjective objective = [&](const LocalBasisSet& basis) {
    double h = 0.0;
    for (std::size_t k = 0; k < basis.measured().size(); ++k) {
      h += dephased_local_entropy(parts[basis.measured()[k]].matrix(), basis.bases()[k].unitary());
    }
    return (s_measured - h) - s_rho + dephased_entropy(rho, basis);
  };
  const auto seed = marginal_eigenbasis(rho, measured).basis;
  auto opt = minimize_over_bases(objective, layout, measured, settings, std::span(&seed, 1));
  const double value = clamp_correlation(opt.value, settings.opt_tol, "discord");
  return DiscordResult{value, opt.basis, dephase(rho, opt.basis), opt.diagnostics};
}

MarginalEigenbasis marginal_eigenbasis(const DensityMatrix& rho, const IndexSet& subsystems) {
  MarginalEigenbasis out{{}, false};
  for (auto n : normalize_subset(rho.layout(), subsystems)) {
    Spectrum s = hermitian_spectrum(partial_trace(rho, {n}).matrix());
    const auto d = s.values.size();
    Eigen::Index start = 0;
    while (start < d) {
      Eigen::Index end = start + 1;
      while (end < d && s.values[end - 1] - s.values[end] < kDegeneracyGap) ++end;
      if (end - start > 1) {
        out.degenerate = true;
        s.vectors.middleCols(start, end - start) = gram_schmidt_projected(s.vectors.middleCols(start, end - start));
      }
      start = end;
    }
    out.basis.set(n, LocalBasis::from_unitary(s.vectors));
  }
  return out;
}

MidResult mid(const DensityMatrix& rho) {
  auto eig = marginal_eigenbasis(rho, rho.layout().all());
  DensityMatrix chi = dephase(rho, eig.basis);
  const double value = std::max(0.0, entropy(chi) - entropy(rho));
  return MidResult{value, std::move(eig.basis), std::move(chi), eig.degenerate};
}

RedResult red(const DensityMatrix& rho, const IndexSet& measured_in, const OptimizerSettings& settings) {
  const IndexSet measured = checked_measured(rho.layout(), measured_in);
  const double s_rho = entropy(rho);
  const BasisObjective objective = [&](const LocalBasisSet& basis) { return dephased_entropy(rho, basis) - s_rho; };
  const auto seed = marginal_eigenbasis(rho, measured).basis;
  auto opt = minimize_over_bases(objective, rho.layout(), measured, settings, std::span(&seed, 1));
  const double value = clamp_correlation(opt.value, settings.opt_tol, "relative entropy of discord");
  return RedResult{value, dephase(rho, opt.basis), opt.basis, opt.diagnostics};
}

ReeResult ree(const DensityMatrix& rho, const OptimizerSettings& settings, const std::optional<RedResult>& red_hint) {
  const RedResult r = red_hint ? *red_hint : red(rho, rho.layout().all(), settings);
  const ProductDecomposition seed = classical_decomposition(rho, r.basis);
  auto opt = minimize_over_separable(rho, settings, std::span(&seed, 1));
  const double value = clamp_correlation(opt.value, settings.opt_tol, "relative entropy of entanglement");
  return ReeResult{value, opt.sigma, opt.certificate, opt.feasible, opt.diagnostics};
}

DissonanceResult dissonance(const DensityMatrix& rho, const OptimizerSettings& settings,
                            const std::optional<ReeResult>& ree_result) {
  const ReeResult e = ree_result ? *ree_result : ree(rho, settings);
  const DensityMatrix sigma = e.value <= settings.opt_tol ? rho : e.sigma;
  const RedResult q = red(sigma, sigma.layout().all(), settings);
  return DissonanceResult{q.value, sigma, q.chi, q.basis, e.diagnostics, q.diagnostics};
}

ClassicalCorrelation classical_C(const DensityMatrix& chi, const OptimizerSettings& settings) {
  const auto eig = marginal_eigenbasis(chi, chi.layout().all());
  const double deviation = (dephase(chi, eig.basis).matrix() - chi.matrix()).cwiseAbs().maxCoeff();
  if (deviation > 1e-8) {
    // Degenerate marginals leave the product basis undetermined; search for it.
    const RedResult r = red(chi, chi.layout().all(), settings);
    if (r.value > settings.opt_tol) {
      throw Error(ErrorCode::NotClassical,
                  "state is " + std::to_string(r.value) + " bits away from the nearest classical state");
    }
  }
  return ClassicalCorrelation{mutual_information(chi), marginal_product(chi)};
}

double additivity_L(const DensityMatrix& rho, const LocalBasisSet& basis) {
  const DensityMatrix chi = dephase(rho, basis);
  return entropy(marginal_product(chi)) - entropy(marginal_product(rho));
}

double confusion_probability(double s_rel_bits, long long n) {
  if (s_rel_bits < 0.0 || n < 0 || std::isnan(s_rel_bits)) {
    throw Error(ErrorCode::NegativeArguments, "relative entropy and trial count must be nonnegative");
  }
  if (n == 0) return 1.0;
  if (std::isinf(s_rel_bits)) return 0.0;
  return std::exp(-static_cast<double>(n) * s_rel_bits * std::numbers::ln2);
}

UnifiedQuantumness unified_quantumness(const DensityMatrix& rho, QuantumnessVariant variant,
                                       const IndexSet& measured, const OptimizerSettings& settings) {
  LocalBasisSet basis;
  double value = 0.0;
  switch (variant) {
    case QuantumnessVariant::OriginalDiscord: {
      auto d = discord_delta(rho, measured, settings);
      basis = d.basis;
      value = d.value;
      break;
    }
    case QuantumnessVariant::Mid: {
      auto m = mid(rho);
      basis = m.basis;
      value = m.value;
      break;
    }
    case QuantumnessVariant::Red: {
      auto r = red(rho, measured, settings);
      basis = r.basis;
      value = r.value;
      break;
    }
  }
  DensityMatrix pi_rho = marginal_product(rho);
  DensityMatrix chi = dephase(rho, basis);
  DensityMatrix pi_chi = marginal_product(chi);
  std::map<std::string, double> distances{
      {"T", relative_entropy(rho, pi_rho)},        {"D", relative_entropy(rho, chi)},
      {"C", relative_entropy(chi, pi_chi)},        {"L", relative_entropy(pi_rho, pi_chi)},
      {"rho_pi_chi", relative_entropy(rho, pi_chi)}, {"chi_pi_rho", relative_entropy(chi, pi_rho)},
  };
  return UnifiedQuantumness{variant,          value, std::move(basis), rho, std::move(pi_rho), std::move(chi),
                            std::move(pi_chi), std::move(distances)};
}

}  // namespace qcorr
