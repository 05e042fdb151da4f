#include "qcorr/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qcorr/error.hpp"
#include "qcorr/state_ops.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {
namespace {

IndexSet proper_subset(const SubsystemLayout& layout, const IndexSet& subset, ErrorCode empty_code) {
  if (subset.empty()) throw Error(empty_code, "subsystem set is empty");
  IndexSet s = normalize_subset(layout, subset);
  if (s.size() == layout.size()) {
    throw Error(ErrorCode::InvalidSubset, "subsystem set must leave at least one subsystem out");
  }
  return s;
}

std::vector<int> local_label(const SubsystemLayout& layout, const IndexSet& measured, int joint) {
  std::vector<int> label(measured.size());
  for (std::size_t k = measured.size(); k-- > 0;) {
    const int d = layout.dim(measured[k]);
    label[k] = joint % d;
    joint /= d;
  }
  return label;
}

}  // namespace

MeasurementEnsemble measure(const DensityMatrix& rho, const LocalBasisSet& basis) {
  const SubsystemLayout& layout = rho.layout();
  const IndexSet measured = proper_subset(layout, basis.measured(), ErrorCode::EmptyMeasuredSet);
  basis.check_against(layout);

  const IndexSet rest = layout.complement(measured);
  const IndexSplit split = layout.split(measured);
  const Matrix u = basis.full_unitary(layout);
  const Matrix frame = u.adjoint() * rho.matrix() * u;

  std::vector<Matrix> blocks(split.part_dim, Matrix::Zero(split.rest_dim, split.rest_dim));
  const int n = layout.total_dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (split.part[i] == split.part[j]) blocks[split.part[i]](split.rest[i], split.rest[j]) = frame(i, j);
    }
  }

  MeasurementEnsemble out{measured, layout.restrict_to(rest), {}};
  for (int a = 0; a < split.part_dim; ++a) {
    const double p = blocks[a].trace().real();
    if (p <= tol::trace) continue;
    out.outcomes.push_back(MeasurementOutcome{local_label(layout, measured, a), p,
                                              DensityMatrix::from_trusted(blocks[a] / p, out.unmeasured_layout)});
  }
  return out;
}

DensityMatrix reassemble(const MeasurementEnsemble& ensemble, const SubsystemLayout& layout,
                         const LocalBasisSet& basis) {
  const IndexSplit split = layout.split(ensemble.measured);
  const int n = layout.total_dim();
  Matrix frame = Matrix::Zero(n, n);
  for (const auto& o : ensemble.outcomes) {
    int joint = 0;
    for (std::size_t k = 0; k < o.label.size(); ++k) joint = joint * layout.dim(ensemble.measured[k]) + o.label[k];
    for (int i = 0; i < n; ++i) {
      if (split.part[i] != joint) continue;
      for (int j = 0; j < n; ++j) {
        if (split.part[j] == joint) frame(i, j) = o.probability * o.state(split.rest[i], split.rest[j]);
      }
    }
  }
  const Matrix u = basis.full_unitary(layout);
  return DensityMatrix::from_trusted(u * frame * u.adjoint(), layout);
}

double conditional_entropy_s1(const DensityMatrix& rho, const IndexSet& conditioned_on) {
  const IndexSet a = proper_subset(rho.layout(), conditioned_on, ErrorCode::InvalidSubset);
  return entropy(rho) - entropy(partial_trace(rho, a));
}

double conditional_entropy_s2(const DensityMatrix& rho, const LocalBasisSet& basis) {
  double s = 0.0;
  for (const auto& o : measure(rho, basis).outcomes) s += o.probability * entropy(o.state);
  return std::max(0.0, s);
}

ConditionalAmplitude conditional_amplitude(const DensityMatrix& rho, const IndexSet& conditioned_on) {
  const SubsystemLayout& layout = rho.layout();
  const IndexSet a = proper_subset(layout, conditioned_on, ErrorCode::InvalidSubset);

  ConditionalAmplitude out;
  Spectrum joint = hermitian_spectrum(rho.matrix());
  Matrix state = rho.matrix();
  if (joint.values[joint.values.size() - 1] <= tol::psd) {
    const double eps = kAmplitudeRegularization;
    const int d = layout.total_dim();
    state = (1.0 - eps) * state + (eps / d) * Matrix::Identity(d, d);
    joint = hermitian_spectrum(state);
    out.regularization = eps;
  }
  const DensityMatrix regular = DensityMatrix::from_trusted(state, layout);
  const Matrix marginal = partial_trace(regular, a).matrix();

  auto safe_log = [](double x) { return std::log(std::max(x, std::numeric_limits<double>::min())); };
  const Matrix log_joint = hermitian_function(joint, safe_log);
  const Matrix log_marginal = embed(hermitian_function(marginal, safe_log), layout, a);
  out.op = hermitian_function(hermitian_part(log_joint - log_marginal), [](double x) { return std::exp(x); });
  return out;
}

}  // namespace qcorr
