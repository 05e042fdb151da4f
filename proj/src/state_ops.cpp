#include "qcorr/state_ops.hpp"

#include <cmath>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {
namespace {

void require_same_layout(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.layout() != b.layout()) {
    throw Error(ErrorCode::DimensionMismatch,
                "layouts " + a.layout().to_string() + " and " + b.layout().to_string() + " differ");
  }
}

Matrix reduce(const Matrix& m, const IndexSplit& split) {
  Matrix out = Matrix::Zero(split.part_dim, split.part_dim);
  const auto n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (split.rest[i] == split.rest[j]) out(split.part[i], split.part[j]) += m(i, j);
    }
  }
  return out;
}

// rho in the frame of the measured bases, with coherences between different
// measured labels removed.
Matrix dephased_in_frame(const DensityMatrix& rho, const Matrix& u, const IndexSplit& split) {
  Matrix rotated = u.adjoint() * rho.matrix() * u;
  const auto n = static_cast<int>(rotated.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (split.part[i] != split.part[j]) rotated(i, j) = 0.0;
    }
  }
  return rotated;
}

}  // namespace

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_trusted(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const IndexSet& keep) {
  if (keep.empty()) throw Error(ErrorCode::EmptyKeepSet, "nothing to keep");
  const IndexSet k = normalize_subset(rho.layout(), keep);
  return DensityMatrix::from_trusted(reduce(rho.matrix(), rho.layout().split(k)),
                                     rho.layout().restrict_to(k));
}

std::vector<DensityMatrix> marginals(const DensityMatrix& rho) {
  std::vector<DensityMatrix> out;
  out.reserve(rho.layout().size());
  for (std::size_t n = 0; n < rho.layout().size(); ++n) out.push_back(partial_trace(rho, {n}));
  return out;
}

DensityMatrix marginal_product(const DensityMatrix& rho) {
  const auto parts = marginals(rho);
  std::vector<Matrix> factors;
  factors.reserve(parts.size());
  for (const auto& p : parts) factors.push_back(p.matrix());
  return DensityMatrix::from_trusted(kron(factors), rho.layout());
}

double entropy(const DensityMatrix& rho) {
  return shannon_bits(hermitian_eigenvalues(rho.matrix()));
}

double relative_entropy(const DensityMatrix& x, const DensityMatrix& y) {
  require_same_layout(x, y);
  const Spectrum sy = hermitian_spectrum(y.matrix());
  double cross = 0.0;
  for (Eigen::Index j = 0; j < sy.values.size(); ++j) {
    const double weight = (sy.vectors.col(j).adjoint() * x.matrix() * sy.vectors.col(j))(0, 0).real();
    if (sy.values[j] <= tol::psd) {
      if (weight > tol::support) return kInfinite;
      continue;
    }
    cross -= weight * std::log2(sy.values[j]);
  }
  return std::max(0.0, cross - entropy(x));
}

double mutual_information(const DensityMatrix& rho) {
  double sum = 0.0;
  for (const auto& m : marginals(rho)) sum += entropy(m);
  return std::max(0.0, sum - entropy(rho));
}

DensityMatrix dephase(const DensityMatrix& rho, const LocalBasisSet& basis) {
  basis.check_against(rho.layout());
  const IndexSplit split = rho.layout().split(basis.measured());
  const Matrix u = basis.full_unitary(rho.layout());
  const Matrix frame = dephased_in_frame(rho, u, split);
  return DensityMatrix::from_trusted(u * frame * u.adjoint(), rho.layout());
}

double dephased_entropy(const DensityMatrix& rho, const LocalBasisSet& basis) {
  basis.check_against(rho.layout());
  const SubsystemLayout& layout = rho.layout();
  if (basis.measured().size() == layout.size()) {
    // Fully measured: the dephased state is diagonal in the product basis.
    const Matrix u = basis.full_unitary(layout);
    const Matrix ru = rho.matrix() * u;
    RealVector p(u.cols());
    for (Eigen::Index k = 0; k < u.cols(); ++k) p[k] = u.col(k).dot(ru.col(k)).real();
    return shannon_bits(p);
  }
  // Block diagonal over measured labels: H(p) + sum_a p_a S(rho_a).
  const IndexSplit split = layout.split(basis.measured());
  const Matrix frame = dephased_in_frame(rho, basis.full_unitary(layout), split);
  std::vector<Matrix> blocks(split.part_dim, Matrix::Zero(split.rest_dim, split.rest_dim));
  const auto n = static_cast<int>(frame.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (split.part[i] == split.part[j]) blocks[split.part[i]](split.rest[i], split.rest[j]) = frame(i, j);
    }
  }
  double h = 0.0;
  for (const auto& b : blocks) {
    const RealVector ev = hermitian_eigenvalues(b);
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (ev[k] > 0.0) h -= ev[k] * std::log2(ev[k]);
    }
  }
  return std::max(0.0, h);
}

Matrix embed(const Matrix& op, const SubsystemLayout& layout, const IndexSet& subsystems) {
  const IndexSplit split = layout.split(subsystems);
  if (op.rows() != split.part_dim || op.cols() != split.part_dim) {
    throw Error(ErrorCode::DimensionMismatch, "operator does not match subsystem dimensions");
  }
  const int n = layout.total_dim();
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (split.rest[i] == split.rest[j]) out(i, j) = op(split.part[i], split.part[j]);
    }
  }
  return out;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  require_same_layout(a, b);
  return 0.5 * hermitian_eigenvalues(a.matrix() - b.matrix()).cwiseAbs().sum();
}

}  // namespace qcorr
