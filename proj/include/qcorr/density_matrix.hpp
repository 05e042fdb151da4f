#pragma once

#include "qcorr/layout.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

/// Positive, unit-trace Hermitian operator on the tensor product described
/// by its layout. Instances are immutable and can only be obtained through
/// validate() or from operations that preserve positivity.
class DensityMatrix {
 public:
  /// Checks Hermiticity, trace and positivity against the library
  /// tolerances, symmetrizes, and clamps eigenvalues in [-tol::psd, 0) to 0.
  static DensityMatrix validate(const Matrix& matrix, const SubsystemLayout& layout);

  /// Wraps the output of a positivity-preserving computation. The matrix is
  /// symmetrized and its trace renormalized; no spectral check is made.
  static DensityMatrix from_trusted(const Matrix& matrix, const SubsystemLayout& layout);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  int dim() const noexcept { return layout_.total_dim(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

 private:
  DensityMatrix(Matrix m, SubsystemLayout layout) : layout_(std::move(layout)), matrix_(std::move(m)) {}

  SubsystemLayout layout_;
  Matrix matrix_;
};

}  // namespace qcorr
