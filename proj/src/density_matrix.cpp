#include "qcorr/density_matrix.hpp"

#include <cmath>
#include <sstream>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {

DensityMatrix DensityMatrix::validate(const Matrix& matrix, const SubsystemLayout& layout) {
  if (matrix.rows() != layout.total_dim() || matrix.cols() != layout.total_dim()) {
    std::ostringstream os;
    os << "matrix is " << matrix.rows() << "x" << matrix.cols() << " but layout " << layout.to_string()
       << " needs " << layout.total_dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  if (!matrix.allFinite()) throw Error(ErrorCode::NonHermitian, "matrix has non-finite entries");

  const double dev = hermiticity_deviation(matrix);
  if (dev > tol::herm) {
    throw Error(ErrorCode::NonHermitian, "deviation " + std::to_string(dev));
  }
  Matrix m = hermitian_part(matrix);

  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol::trace) {
    throw Error(ErrorCode::TraceError, "trace " + std::to_string(tr));
  }

  Spectrum s = hermitian_spectrum(m);
  const double smallest = s.values[s.values.size() - 1];
  if (smallest < -tol::psd) {
    throw Error(ErrorCode::NonPositive, "eigenvalue " + std::to_string(smallest));
  }
  if (smallest < 0.0) {
    s.values = s.values.cwiseMax(0.0);
    s.values /= s.values.sum();
    m = s.vectors * s.values.cast<cplx>().asDiagonal() * s.vectors.adjoint();
    m = hermitian_part(m);
  }
  return DensityMatrix(std::move(m), layout);
}

DensityMatrix DensityMatrix::from_trusted(const Matrix& matrix, const SubsystemLayout& layout) {
  if (matrix.rows() != layout.total_dim() || matrix.cols() != layout.total_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix does not match layout " + layout.to_string());
  }
  Matrix m = hermitian_part(matrix);
  m /= m.trace().real();
  return DensityMatrix(std::move(m), layout);
}

}  // namespace qcorr
