#include "qcorr/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

Spectrum hermitian_spectrum(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  const Eigen::Index n = m.rows();
  Spectrum s;
  s.values.resize(n);
  s.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values[k] = solver.eigenvalues()[n - 1 - k];
    s.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return s;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  const Eigen::Index n = m.rows();
  RealVector out(n);
  if (n == 1) {
    out[0] = m(0, 0).real();
    return out;
  }
  if (n == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_trace = 0.5 * (a + d);
    const double half_diff = 0.5 * (a - d);
    const double r = std::sqrt(half_diff * half_diff + std::norm(m(0, 1)));
    out[0] = half_trace + r;
    out[1] = half_trace - r;
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = solver.eigenvalues()[n - 1 - k];
  return out;
}

Matrix hermitian_function(const Spectrum& s, const std::function<double(double)>& f) {
  RealVector fv(s.values.size());
  for (Eigen::Index k = 0; k < fv.size(); ++k) fv[k] = f(s.values[k]);
  return s.vectors * fv.cast<cplx>().asDiagonal() * s.vectors.adjoint();
}

Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f) {
  return hermitian_function(hermitian_spectrum(m), f);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron(std::span<const Matrix> factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors[0];
  for (std::size_t n = 1; n < factors.size(); ++n) out = kron(out, factors[n]);
  return out;
}

double shannon_bits(const RealVector& p) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    if (p[k] > 0.0) h -= p[k] * std::log2(p[k]);
  }
  return std::max(0.0, h);
}

double hermiticity_deviation(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace qcorr
