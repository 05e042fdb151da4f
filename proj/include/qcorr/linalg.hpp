#pragma once

#include <complex>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace qcorr {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct Spectrum {
  RealVector values;
  Matrix vectors;  // column k belongs to values[k]
};

Spectrum hermitian_spectrum(const Matrix& m);

/// Eigenvalues only (descending). Uses a closed form for 2x2 input.
RealVector hermitian_eigenvalues(const Matrix& m);

/// f(m) through the spectral decomposition; m must be Hermitian.
Matrix hermitian_function(const Matrix& m, const std::function<double(double)>& f);
Matrix hermitian_function(const Spectrum& s, const std::function<double(double)>& f);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::span<const Matrix> factors);

/// -sum p log2 p over strictly positive entries.
double shannon_bits(const RealVector& p);

/// Largest entry-wise modulus of (m - m^dagger).
double hermiticity_deviation(const Matrix& m);

/// Largest entry-wise modulus of (u^dagger u - 1).
double unitarity_deviation(const Matrix& u);

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

}  // namespace qcorr
