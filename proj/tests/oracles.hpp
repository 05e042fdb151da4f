#pragma once

// Independent reference values for the tests: closed forms, explicit index
// loops and exhaustive one-dimensional scans. Nothing here calls into the
// library's spectral code.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

inline double shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) h -= xlog2x(x);
  return h;
}

inline double h2(double p) { return shannon({p, 1.0 - p}); }

// Sum_i p_i log2(p_i / q_i) for commuting (simultaneously diagonal) states.
inline double classical_relative_entropy(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return INFINITY;
    s += p[i] * std::log2(p[i] / q[i]);
  }
  return s;
}

inline Matrix diag(const std::vector<double>& d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

inline Matrix projector(const std::vector<cplx>& v) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

inline Matrix phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return projector({s, 0, 0, s});
}

// p |Phi+><Phi+| + (1 - p) I/4
inline Matrix werner(double p) { return p * phi_plus() + (1.0 - p) * Matrix::Identity(4, 4) / 4.0; }

inline std::vector<double> werner_spectrum(double p) {
  const double rest = (1.0 - p) / 4.0;
  return {(1.0 + 3.0 * p) / 4.0, rest, rest, rest};
}

inline double werner_entropy(double p) { return shannon(werner_spectrum(p)); }

// Both marginals are maximally mixed.
inline double werner_mutual_information(double p) { return 2.0 - werner_entropy(p); }

// Dephasing in the computational product basis, which is optimal.
inline double werner_red(double p) {
  const double a = (1.0 + p) / 4.0, b = (1.0 - p) / 4.0;
  return shannon({a, b, b, a}) - werner_entropy(p);
}

// I - max J with J = 1 - h2((1 + p) / 2) for any projective measurement.
inline double werner_discord(double p) { return werner_mutual_information(p) - (1.0 - h2((1.0 + p) / 2.0)); }

// Minimum over separable Bell-diagonal states (q, (1-q)/3, (1-q)/3, (1-q)/3)
// with q <= 1/2, scanned on `points` grid values. The state must be
// Bell-diagonal with Phi+ weight `f` and equal remaining weights.
inline double bell_diagonal_ree_scan(double f, int points = 200001) {
  const std::vector<double> p = {f, (1 - f) / 3, (1 - f) / 3, (1 - f) / 3};
  double best = INFINITY;
  for (int i = 0; i < points; ++i) {
    const double q = 0.5 * i / (points - 1);
    best = std::min(best, classical_relative_entropy(p, {q, (1 - q) / 3, (1 - q) / 3, (1 - q) / 3}));
  }
  return best;
}

// Explicit index-loop Kronecker product.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return m;
}

// Trace over the second factor of a (da*db)-dimensional operator.
inline Matrix trace_second(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

inline Matrix trace_first(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace oracle
