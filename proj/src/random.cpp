#include "qcorr/random.hpp"

#include <cmath>
#include <numbers>

#include "qcorr/state_ops.hpp"

namespace qcorr {
namespace {

RealVector random_probabilities(int n, Rng& rng) {
  // Uniform on the simplex.
  RealVector p(n);
  for (int k = 0; k < n; ++k) p[k] = -std::log(1.0 - rng.uniform());
  return p / p.sum();
}

}  // namespace

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const cplx d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return q;
}

Matrix random_local_unitary(const SubsystemLayout& layout, Rng& rng) {
  std::vector<Matrix> factors;
  for (int d : layout.dims()) factors.push_back(random_unitary(d, rng));
  return kron(factors);
}

LocalBasisSet random_basis_set(const SubsystemLayout& layout, const IndexSet& measured, Rng& rng) {
  LocalBasisSet out;
  for (auto s : normalize_subset(layout, measured)) out.set(s, LocalBasis::from_unitary(random_unitary(layout.dim(s), rng)));
  return out;
}

DensityMatrix random_state(const SubsystemLayout& layout, int rank, Rng& rng) {
  const int d = layout.total_dim();
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validate(hermitian_part(rho), layout);
}

DensityMatrix random_product_state(const SubsystemLayout& layout, Rng& rng) {
  std::vector<Matrix> factors;
  for (int d : layout.dims()) factors.push_back(random_state(SubsystemLayout({d}), d, rng).matrix());
  return DensityMatrix::validate(kron(factors), layout);
}

DensityMatrix random_classical_state(const SubsystemLayout& layout, Rng& rng, bool random_bases) {
  const int d = layout.total_dim();
  const RealVector p = random_probabilities(d, rng);
  Matrix rho = p.cast<cplx>().asDiagonal();
  if (random_bases) {
    const Matrix u = random_local_unitary(layout, rng);
    rho = u * rho * u.adjoint();
  }
  return DensityMatrix::validate(hermitian_part(rho), layout);
}

DensityMatrix random_classical_quantum_state(const SubsystemLayout& layout, Rng& rng) {
  const int da = layout.dim(0);
  const IndexSet rest = layout.complement({0});
  const SubsystemLayout rest_layout = layout.restrict_to(rest);
  const RealVector p = random_probabilities(da, rng);
  const Matrix u = random_unitary(da, rng);
  Matrix rho = Matrix::Zero(layout.total_dim(), layout.total_dim());
  for (int i = 0; i < da; ++i) {
    const Matrix flag = u.col(i) * u.col(i).adjoint();
    const Matrix cond = random_state(rest_layout, rest_layout.total_dim(), rng).matrix();
    rho += p[i] * kron(flag, cond);
  }
  return DensityMatrix::validate(hermitian_part(rho), layout);
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u) {
  return DensityMatrix::validate(hermitian_part(u * rho.matrix() * u.adjoint()), rho.layout());
}

}  // namespace qcorr
