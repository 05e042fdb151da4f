#include "qcorr/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcorr/error.hpp"
#include "qcorr/tolerances.hpp"

namespace qcorr {
namespace {

void apply_givens_right(Matrix& u, int c, int r, double theta, double phi) {
  const double cs = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  const cplx e = std::polar(1.0, phi);
  // u <- u * G; only columns c and r change.
  for (Eigen::Index row = 0; row < u.rows(); ++row) {
    const cplx a = u(row, c);
    const cplx b = u(row, r);
    u(row, c) = a * cs + b * e * sn;
    u(row, r) = -a * std::conj(e) * sn + b * cs;
  }
}

void apply_givens_adjoint_left(Matrix& v, int c, int r, double theta, double phi) {
  const double cs = std::cos(0.5 * theta);
  const double sn = std::sin(0.5 * theta);
  const cplx e = std::polar(1.0, phi);
  // v <- G^dagger v; only rows c and r change.
  for (Eigen::Index col = 0; col < v.cols(); ++col) {
    const cplx a = v(c, col);
    const cplx b = v(r, col);
    v(c, col) = cs * a + std::conj(e) * sn * b;
    v(r, col) = -e * sn * a + cs * b;
  }
}

double wrap_2pi(double x) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  x = std::fmod(x, two_pi);
  if (x < 0) x += two_pi;
  if (x >= two_pi) x -= two_pi;
  return x;
}

}  // namespace

Matrix givens_unitary(int dim, std::span<const double> angles) {
  if (angles.size() != LocalBasis::parameter_count(dim)) {
    throw Error(ErrorCode::BasisDimensionMismatch,
                "expected " + std::to_string(LocalBasis::parameter_count(dim)) + " angles for dimension " +
                    std::to_string(dim));
  }
  Matrix u = Matrix::Identity(dim, dim);
  std::size_t k = 0;
  for (int c = 0; c < dim - 1; ++c) {
    for (int r = c + 1; r < dim; ++r) {
      apply_givens_right(u, c, r, angles[k], angles[k + 1]);
      k += 2;
    }
  }
  return u;
}

std::vector<double> wrap_angles(std::span<const double> angles) {
  std::vector<double> out(angles.begin(), angles.end());
  for (std::size_t k = 0; k + 1 < out.size(); k += 2) {
    double theta = wrap_2pi(out[k]);
    double phi = out[k + 1];
    if (theta > std::numbers::pi) {
      // G(2 pi - theta, phi + pi) = -G(theta, phi); the sign is a global phase.
      theta = 2.0 * std::numbers::pi - theta;
      phi += std::numbers::pi;
    }
    out[k] = theta;
    out[k + 1] = wrap_2pi(phi);
  }
  return out;
}

LocalBasis LocalBasis::computational(int dim) {
  if (dim < 2) throw Error(ErrorCode::BasisDimensionMismatch, "dimension must be >= 2");
  return LocalBasis(Matrix::Identity(dim, dim), std::vector<double>(parameter_count(dim), 0.0));
}

LocalBasis LocalBasis::from_angles(int dim, std::span<const double> angles) {
  if (dim < 2) throw Error(ErrorCode::BasisDimensionMismatch, "dimension must be >= 2");
  return LocalBasis(givens_unitary(dim, angles), std::vector<double>(angles.begin(), angles.end()));
}

LocalBasis LocalBasis::from_unitary(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2) {
    throw Error(ErrorCode::BasisDimensionMismatch, "basis matrix must be square with dimension >= 2");
  }
  const double dev = unitarity_deviation(u);
  if (dev > tol::orth) throw Error(ErrorCode::NotUnitary, "deviation " + std::to_string(dev));

  const int dim = static_cast<int>(u.rows());
  Matrix v = u;
  std::vector<double> angles;
  angles.reserve(parameter_count(dim));
  for (int c = 0; c < dim - 1; ++c) {
    for (int r = c + 1; r < dim; ++r) {
      const cplx a = v(c, c);
      const cplx b = v(r, c);
      const double t = std::atan2(std::abs(b), std::abs(a));
      double phi = 0.0;
      if (std::abs(b) > 0.0) phi = std::arg(b) - (std::abs(a) > 0.0 ? std::arg(a) : 0.0);
      const double theta = 2.0 * t;
      apply_givens_adjoint_left(v, c, r, theta, phi);
      angles.push_back(theta);
      angles.push_back(wrap_2pi(phi));
    }
  }
  return LocalBasis(u, std::move(angles));
}

bool LocalBasis::same_projectors(const LocalBasis& other, double tol) const {
  if (other.dim() != dim()) return false;
  const Eigen::MatrixXd overlap = (unitary_.adjoint() * other.unitary_).cwiseAbs2();
  for (Eigen::Index k = 0; k < overlap.rows(); ++k) {
    if (overlap.row(k).maxCoeff() < 1.0 - tol) return false;
  }
  return true;
}

LocalBasisSet LocalBasisSet::computational(const SubsystemLayout& layout, const IndexSet& measured) {
  LocalBasisSet out;
  for (auto s : normalize_subset(layout, measured)) out.set(s, LocalBasis::computational(layout.dim(s)));
  return out;
}

std::size_t LocalBasisSet::parameter_count(const SubsystemLayout& layout, const IndexSet& measured) {
  std::size_t n = 0;
  for (auto s : measured) n += LocalBasis::parameter_count(layout.dim(s));
  return n;
}

LocalBasisSet LocalBasisSet::from_parameters(const SubsystemLayout& layout, const IndexSet& measured,
                                             std::span<const double> parameters) {
  const IndexSet m = normalize_subset(layout, measured);
  if (parameters.size() != parameter_count(layout, m)) {
    throw Error(ErrorCode::BasisDimensionMismatch, "parameter vector has wrong length");
  }
  LocalBasisSet out;
  std::size_t offset = 0;
  for (auto s : m) {
    const int d = layout.dim(s);
    const std::size_t n = LocalBasis::parameter_count(d);
    out.set(s, LocalBasis::from_angles(d, parameters.subspan(offset, n)));
    offset += n;
  }
  return out;
}

void LocalBasisSet::set(std::size_t subsystem, LocalBasis basis) {
  auto it = std::lower_bound(measured_.begin(), measured_.end(), subsystem);
  const auto pos = it - measured_.begin();
  if (it != measured_.end() && *it == subsystem) {
    bases_[pos] = std::move(basis);
    return;
  }
  measured_.insert(it, subsystem);
  bases_.insert(bases_.begin() + pos, std::move(basis));
}

const LocalBasis& LocalBasisSet::basis_for(std::size_t subsystem) const {
  auto it = std::lower_bound(measured_.begin(), measured_.end(), subsystem);
  if (it == measured_.end() || *it != subsystem) {
    throw Error(ErrorCode::IndexOutOfRange, "no basis for subsystem " + std::to_string(subsystem));
  }
  return bases_[it - measured_.begin()];
}

bool LocalBasisSet::contains(std::size_t subsystem) const {
  return std::binary_search(measured_.begin(), measured_.end(), subsystem);
}

std::vector<double> LocalBasisSet::parameters() const {
  std::vector<double> out;
  for (const auto& b : bases_) out.insert(out.end(), b.angles().begin(), b.angles().end());
  return out;
}

void LocalBasisSet::check_against(const SubsystemLayout& layout) const {
  for (std::size_t k = 0; k < measured_.size(); ++k) {
    if (measured_[k] >= layout.size()) {
      throw Error(ErrorCode::BasisDimensionMismatch,
                  "basis given for subsystem " + std::to_string(measured_[k]) + " outside layout " +
                      layout.to_string());
    }
    if (bases_[k].dim() != layout.dim(measured_[k])) {
      throw Error(ErrorCode::BasisDimensionMismatch,
                  "basis of dimension " + std::to_string(bases_[k].dim()) + " for subsystem " +
                      std::to_string(measured_[k]) + " of dimension " +
                      std::to_string(layout.dim(measured_[k])));
    }
  }
}

Matrix LocalBasisSet::full_unitary(const SubsystemLayout& layout) const {
  check_against(layout);
  std::vector<Matrix> factors;
  factors.reserve(layout.size());
  for (std::size_t n = 0; n < layout.size(); ++n) {
    factors.push_back(contains(n) ? basis_for(n).unitary() : Matrix::Identity(layout.dim(n), layout.dim(n)));
  }
  return kron(factors);
}

bool LocalBasisSet::same_projectors(const LocalBasisSet& other, double tol) const {
  if (other.measured_ != measured_) return false;
  for (std::size_t k = 0; k < bases_.size(); ++k) {
    if (!bases_[k].same_projectors(other.bases_[k], tol)) return false;
  }
  return true;
}

}  // namespace qcorr
