#pragma once

#include <span>
#include <vector>

#include "qcorr/layout.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

/// Orthonormal basis of one subsystem, stored as the columns of a unitary.
///
/// The unitary is the ordered product of complex Givens rotations
///   G(c, r; theta, phi),  0 <= c < r < d,  c-major order,
/// acting on the (c, r) plane as
///   [ cos(theta/2)            -e^{-i phi} sin(theta/2) ]
///   [ e^{i phi} sin(theta/2)   cos(theta/2)            ]
/// so a d-level basis carries d(d-1) angles (theta, phi interleaved). For a
/// qubit the first basis vector has Bloch polar angle theta and azimuth phi.
/// Column phases are irrelevant for projectors and are not parameterized.
class LocalBasis {
 public:
  static LocalBasis computational(int dim);
  static LocalBasis from_angles(int dim, std::span<const double> angles);

  /// Accepts any unitary (within tol::orth); the stored angles reproduce
  /// its columns up to phases.
  static LocalBasis from_unitary(const Matrix& u);

  static std::size_t parameter_count(int dim) { return static_cast<std::size_t>(dim) * (dim - 1); }

  int dim() const noexcept { return static_cast<int>(unitary_.rows()); }
  const Matrix& unitary() const noexcept { return unitary_; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  Vector vector(int k) const { return unitary_.col(k); }

  /// Same set of rank-one projectors, irrespective of order and phases.
  bool same_projectors(const LocalBasis& other, double tol = 1e-6) const;

 private:
  LocalBasis(Matrix u, std::vector<double> angles) : unitary_(std::move(u)), angles_(std::move(angles)) {}

  Matrix unitary_;
  std::vector<double> angles_;
};

Matrix givens_unitary(int dim, std::span<const double> angles);

/// Maps (theta, phi) pairs onto theta in [0, pi], phi in [0, 2 pi).
std::vector<double> wrap_angles(std::span<const double> angles);

/// One local basis per measured subsystem.
class LocalBasisSet {
 public:
  LocalBasisSet() = default;

  static LocalBasisSet computational(const SubsystemLayout& layout, const IndexSet& measured);

  /// Consumes parameters in subsystem order, LocalBasis::parameter_count each.
  static LocalBasisSet from_parameters(const SubsystemLayout& layout, const IndexSet& measured,
                                       std::span<const double> parameters);

  static std::size_t parameter_count(const SubsystemLayout& layout, const IndexSet& measured);

  void set(std::size_t subsystem, LocalBasis basis);

  const IndexSet& measured() const noexcept { return measured_; }
  const std::vector<LocalBasis>& bases() const noexcept { return bases_; }
  const LocalBasis& basis_for(std::size_t subsystem) const;
  bool contains(std::size_t subsystem) const;
  bool empty() const noexcept { return measured_.empty(); }

  std::vector<double> parameters() const;

  /// Throws BasisDimensionMismatch if an entry does not fit `layout`.
  void check_against(const SubsystemLayout& layout) const;

  /// Kronecker product of the local unitaries, identity on unmeasured
  /// subsystems.
  Matrix full_unitary(const SubsystemLayout& layout) const;

  bool same_projectors(const LocalBasisSet& other, double tol = 1e-6) const;

 private:
  IndexSet measured_;
  std::vector<LocalBasis> bases_;
};

}  // namespace qcorr
