#pragma once

#include <limits>
#include <vector>

#include "qcorr/basis.hpp"
#include "qcorr/density_matrix.hpp"

namespace qcorr {

/// Value returned by relative_entropy when supp(x) is not inside supp(y).
inline constexpr double kInfinite = std::numeric_limits<double>::infinity();

inline bool is_infinite(double v) { return v == kInfinite; }

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`, kept subsystems in their original order.
/// Throws EmptyKeepSet, IndexOutOfRange.
DensityMatrix partial_trace(const DensityMatrix& rho, const IndexSet& keep);

/// Single-subsystem marginals in subsystem order.
std::vector<DensityMatrix> marginals(const DensityMatrix& rho);

/// Tensor product of all single-subsystem marginals.
DensityMatrix marginal_product(const DensityMatrix& rho);

/// von Neumann entropy in bits.
double entropy(const DensityMatrix& rho);

/// S(x||y) in bits, evaluated in the eigenbasis of y. Returns kInfinite on
/// support violation. Throws DimensionMismatch for different layouts.
double relative_entropy(const DensityMatrix& x, const DensityMatrix& y);

/// sum_n S(rho_n) - S(rho); the total mutual information for N > 2.
double mutual_information(const DensityMatrix& rho);

/// Rank-one projective dephasing on the subsystems covered by `basis`.
DensityMatrix dephase(const DensityMatrix& rho, const LocalBasisSet& basis);

/// Entropy of dephase(rho, basis) without rotating back to the lab frame.
double dephased_entropy(const DensityMatrix& rho, const LocalBasisSet& basis);

/// op acting on `subsystems` (in order), identity elsewhere.
Matrix embed(const Matrix& op, const SubsystemLayout& layout, const IndexSet& subsystems);

/// Trace distance 1/2 ||a - b||_1.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qcorr
