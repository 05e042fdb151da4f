#pragma once

#include <span>
#include <vector>

#include "qcorr/density_matrix.hpp"
#include "qcorr/optimizer.hpp"

namespace qcorr {

struct ProductTerm {
  double weight;
  std::vector<Matrix> factors;  // one local density matrix per subsystem
};

/// Explicit convex mixture of product states; doubles as the feasibility
/// certificate for a separable state.
class ProductDecomposition {
 public:
  ProductDecomposition(SubsystemLayout layout, std::vector<ProductTerm> terms);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const std::vector<ProductTerm>& terms() const noexcept { return terms_; }

  Matrix assemble() const;
  DensityMatrix state() const { return DensityMatrix::from_trusted(assemble(), layout_); }

  /// Largest violation of: weights >= 0 and summing to 1, factors Hermitian,
  /// positive and of unit trace.
  double certificate_error() const;

 private:
  SubsystemLayout layout_;
  std::vector<ProductTerm> terms_;
};

/// sum_k <k|rho|k> |k><k| over the product basis of `basis`, which must
/// cover every subsystem.
ProductDecomposition classical_decomposition(const DensityMatrix& rho, const LocalBasisSet& basis);

/// The marginal product of rho as a single term.
ProductDecomposition marginal_decomposition(const DensityMatrix& rho);

/// Mixture of `terms` products whose local factors are
///   sin^2(a) |v><v| / <v|v> + cos^2(a) 1/d,
/// with mixing weights softmax(logits). Per term the parameters are the
/// logit followed, per subsystem, by a and the real and imaginary parts of v.
class SeparableAnsatz {
 public:
  SeparableAnsatz(SubsystemLayout layout, int terms);

  int terms() const noexcept { return terms_; }
  std::size_t parameter_count() const noexcept { return static_cast<std::size_t>(terms_) * per_term_; }

  ProductDecomposition decode(std::span<const double> params) const;

  /// Spectrally expands the decomposition into pure product terms and keeps
  /// the `terms()` heaviest; unused slots get negligible maximally mixed terms.
  std::vector<double> encode(const ProductDecomposition& decomposition) const;

  /// S(rho||sigma(params)) in bits; writes the gradient when grad is nonempty.
  double objective(const DensityMatrix& rho, double rho_entropy_nats, std::span<const double> params,
                   std::span<double> grad) const;

 private:
  std::size_t factor_offset(std::size_t n) const { return offsets_[n]; }

  SubsystemLayout layout_;
  int terms_;
  std::size_t per_term_;
  std::vector<std::size_t> offsets_;
  std::vector<IndexSplit> splits_;
};

struct SeparableOptimum {
  double value;
  DensityMatrix sigma;
  ProductDecomposition certificate;
  bool feasible;  // value <= opt_tol
  OptimizerDiagnostics diagnostics;
};

/// Multi-start L-BFGS over the ansatz. Starts are the given seeds, the
/// dephasings of rho in its marginal eigenbases and in the computational
/// basis, the marginal product, and random mixtures. Unrefined seeds are
/// candidates too; among candidates within opt_tol of the best, the first in
/// that order is reported.
SeparableOptimum minimize_over_separable(const DensityMatrix& rho, const OptimizerSettings& settings,
                                         std::span<const ProductDecomposition> seeds = {});

}  // namespace qcorr
