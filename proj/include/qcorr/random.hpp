#pragma once

#include <cstdint>
#include <random>

#include "qcorr/basis.hpp"
#include "qcorr/density_matrix.hpp"

namespace qcorr {

/// Seeded generator whose output is fixed by the seed alone: the engine is
/// mt19937_64 and the conversions to uniform and normal deviates are done
/// here rather than by the standard distributions, which vary between
/// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();   // standard normal, Box-Muller
  cplx complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
Matrix random_unitary(int dim, Rng& rng);

/// U_1 (x) ... (x) U_N with independent Haar-random factors.
Matrix random_local_unitary(const SubsystemLayout& layout, Rng& rng);

LocalBasisSet random_basis_set(const SubsystemLayout& layout, const IndexSet& measured, Rng& rng);

/// Partial trace of a Gaussian pure state on C^D (x) C^rank.
DensityMatrix random_state(const SubsystemLayout& layout, int rank, Rng& rng);

DensityMatrix random_product_state(const SubsystemLayout& layout, Rng& rng);

/// sum p_k |k><k| in a product basis; `random_bases` rotates every
/// subsystem by a Haar unitary, otherwise the basis is computational.
DensityMatrix random_classical_state(const SubsystemLayout& layout, Rng& rng, bool random_bases = true);

/// sum_i p_i |i><i| (x) rho_i with the classical flag on subsystem 0 in a
/// random basis and random mixed conditional states on the rest.
DensityMatrix random_classical_quantum_state(const SubsystemLayout& layout, Rng& rng);

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u);

}  // namespace qcorr
