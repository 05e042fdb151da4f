#pragma once

namespace qcorr::tol {

inline constexpr double herm = 1e-8;
inline constexpr double trace = 1e-8;
inline constexpr double psd = 1e-10;
inline constexpr double orth = 1e-10;
inline constexpr double support = 1e-12;

// Largest supported Hilbert-space dimension.
inline constexpr int max_total_dim = 64;

}  // namespace qcorr::tol
