// tolerances.hpp
// Central numeric tolerances shared across the library.

#pragma once

namespace qtele::tol {

inline constexpr double hermitian   = 1e-10;  // max |M - M^dag| entrywise for Hermitian outputs
inline constexpr double unit_trace  = 1e-10;  // |tr(rho) - 1|
inline constexpr double psd_floor   = -1e-9;  // smallest admissible density-matrix eigenvalue
inline constexpr double state_norm  = 1e-10;  // | ||psi|| - 1 |
inline constexpr double kraus_sum   = 1e-10;  // trace-preservation sum rule
inline constexpr double herm_input  = 1e-8;   // eigensolver input hermiticity check
inline constexpr double jacobi_off  = 1e-12;  // Jacobi off-diagonal norm convergence
inline constexpr double prob_cutoff = 1e-12;  // outcomes below this are treated as impossible
inline constexpr double angle_clamp = 1e-6;   // shrink applied to open angle intervals before optimizing
inline constexpr double tau_pattern = 1e-8;   // allowed off-pattern magnitude when reading tau-form states

}  // namespace qtele::tol
