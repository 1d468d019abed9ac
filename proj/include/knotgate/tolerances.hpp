#pragma once

namespace knotgate::tol {

// input validation
inline constexpr double norm = 1e-9;  // |q| - 1 for quaternions fed to quat_to_su2
inline constexpr double herm = 1e-9;  // max-entry defect of H - H^dagger

// output guarantees
inline constexpr double unitary = 1e-10;

// representation validity: max relator residual
inline constexpr double rep = 1e-10;

// holonomy numerics
inline constexpr double gap_min = 1e-6;
inline constexpr double delta = 1e-4;

} // namespace knotgate::tol
