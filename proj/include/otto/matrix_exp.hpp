#pragma once

// Real matrix exponentials for the small constant generators of the cycle
// strokes.

#include <Eigen/Core>

#include <optional>

namespace otto {

using MatX = Eigen::MatrixXd;

/// exp(A) via the complex eigendecomposition A = V diag(w) V^-1. Returns
/// nullopt when V is numerically singular (condition number >= max_condition)
/// or the result carries a non-negligible imaginary part.
std::optional<MatX> expm_eigen(const MatX& a, double max_condition = 1e8);

/// exp(A) via scaling and squaring with a Pade approximant.
MatX expm_pade(const MatX& a);

/// Eigendecomposition when well conditioned, Pade otherwise.
MatX expm(const MatX& a);

template <typename Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime> expm(
    const Eigen::MatrixBase<Derived>& a) {
  return expm(MatX(a));
}

}  // namespace otto
