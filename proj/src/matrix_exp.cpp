#include "otto/matrix_exp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "otto/errors.hpp"

namespace otto {

std::optional<MatX> expm_eigen(const MatX& a, double max_condition) {
  if (!a.allFinite()) throw NumericError("matrix exponential of a non-finite matrix");
  Eigen::EigenSolver<MatX> solver(a, true);
  if (solver.info() != Eigen::Success) return std::nullopt;
  const Eigen::MatrixXcd v = solver.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > 0.0) || sv(0) / smallest >= max_condition) return std::nullopt;

  const Eigen::VectorXcd w = solver.eigenvalues().array().exp();
  const Eigen::MatrixXcd result = v * w.asDiagonal() * v.inverse();
  const double scale = std::max(1.0, result.cwiseAbs().maxCoeff());
  if (result.imag().cwiseAbs().maxCoeff() > 1e-10 * scale) return std::nullopt;
  return MatX(result.real());
}

MatX expm_pade(const MatX& a) {
  if (!a.allFinite()) throw NumericError("matrix exponential of a non-finite matrix");
  MatX result = a.exp();
  if (!result.allFinite()) throw NumericError("Pade matrix exponential overflowed");
  return result;
}

MatX expm(const MatX& a) {
  if (auto viaEigen = expm_eigen(a)) return *viaEigen;
  return expm_pade(a);
}

}  // namespace otto
