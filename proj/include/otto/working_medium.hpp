#pragma once

// Coupled spin-pair working medium: cycle parameters, the (E, L, C, D, 1)
// state vector and reconstruction of the 4x4 density matrix in the
// instantaneous energy basis.
//
// Units: hbar = k_B = 1. Entropies use the natural logarithm.

#include <Eigen/Core>

#include <array>
#include <complex>

namespace otto {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

/// Time fractions of the four strokes. Order follows the parameter listing
/// (expansion, cold isochore, compression, hot isochore).
struct Fractions {
  double hc = 0.0;  // expansion adiabat, omega_hot -> omega_cold
  double c = 0.0;   // cold isochore
  double ch = 0.0;  // compression adiabat, omega_cold -> omega_hot
  double h = 0.0;   // hot isochore

  double sum() const noexcept { return hc + c + ch + h; }
};

/// All physical and protocol constants of one Otto cycle.
struct CycleParams {
  double j_coupling = 0.0;
  double t_hot = 0.0;
  double t_cold = 0.0;
  double omega_hot = 0.0;
  double omega_cold = 0.0;
  double k_down_hot = 0.0;   // downward (emission) rate on the hot bath
  double k_down_cold = 0.0;  // downward (emission) rate on the cold bath
  double tau_cycle = 0.0;
  Fractions fractions;
  /// Zero L and C at every stroke boundary (dephasing switch).
  bool dephase_at_boundaries = false;

  /// Throws DomainError naming the first violated invariant. Rates may be
  /// zero (bath decoupled); every other quantity must be strictly positive.
  void validate() const;

  double energy_scale_hot() const;
  double energy_scale_cold() const;

  /// Omega_c / Omega_h < T_c / T_h, necessary for refrigeration (the Otto
  /// coefficient of performance cannot exceed the Carnot value).
  bool refrigerator_condition() const;

  double duration_cold() const noexcept { return tau_cycle * fractions.c; }
  double duration_compression() const noexcept { return tau_cycle * fractions.ch; }
  double duration_hot() const noexcept { return tau_cycle * fractions.h; }
  double duration_expansion() const noexcept { return tau_cycle * fractions.hc; }

  CycleParams with_tau(double tau) const {
    CycleParams p = *this;
    p.tau_cycle = tau;
    return p;
  }
};

/// Omega = sqrt(omega^2 + J^2), the instantaneous energy scale.
double energy_scale(double omega, double j_coupling);

/// Parameter family of the sudden-refrigerator study, at cycle time `tau`
/// (default: the reference cycle b). Fractions are normalized to sum to 1.
CycleParams paper_family(double tau = 0.96527);

/// Expectation values of (H, L, C, D); the identity coefficient is fixed to 1.
struct StateVector {
  double e_val = 0.0;
  double l_val = 0.0;
  double c_val = 0.0;
  double d_val = 0.0;

  static constexpr double unit = 1.0;

  Vec5 to_vector() const {
    Vec5 v;
    v << e_val, l_val, c_val, d_val, unit;
    return v;
  }

  /// Reads a homogeneous 5-vector. The last component must equal 1 to
  /// within 1e-9 and is then dropped.
  static StateVector from_vector(const Vec5& v);

  static StateVector maximally_mixed() { return {}; }
};

/// Equilibrium state of the spectrum {-Omega, 0, 0, Omega} at temperature T.
StateVector gibbs_state(double energy_scale, double temperature);

/// 4x4 density matrix in the instantaneous energy basis with the sparsity
/// pattern of the coupled spin pair: diagonal plus the (1,4)/(4,1) corner.
class DensityMatrix {
 public:
  using Matrix = Eigen::Matrix4cd;

  const Matrix& matrix() const noexcept { return rho_; }
  std::complex<double> operator()(int i, int j) const { return rho_(i, j); }

  /// Copy with the corner coherences removed.
  DensityMatrix energy_diagonal() const;

  /// Eigenvalues from the block structure: the two middle diagonal entries
  /// and the eigenvalues of the 2x2 corner block. Ascending.
  std::array<double, 4> eigenvalues() const;

  /// Eigenvalues from a general Hermitian eigensolver. Ascending.
  std::array<double, 4> eigenvalues_general() const;

  double trace() const { return rho_.trace().real(); }

 private:
  friend DensityMatrix reconstruct_density(const StateVector&, double);
  explicit DensityMatrix(const Matrix& m) : rho_(m) {}
  Matrix rho_;
};

/// Builds the energy-basis density matrix. Throws DomainError on non-finite
/// input or a non-positive energy scale.
DensityMatrix reconstruct_density(const StateVector& s, double energy_scale);

/// Inverse of reconstruct_density: reads (E, L, C, D) back off the entries.
StateVector extract_state(const DensityMatrix& rho, double energy_scale);

/// -sum lambda ln lambda. Eigenvalues within 1e-10 of [0,1] are clipped;
/// anything below -1e-10 raises PositivityError.
double von_neumann_entropy(const DensityMatrix& rho);

/// Von Neumann entropy of the energy-diagonal part.
double energy_entropy(const DensityMatrix& rho);

/// (L^2 + C^2) / Omega^2.
double coherence_measure(const StateVector& s, double energy_scale);

/// tr{(rho - rho_ed)^2}, the matrix-side squared distance from the diagonal.
double coherence_distance(const DensityMatrix& rho);

/// Ratio coherence_measure / coherence_distance for the energy-basis
/// reconstruction; fixed by the 1/4 and 2/Omega bookkeeping of the corner.
inline constexpr double kCoherenceDistanceFactor = 2.0;

}  // namespace otto
