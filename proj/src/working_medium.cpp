#include "otto/working_medium.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "otto/errors.hpp"

namespace otto {
namespace {

constexpr double kPositivitySlack = 1e-10;

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and > 0");
  }
}

void require_non_negative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw DomainError(std::string(name) + " must be finite and >= 0");
  }
}

void require_fraction(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0 || value >= 1.0) {
    throw DomainError(std::string("fractions.") + name + " must lie in (0, 1)");
  }
}

double entropy_of(const std::array<double, 4>& eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -kPositivitySlack) {
      throw PositivityError("density matrix has a negative eigenvalue", lambda);
    }
    if (lambda > 1.0 + kPositivitySlack) {
      throw PositivityError("density matrix has an eigenvalue above 1", lambda);
    }
    lambda = std::clamp(lambda, 0.0, 1.0);
    if (lambda > 0.0) s -= lambda * std::log(lambda);
  }
  return s;
}

}  // namespace

double energy_scale(double omega, double j_coupling) {
  return std::hypot(omega, j_coupling);
}

void CycleParams::validate() const {
  require_positive(j_coupling, "j_coupling");
  require_positive(t_hot, "t_hot");
  require_positive(t_cold, "t_cold");
  require_positive(omega_cold, "omega_cold");
  require_positive(omega_hot, "omega_hot");
  if (!(omega_hot > omega_cold)) {
    throw DomainError("omega_hot must exceed omega_cold");
  }
  require_non_negative(k_down_hot, "k_down_hot");
  require_non_negative(k_down_cold, "k_down_cold");
  require_positive(tau_cycle, "tau_cycle");
  require_fraction(fractions.hc, "hc");
  require_fraction(fractions.c, "c");
  require_fraction(fractions.ch, "ch");
  require_fraction(fractions.h, "h");
  if (std::abs(fractions.sum() - 1.0) > 1e-9) {
    throw DomainError("fractions must sum to 1 within 1e-9");
  }
}

double CycleParams::energy_scale_hot() const { return energy_scale(omega_hot, j_coupling); }
double CycleParams::energy_scale_cold() const { return energy_scale(omega_cold, j_coupling); }

bool CycleParams::refrigerator_condition() const {
  return energy_scale_cold() / energy_scale_hot() < t_cold / t_hot;
}

CycleParams paper_family(double tau) {
  CycleParams p;
  p.j_coupling = 1.25;
  p.t_hot = 4.0;
  p.t_cold = 3.6;
  p.omega_cold = 6.5;
  p.omega_hot = 11.0;
  p.k_down_hot = 0.36;
  p.k_down_cold = 0.0656;
  p.tau_cycle = tau;
  // Printed allocation sums to 1.000006; rescale so the fractions partition
  // the period exactly.
  const Fractions printed{0.48277, 0.0340, 0.48277, 0.000466};
  const double total = printed.sum();
  p.fractions = {printed.hc / total, printed.c / total, printed.ch / total, printed.h / total};
  return p;
}

StateVector StateVector::from_vector(const Vec5& v) {
  if (!v.allFinite()) throw DomainError("state vector has non-finite entries");
  if (std::abs(v(4) - 1.0) > 1e-9) {
    throw DomainError("identity coefficient of a state vector must be 1");
  }
  return {v(0), v(1), v(2), v(3)};
}

StateVector gibbs_state(double energy_scale, double temperature) {
  require_positive(energy_scale, "energy_scale");
  require_positive(temperature, "temperature");
  // tanh(x/2) with x = Omega/T; populations e^{x}, 1, 1, e^{-x}.
  const double t = std::tanh(0.5 * energy_scale / temperature);
  return {-energy_scale * t, 0.0, 0.0, energy_scale * t * t};
}

DensityMatrix reconstruct_density(const StateVector& s, double omega) {
  if (!std::isfinite(s.e_val) || !std::isfinite(s.l_val) || !std::isfinite(s.c_val) ||
      !std::isfinite(s.d_val)) {
    throw DomainError("state vector has non-finite entries");
  }
  require_positive(omega, "energy_scale");
  using cd = std::complex<double>;
  DensityMatrix::Matrix m = DensityMatrix::Matrix::Zero();
  m(0, 0) = 0.25 * (1.0 + (s.d_val - 2.0 * s.e_val) / omega);
  m(1, 1) = 0.25 * (1.0 - s.d_val / omega);
  m(2, 2) = m(1, 1);
  m(3, 3) = 0.25 * (1.0 + (s.d_val + 2.0 * s.e_val) / omega);
  m(0, 3) = 0.5 / omega * cd(s.l_val, s.c_val);
  m(3, 0) = std::conj(m(0, 3));
  return DensityMatrix(m);
}

StateVector extract_state(const DensityMatrix& rho, double omega) {
  require_positive(omega, "energy_scale");
  const double p1 = rho(0, 0).real();
  const double p4 = rho(3, 3).real();
  const std::complex<double> corner = rho(0, 3);
  StateVector s;
  s.e_val = omega * (p4 - p1);
  s.d_val = omega * (2.0 * (p1 + p4) - 1.0);
  s.l_val = 2.0 * omega * corner.real();
  s.c_val = 2.0 * omega * corner.imag();
  return s;
}

DensityMatrix DensityMatrix::energy_diagonal() const {
  Matrix m = rho_;
  m(0, 3) = 0.0;
  m(3, 0) = 0.0;
  return DensityMatrix(m);
}

std::array<double, 4> DensityMatrix::eigenvalues() const {
  const double a = rho_(0, 0).real();
  const double b = rho_(3, 3).real();
  const double mid = 0.5 * (a + b);
  const double radius = std::hypot(0.5 * (a - b), std::abs(rho_(0, 3)));
  std::array<double, 4> ev{mid - radius, rho_(1, 1).real(), rho_(2, 2).real(), mid + radius};
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::array<double, 4> DensityMatrix::eigenvalues_general() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver failed");
  }
  const Eigen::Vector4d ev = solver.eigenvalues();
  return {ev(0), ev(1), ev(2), ev(3)};
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of(rho.eigenvalues()); }

double energy_entropy(const DensityMatrix& rho) {
  return entropy_of(rho.energy_diagonal().eigenvalues());
}

double coherence_measure(const StateVector& s, double omega) {
  if (!std::isfinite(s.l_val) || !std::isfinite(s.c_val)) {
    throw DomainError("state vector has non-finite entries");
  }
  require_positive(omega, "energy_scale");
  return (s.l_val * s.l_val + s.c_val * s.c_val) / (omega * omega);
}

double coherence_distance(const DensityMatrix& rho) {
  const DensityMatrix::Matrix diff = rho.matrix() - rho.energy_diagonal().matrix();
  return (diff * diff).trace().real();
}

}  // namespace otto
