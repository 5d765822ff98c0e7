#pragma once

// Two-level spin driven by a field of fixed magnitude rotating about z.
//
// Units: hbar = 1. omega0 is the Larmor angular frequency, so the
// Hamiltonian is
//
//   H(t) = (omega0/2) [[cos th,           e^{-i omega t} sin th],
//                      [e^{i omega t} sin th,       -cos th    ]]
//
// with eigenvalues +-omega0/2 for every t. The weak-field seeker is the
// lower state |-(t)>.
//
// Note on closed-form eigenvectors: the pair
//   |+> = (e^{-i w t/2} sin(th/2),  e^{i w t/2} cos(th/2))
//   |-> = (e^{i w t/2} sin(th/2), -e^{-i w t/2} cos(th/2))
// that is sometimes quoted for this Hamiltonian is not an eigenbasis for
// generic th (the first component of H|+> goes as sin(3 th/2)). The
// eigenvectors here come from direct diagonalization instead; see
// eigensystem_at for the phase convention.

#include <array>
#include <complex>

namespace toptrap {

using Complex = std::complex<double>;
using Spinor = std::array<Complex, 2>;

/// Reduced drive parameters (omega0, omega, theta).
///
/// Invariants: omega0 > 0, omega >= 0, theta in [0, pi], all finite.
/// Construction throws DomainError otherwise.
class DriveParams {
 public:
  DriveParams(double omega0, double omega, double theta);

  double omega0() const noexcept { return omega0_; }
  double omega() const noexcept { return omega_; }
  double theta() const noexcept { return theta_; }

  /// omega0 - omega cos(theta): the diagonal drift in the rotating frame.
  double detuning() const noexcept;
  /// omega sin(theta): the coupling between instantaneous eigenstates.
  double coupling() const noexcept;
  /// sqrt(omega0^2 + omega^2 - 2 omega0 omega cos(theta)), evaluated as
  /// hypot(detuning, coupling) so it stays accurate near omega0 = omega.
  double omega_bar() const noexcept;
  /// True when omega_bar vanishes up to 1e-12 * max(omega0, omega).
  bool degenerate() const noexcept;

 private:
  double omega0_;
  double omega_;
  double theta_;
};

/// Dense 2x2 complex matrix, row-major.
struct ComplexMatrix2 {
  std::array<Complex, 4> m{};

  static ComplexMatrix2 identity() noexcept;

  Complex& operator()(int row, int col) noexcept { return m[2 * row + col]; }
  const Complex& operator()(int row, int col) const noexcept { return m[2 * row + col]; }

  ComplexMatrix2 adjoint() const noexcept;
  Complex trace() const noexcept;
  Complex determinant() const noexcept;
  /// Frobenius norm.
  double norm() const noexcept;

  friend ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) noexcept;
  friend ComplexMatrix2 operator+(const ComplexMatrix2& a, const ComplexMatrix2& b) noexcept;
  friend ComplexMatrix2 operator-(const ComplexMatrix2& a, const ComplexMatrix2& b) noexcept;
  friend ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& a) noexcept;
  friend Spinor operator*(const ComplexMatrix2& a, const Spinor& v) noexcept;
};

/// <a|b> with the bra conjugated.
Complex inner(const Spinor& a, const Spinor& b) noexcept;
double norm(const Spinor& v) noexcept;

struct EigenPair {
  double value_plus = 0.0;
  double value_minus = 0.0;
  Spinor vec_plus{};
  Spinor vec_minus{};
};

/// H(t) of the rotating-field drive. Throws DomainError for non-finite t.
ComplexMatrix2 hamiltonian_at(const DriveParams& p, double t);

/// Eigen-decomposition of an arbitrary 2x2 Hermitian matrix.
///
/// Each eigenvector is normalized and rotated so that its component of
/// largest modulus is real and non-negative (first component on ties).
EigenPair diagonalize_hermitian(const ComplexMatrix2& h);

/// Instantaneous eigenbasis of hamiltonian_at(p, t).
EigenPair eigensystem_at(const DriveParams& p, double t);

/// (omega / (2 omega0)) sin(theta).
double adiabaticity_parameter(const DriveParams& p) noexcept;

/// |<-(t)| dH/dt |+(t)>| / (E+ - E-)^2 with dH/dt from a central
/// difference of step dt. Converges to adiabaticity_parameter(p) as
/// O(dt^2). Throws DomainError if dt <= 0 or is not finite.
double adiabaticity_matrix_element(const DriveParams& p, double t, double dt);

/// Same, with dt = 1e-6 * 2 pi / max(omega, omega0).
double adiabaticity_matrix_element(const DriveParams& p, double t);

double default_fd_step(const DriveParams& p) noexcept;

}  // namespace toptrap
