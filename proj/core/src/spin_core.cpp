#include "toptrap/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "toptrap/errors.hpp"

namespace toptrap {

namespace {

constexpr double kDegenerateRel = 1e-12;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be finite");
  }
}

Spinor normalize_with_phase(Spinor v) {
  const double n = norm(v);
  const int lead = std::abs(v[0]) >= std::abs(v[1]) ? 0 : 1;
  // Rotate so the leading component is real and non-negative.
  const Complex phase = std::abs(v[lead]) > 0.0 ? std::conj(v[lead]) / std::abs(v[lead]) : Complex{1.0};
  for (auto& c : v) c = c * phase / n;
  v[lead] = Complex{std::abs(v[lead]), 0.0};
  return v;
}

}  // namespace

DriveParams::DriveParams(double omega0, double omega, double theta)
    : omega0_(omega0), omega_(omega), theta_(theta) {
  require_finite(omega0, "omega0");
  require_finite(omega, "omega");
  require_finite(theta, "theta");
  if (omega0 <= 0.0) throw DomainError("omega0 must be > 0");
  if (omega < 0.0) throw DomainError("omega must be >= 0");
  if (theta < 0.0 || theta > std::numbers::pi) throw DomainError("theta out of [0, pi]");
}

double DriveParams::detuning() const noexcept { return omega0_ - omega_ * std::cos(theta_); }

double DriveParams::coupling() const noexcept { return omega_ * std::sin(theta_); }

double DriveParams::omega_bar() const noexcept { return std::hypot(detuning(), coupling()); }

bool DriveParams::degenerate() const noexcept {
  return omega_bar() < kDegenerateRel * std::max(omega0_, omega_);
}

ComplexMatrix2 ComplexMatrix2::identity() noexcept {
  ComplexMatrix2 r;
  r(0, 0) = 1.0;
  r(1, 1) = 1.0;
  return r;
}

ComplexMatrix2 ComplexMatrix2::adjoint() const noexcept {
  ComplexMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = std::conj((*this)(j, i));
  return r;
}

Complex ComplexMatrix2::trace() const noexcept { return m[0] + m[3]; }

Complex ComplexMatrix2::determinant() const noexcept { return m[0] * m[3] - m[1] * m[2]; }

double ComplexMatrix2::norm() const noexcept {
  double s = 0.0;
  for (const auto& c : m) s += std::norm(c);
  return std::sqrt(s);
}

ComplexMatrix2 operator*(const ComplexMatrix2& a, const ComplexMatrix2& b) noexcept {
  ComplexMatrix2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
  return r;
}

ComplexMatrix2 operator+(const ComplexMatrix2& a, const ComplexMatrix2& b) noexcept {
  ComplexMatrix2 r;
  for (std::size_t k = 0; k < 4; ++k) r.m[k] = a.m[k] + b.m[k];
  return r;
}

ComplexMatrix2 operator-(const ComplexMatrix2& a, const ComplexMatrix2& b) noexcept {
  ComplexMatrix2 r;
  for (std::size_t k = 0; k < 4; ++k) r.m[k] = a.m[k] - b.m[k];
  return r;
}

ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& a) noexcept {
  ComplexMatrix2 r;
  for (std::size_t k = 0; k < 4; ++k) r.m[k] = s * a.m[k];
  return r;
}

Spinor operator*(const ComplexMatrix2& a, const Spinor& v) noexcept {
  return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
}

Complex inner(const Spinor& a, const Spinor& b) noexcept {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

double norm(const Spinor& v) noexcept { return std::hypot(std::abs(v[0]), std::abs(v[1])); }

ComplexMatrix2 hamiltonian_at(const DriveParams& p, double t) {
  require_finite(t, "t");
  const double half = 0.5 * p.omega0();
  const double c = std::cos(p.theta());
  const double s = std::sin(p.theta());
  const Complex phase = std::polar(1.0, p.omega() * t);
  ComplexMatrix2 h;
  h(0, 0) = half * c;
  h(0, 1) = half * s * std::conj(phase);
  h(1, 0) = half * s * phase;
  h(1, 1) = -half * c;
  return h;
}

EigenPair diagonalize_hermitian(const ComplexMatrix2& h) {
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const Complex b = h(0, 1);
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::hypot(half, std::abs(b));

  EigenPair e;
  e.value_plus = mean + r;
  e.value_minus = mean - r;
  if (r == 0.0) {
    e.vec_plus = {Complex{1.0}, Complex{0.0}};
    e.vec_minus = {Complex{0.0}, Complex{1.0}};
    return e;
  }
  // Pick the null-space representative with the larger norm for each root.
  if (half >= 0.0) {
    e.vec_plus = {Complex{r + half}, std::conj(b)};
    e.vec_minus = {b, Complex{-(r + half)}};
  } else {
    e.vec_plus = {b, Complex{r - half}};
    e.vec_minus = {Complex{half - r}, std::conj(b)};
  }
  e.vec_plus = normalize_with_phase(e.vec_plus);
  e.vec_minus = normalize_with_phase(e.vec_minus);
  return e;
}

EigenPair eigensystem_at(const DriveParams& p, double t) {
  return diagonalize_hermitian(hamiltonian_at(p, t));
}

double adiabaticity_parameter(const DriveParams& p) noexcept {
  return p.omega() / (2.0 * p.omega0()) * std::sin(p.theta());
}

double adiabaticity_matrix_element(const DriveParams& p, double t, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be > 0");
  const ComplexMatrix2 h_dot =
      Complex{1.0 / (2.0 * dt)} * (hamiltonian_at(p, t + dt) - hamiltonian_at(p, t - dt));
  const EigenPair e = eigensystem_at(p, t);
  const double gap = e.value_plus - e.value_minus;
  return std::abs(inner(e.vec_minus, h_dot * e.vec_plus)) / (gap * gap);
}

double default_fd_step(const DriveParams& p) noexcept {
  return 1e-6 * 2.0 * std::numbers::pi / std::max(p.omega(), p.omega0());
}

double adiabaticity_matrix_element(const DriveParams& p, double t) {
  return adiabaticity_matrix_element(p, t, default_fd_step(p));
}

}  // namespace toptrap
