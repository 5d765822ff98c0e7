#pragma once

// TOP trap field and scales, SI units throughout:
//   B(x, y, z, t) = (A0 x + B0 cos wt, A0 y + B0 sin wt, -2 A0 z).
// Larmor frequency is |gamma| |B| in rad/s.

#include <limits>

#include "toptrap/spin_core.hpp"

namespace toptrap {

/// Physical trap parameters. Construction throws DomainError unless
/// A0, B0, omega, mu, mass > 0 and gamma != 0 (all finite).
class TrapConfig {
 public:
  TrapConfig(double a0, double b0, double omega, double gamma, double mu, double mass);

  double a0() const noexcept { return a0_; }        ///< T/m
  double b0() const noexcept { return b0_; }        ///< T
  double omega() const noexcept { return omega_; }  ///< rad/s
  double gamma() const noexcept { return gamma_; }  ///< rad/(s T)
  double mu() const noexcept { return mu_; }        ///< J/T
  double mass() const noexcept { return mass_; }    ///< kg

 private:
  double a0_, b0_, omega_, gamma_, mu_, mass_;
};

struct FieldVector {
  double bx = 0.0;
  double by = 0.0;
  double bz = 0.0;

  double magnitude() const noexcept;
};

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct HierarchyReport {
  double omega_osc = 0.0;
  double omega = 0.0;
  double omega0_ref = 0.0;
  double ratio_low = 0.0;   ///< omega / omega_osc
  double ratio_high = 0.0;  ///< omega0_ref / omega
  double margin = 10.0;
  bool satisfied = false;
};

struct ConfinementVerdict {
  bool confined = false;
  double escape_time = 0.0;
  /// 2 pi / omega_bar; infinity when no flip ever occurs.
  double resurrection_time = std::numeric_limits<double>::infinity();
  /// escape_time / resurrection_time.
  double ratio = 0.0;
};

FieldVector field_at(const TrapConfig& c, double x, double y, double z, double t);

/// Instantaneous field zero, (-R0 cos wt, -R0 sin wt, 0).
Position zero_locus(const TrapConfig& c, double t);

/// R0 = B0 / A0.
double circle_of_death_radius(const TrapConfig& c) noexcept;

/// k = |mu| A0^2 / (2 B0).
double spring_constant(const TrapConfig& c) noexcept;

/// omega_osc = sqrt(k / m).
double oscillation_frequency(const TrapConfig& c) noexcept;

/// |gamma| B0.
double reference_larmor(const TrapConfig& c) noexcept;

/// |gamma| |B| at (x, y, z). Throws DomainError at a field zero.
double larmor_at(const TrapConfig& c, double x, double y, double t, double z = 0.0);

/// arccos(Bz / |B|); pi/2 everywhere in the z = 0 plane. Throws at a field zero.
double field_angle_at(const TrapConfig& c, double x, double y, double t, double z = 0.0);

/// Checks omega >= margin * omega_osc and omega0(B0) >= margin * omega.
/// Throws DomainError for margin < 1.
HierarchyReport hierarchy_check(const TrapConfig& c, double margin = 10.0);

/// Confined iff escape_time > 2 pi / omega_bar. Throws for escape_time <= 0.
ConfinementVerdict confinement_advisor(const DriveParams& p, double escape_time);

}  // namespace toptrap
