#include "toptrap/trap_geometry.hpp"

#include <cmath>
#include <string>

#include "toptrap/closed_form.hpp"
#include "toptrap/errors.hpp"

namespace toptrap {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) throw DomainError(std::string(name) + " must be finite and > 0");
}

// |B| and the scale of the terms that cancel to produce it.
struct FieldSample {
  FieldVector b;
  double scale;
};

FieldSample sample(const TrapConfig& c, double x, double y, double z, double t) {
  const double scale = c.b0() + c.a0() * std::hypot(x, y, z);
  return {field_at(c, x, y, z, t), scale};
}

FieldVector nonzero_field(const TrapConfig& c, double x, double y, double z, double t) {
  const FieldSample s = sample(c, x, y, z, t);
  if (s.b.magnitude() <= 16.0 * std::numeric_limits<double>::epsilon() * s.scale) {
    throw DomainError("Larmor frequency undefined at field zero");
  }
  return s.b;
}

}  // namespace

TrapConfig::TrapConfig(double a0, double b0, double omega, double gamma, double mu, double mass)
    : a0_(a0), b0_(b0), omega_(omega), gamma_(gamma), mu_(mu), mass_(mass) {
  require_positive(a0, "A0");
  require_positive(b0, "B0");
  require_positive(omega, "omega");
  require_positive(mu, "mu");
  require_positive(mass, "mass");
  if (!std::isfinite(gamma) || gamma == 0.0) throw DomainError("gamma must be finite and non-zero");
}

double FieldVector::magnitude() const noexcept { return std::hypot(bx, by, bz); }

FieldVector field_at(const TrapConfig& c, double x, double y, double z, double t) {
  const double wt = c.omega() * t;
  return {c.a0() * x + c.b0() * std::cos(wt), c.a0() * y + c.b0() * std::sin(wt), -2.0 * c.a0() * z};
}

Position zero_locus(const TrapConfig& c, double t) {
  const double r0 = circle_of_death_radius(c);
  const double wt = c.omega() * t;
  return {-r0 * std::cos(wt), -r0 * std::sin(wt), 0.0};
}

double circle_of_death_radius(const TrapConfig& c) noexcept { return c.b0() / c.a0(); }

double spring_constant(const TrapConfig& c) noexcept {
  return std::abs(c.mu()) * c.a0() * c.a0() / (2.0 * c.b0());
}

double oscillation_frequency(const TrapConfig& c) noexcept { return std::sqrt(spring_constant(c) / c.mass()); }

double reference_larmor(const TrapConfig& c) noexcept { return std::abs(c.gamma()) * c.b0(); }

double larmor_at(const TrapConfig& c, double x, double y, double t, double z) {
  return std::abs(c.gamma()) * nonzero_field(c, x, y, z, t).magnitude();
}

double field_angle_at(const TrapConfig& c, double x, double y, double t, double z) {
  const FieldVector b = nonzero_field(c, x, y, z, t);
  return std::acos(std::clamp(b.bz / b.magnitude(), -1.0, 1.0));
}

HierarchyReport hierarchy_check(const TrapConfig& c, double margin) {
  if (!std::isfinite(margin) || margin < 1.0) throw DomainError("margin must be >= 1");
  HierarchyReport r;
  r.omega_osc = oscillation_frequency(c);
  r.omega = c.omega();
  r.omega0_ref = reference_larmor(c);
  r.ratio_low = r.omega / r.omega_osc;
  r.ratio_high = r.omega0_ref / r.omega;
  r.margin = margin;
  r.satisfied = r.omega >= margin * r.omega_osc && r.omega0_ref >= margin * r.omega;
  return r;
}

ConfinementVerdict confinement_advisor(const DriveParams& p, double escape_time) {
  require_positive(escape_time, "escape_time");
  ConfinementVerdict v;
  v.escape_time = escape_time;
  if (p.degenerate() || p.coupling() == 0.0) {
    // Nothing ever flips; resurrection time is moot.
    v.confined = true;
    v.ratio = 0.0;
    return v;
  }
  v.resurrection_time = resurrection_period(p);
  v.ratio = escape_time / v.resurrection_time;
  v.confined = escape_time > v.resurrection_time;
  return v;
}

}  // namespace toptrap
