#include "toptrap/closed_form.hpp"

#include <cmath>
#include <numbers>

#include "toptrap/errors.hpp"

namespace toptrap {

namespace {

void require_time(double t) {
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  if (t < 0.0) throw DomainError("t must be >= 0");
}

}  // namespace

SpinAmplitudes amplitudes_at(const DriveParams& p, double t) {
  require_time(t);
  if (p.degenerate()) return {};
  const double wb = p.omega_bar();
  const double phase = 0.5 * wb * t;
  const double s = std::sin(phase);
  return {Complex{std::cos(phase), p.detuning() / wb * s}, Complex{0.0, p.coupling() / wb * s}};
}

double survival_probability(const DriveParams& p, double t) {
  require_time(t);
  // 1 - transition keeps the result exactly 1 when the coupling vanishes.
  return 1.0 - transition_probability(p, t);
}

double transition_probability(const DriveParams& p, double t) {
  require_time(t);
  if (p.degenerate()) return 0.0;
  const double wb = p.omega_bar();
  const double s = std::sin(0.5 * wb * t);
  const double r = p.coupling() / wb;
  return r * r * s * s;
}

double resurrection_tau(double x, double theta) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError("x = omega0/omega must be finite and >= 0");
  if (!std::isfinite(theta)) throw DomainError("theta must be finite");
  const double d = std::hypot(1.0 - x * std::cos(theta), x * std::sin(theta));
  if (d < 1e-12 * std::max(1.0, x)) {
    throw DomainError("resurrection undefined: no flip occurs");
  }
  return 1.0 / d;
}

ResurrectionPoint resurrection_time(const DriveParams& p) {
  if (p.omega() == 0.0) throw DomainError("resurrection undefined: omega = 0");
  if (p.degenerate()) throw DomainError("resurrection undefined: no flip occurs");
  const double x = p.omega0() / p.omega();
  return {x, resurrection_tau(x, p.theta()), p.theta()};
}

double resurrection_period(const DriveParams& p) {
  if (p.degenerate()) throw DomainError("resurrection undefined: no flip occurs");
  return 2.0 * std::numbers::pi / p.omega_bar();
}

std::optional<TauExtremum> tau_extremum(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta > std::numbers::pi) {
    throw DomainError("tau_extremum requires theta in (0, pi]");
  }
  if (theta > 0.5 * std::numbers::pi) return std::nullopt;
  return TauExtremum{std::cos(theta), 1.0 / std::sin(theta)};
}

}  // namespace toptrap
