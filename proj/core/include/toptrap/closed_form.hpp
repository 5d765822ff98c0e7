#pragma once

// Exact solution of the driven two-level problem started in the
// weak-field-seeking state: alpha(0) = 1, beta(0) = 0.

#include <optional>

#include "toptrap/spin_core.hpp"

namespace toptrap {

/// Amplitudes on the instantaneous eigenbasis: alpha on |->, beta on |+>.
struct SpinAmplitudes {
  Complex alpha{1.0};
  Complex beta{0.0};
};

/// tau is the resurrection time 2 pi / omega_bar in units of 2 pi / omega,
/// as a function of x = omega0 / omega.
struct ResurrectionPoint {
  double x = 0.0;
  double tau = 1.0;
  double theta = 0.0;
};

struct TauExtremum {
  double x_star = 0.0;
  double tau_max = 1.0;
};

/// alpha = cos(wb t/2) + i (detuning/wb) sin(wb t/2),
/// beta  = i (coupling/wb) sin(wb t/2).
/// Returns (1, 0) at the degenerate point omega_bar = 0. Throws for t < 0.
SpinAmplitudes amplitudes_at(const DriveParams& p, double t);

/// |alpha(t)|^2
double survival_probability(const DriveParams& p, double t);

/// |beta(t)|^2
double transition_probability(const DriveParams& p, double t);

/// 1/sqrt(1 + x^2 - 2 x cos(theta)); throws DomainError where it diverges
/// (x = 1, theta = 0) or for x < 0.
double resurrection_tau(double x, double theta);

/// Throws DomainError for omega = 0 or omega_bar = 0 (no flip occurs).
ResurrectionPoint resurrection_time(const DriveParams& p);

/// Resurrection time in seconds, 2 pi / omega_bar.
double resurrection_period(const DriveParams& p);

/// Interior maximum of tau(x) at fixed theta: (cos th, 1/sin th) for
/// theta in (0, pi/2], none for theta in (pi/2, pi] where tau is monotone.
std::optional<TauExtremum> tau_extremum(double theta);

}  // namespace toptrap
