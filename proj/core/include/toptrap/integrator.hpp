#pragma once

// Numerical oracles for the closed-form solution.
//
// evolve_instantaneous_basis integrates the amplitude equations on the
// co-rotating eigenbasis |+-(t)> = exp(-i phi(t) sz/2) |+-(0)>,
//
//   d alpha/dt = (i/2) [ D alpha + phidot sin(th) beta ]
//   d beta/dt  = (i/2) [ phidot sin(th) alpha - D beta ],   D = omega0 - phidot cos(th)
//
// whose exact solution is amplitudes_at. evolve_lab_frame integrates
// i dpsi/dt = H(t) psi in the fixed basis and projects on the numerically
// diagonalized |+-(t)>. rotating_frame_propagator gives U(t) in closed form.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "toptrap/spin_core.hpp"

namespace toptrap {

enum class StepMethod {
  kAdaptive,  ///< Dormand-Prince 5(4) with local error control
  kFixedRk4,  ///< classical 4th order, step = max_step * reference period
};

struct IntegratorSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  /// Largest step as a fraction of min(2 pi/omega, 2 pi/omega0).
  double max_step = 0.1;
  StepMethod method = StepMethod::kAdaptive;

  /// Throws DomainError unless tolerances > 0 and max_step in (0, 1].
  void validate() const;
};

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> survival;
  std::vector<double> transition;
  /// |alpha|^2 + |beta|^2 of the integrated state, per sample.
  std::vector<double> norm;
  std::string method;
};

/// Right-hand side dy/dt = f(t, y) for a two-component complex state.
using SpinorRhs = std::function<Spinor(double, const Spinor&)>;

struct SpinorTrajectory {
  std::vector<Spinor> states;  ///< one per requested time
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

/// Integrates y' = f(t, y) from t = 0, y(0) = y0, returning y at every time
/// of `times` (ascending, non-negative). Adaptive steps are clipped so each
/// requested time is hit exactly. `period` is the reference timescale that
/// max_step is a fraction of. Throws IntegrationError on step underflow.
SpinorTrajectory integrate_spinor(const SpinorRhs& f, const Spinor& y0, std::span<const double> times,
                                  double period, const IntegratorSettings& s);

TimeSeries evolve_instantaneous_basis(const DriveParams& p, std::span<const double> times,
                                      const IntegratorSettings& s = {});

/// Amplitudes (alpha, beta) from the instantaneous-basis integration.
std::vector<Spinor> instantaneous_basis_amplitudes(const DriveParams& p, std::span<const double> times,
                                                   const IntegratorSettings& s = {});

TimeSeries evolve_lab_frame(const DriveParams& p, std::span<const double> times,
                            const IntegratorSettings& s = {});

/// Lab-frame propagator U(t) = exp(-i omega t sz/2) exp(-i H_rot t) with
/// the static rotating-frame Hamiltonian H_rot = H(0) - (omega/2) sz.
ComplexMatrix2 rotating_frame_propagator(const DriveParams& p, double t);

/// |<-(t)| U(t) |-(0)>|^2 using rotating_frame_propagator.
double propagator_survival(const DriveParams& p, double t);

/// Reference period min(2 pi/omega, 2 pi/omega0), ignoring omega = 0.
double reference_period(const DriveParams& p) noexcept;

/// Evenly spaced grid of `samples` points on [0, t_max].
std::vector<double> linear_grid(double t_max, std::size_t samples);

}  // namespace toptrap
