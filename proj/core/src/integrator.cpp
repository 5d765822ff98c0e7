#include "toptrap/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "toptrap/closed_form.hpp"
#include "toptrap/errors.hpp"

namespace toptrap {

namespace {

using std::numbers::pi;

Spinor axpy(const Spinor& y, double h, std::initializer_list<std::pair<double, const Spinor*>> terms) {
  Spinor r = y;
  for (const auto& [c, k] : terms) {
    if (c == 0.0) continue;
    r[0] += h * c * (*k)[0];
    r[1] += h * c * (*k)[1];
  }
  return r;
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b*, the embedded 4th order error weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Dp5Step {
  Spinor y;
  Spinor f_end;  // FSAL
  double error;  // scaled RMS error, accept if <= 1
};

Dp5Step dp5_step(const SpinorRhs& f, double t, const Spinor& y, const Spinor& k1, double h,
                 const IntegratorSettings& s) {
  const Spinor k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
  const Spinor k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
  const Spinor k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const Spinor k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const Spinor k6 = f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
  const Spinor y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const Spinor k7 = f(t + h, y_new);
  const Spinor err = axpy(Spinor{}, h, {{e1, &k1}, {e3, &k3}, {e4, &k4}, {e5, &k5}, {e6, &k6}, {e7, &k7}});

  // Local tolerances are tightened so that the accumulated global error, not
  // just the per-step error, stays near rel_tol over hundreds of steps.
  constexpr double kLocalTighten = 1e-2;
  const double atol = kLocalTighten * s.abs_tol;
  const double rtol = kLocalTighten * s.rel_tol;
  double sum = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double scale_re = atol + rtol * std::max(std::abs(y[i].real()), std::abs(y_new[i].real()));
    const double scale_im = atol + rtol * std::max(std::abs(y[i].imag()), std::abs(y_new[i].imag()));
    const double er = err[i].real() / scale_re;
    const double ei = err[i].imag() / scale_im;
    sum += er * er + ei * ei;
  }
  return {y_new, k7, std::sqrt(sum / 4.0)};
}

Spinor rk4_step(const SpinorRhs& f, double t, const Spinor& y, double h) {
  const Spinor k1 = f(t, y);
  const Spinor k2 = f(t + 0.5 * h, axpy(y, h, {{0.5, &k1}}));
  const Spinor k3 = f(t + 0.5 * h, axpy(y, h, {{0.5, &k2}}));
  const Spinor k4 = f(t + h, axpy(y, h, {{1.0, &k3}}));
  return axpy(y, h, {{1.0 / 6, &k1}, {1.0 / 3, &k2}, {1.0 / 3, &k3}, {1.0 / 6, &k4}});
}

void validate_grid(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || times[i] < 0.0) throw DomainError("time grid must be finite and >= 0");
    if (i > 0 && times[i] < times[i - 1]) throw DomainError("time grid must be ascending");
  }
}

SpinorTrajectory integrate_adaptive(const SpinorRhs& f, const Spinor& y0, std::span<const double> times,
                                    double h_max, const IntegratorSettings& s) {
  SpinorTrajectory out;
  out.states.reserve(times.size());
  double t = 0.0;
  Spinor y = y0;
  Spinor k1 = f(t, y);
  double h = std::min(h_max, 0.01 * h_max / s.max_step);

  for (const double target : times) {
    while (t < target) {
      const double remaining = target - t;
      const bool clipped = h >= remaining;
      const double h_try = clipped ? remaining : h;
      const Dp5Step step = dp5_step(f, t, y, k1, h_try, s);
      if (!std::isfinite(step.error)) throw IntegrationError("non-finite error estimate", t);

      const double factor = std::clamp(0.9 * std::pow(std::max(step.error, 1e-10), -0.2), 0.2, 5.0);
      if (step.error <= 1.0) {
        t = clipped ? target : t + h_try;
        y = step.y;
        k1 = step.f_end;
        ++out.steps_accepted;
        // A clipped step says nothing about the sustainable step size.
        if (!clipped || h_try * factor < h) h = std::min(h_max, h_try * factor);
      } else {
        ++out.steps_rejected;
        h = h_try * std::min(factor, 0.9);
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t)) {
          throw IntegrationError("step size underflow", t);
        }
      }
    }
    out.states.push_back(y);
  }
  return out;
}

SpinorTrajectory integrate_fixed(const SpinorRhs& f, const Spinor& y0, std::span<const double> times,
                                 double h_fixed) {
  SpinorTrajectory out;
  out.states.reserve(times.size());
  double t = 0.0;
  Spinor y = y0;
  for (const double target : times) {
    // Uniform substeps no longer than h_fixed between consecutive outputs.
    const double span = target - t;
    if (span > 0.0) {
      const auto n = static_cast<std::size_t>(std::ceil(span / h_fixed - 1e-9));
      const double h = span / static_cast<double>(std::max<std::size_t>(n, 1));
      for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
        y = rk4_step(f, t + static_cast<double>(i) * h, y, h);
        ++out.steps_accepted;
      }
      t = target;
    }
    out.states.push_back(y);
  }
  return out;
}

}  // namespace

void IntegratorSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("integrator tolerances must be > 0");
  if (!(max_step > 0.0) || max_step > 1.0) throw DomainError("max_step must be in (0, 1]");
}

double reference_period(const DriveParams& p) noexcept {
  const double fastest = std::max(p.omega0(), p.omega());
  return 2.0 * pi / fastest;
}

std::vector<double> linear_grid(double t_max, std::size_t samples) {
  if (!std::isfinite(t_max) || t_max < 0.0) throw DomainError("t_max must be finite and >= 0");
  if (samples == 0) throw DomainError("samples must be >= 1");
  std::vector<double> g(samples, 0.0);
  if (samples == 1) {
    g[0] = t_max;
    return g;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    g[i] = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  }
  g.back() = t_max;
  return g;
}

SpinorTrajectory integrate_spinor(const SpinorRhs& f, const Spinor& y0, std::span<const double> times,
                                  double period, const IntegratorSettings& s) {
  s.validate();
  validate_grid(times);
  if (!(period > 0.0) || !std::isfinite(period)) throw DomainError("reference period must be > 0");
  const double h_max = s.max_step * period;
  if (s.method == StepMethod::kFixedRk4) return integrate_fixed(f, y0, times, h_max);
  return integrate_adaptive(f, y0, times, h_max, s);
}

std::vector<Spinor> instantaneous_basis_amplitudes(const DriveParams& p, std::span<const double> times,
                                                   const IntegratorSettings& s) {
  // phi(t) = omega t; phidot is kept explicit so the equations read as derived.
  const double phi_dot = p.omega();
  const double drift = p.omega0() - phi_dot * std::cos(p.theta());
  const double mix = phi_dot * std::sin(p.theta());
  const Complex half_i{0.0, 0.5};
  const SpinorRhs rhs = [=](double, const Spinor& c) -> Spinor {
    return {half_i * (drift * c[0] + mix * c[1]), half_i * (mix * c[0] - drift * c[1])};
  };
  return integrate_spinor(rhs, Spinor{Complex{1.0}, Complex{0.0}}, times, reference_period(p), s).states;
}

TimeSeries evolve_instantaneous_basis(const DriveParams& p, std::span<const double> times,
                                      const IntegratorSettings& s) {
  const auto amps = instantaneous_basis_amplitudes(p, times, s);
  TimeSeries ts;
  ts.method = "ode";
  ts.times.assign(times.begin(), times.end());
  for (const auto& c : amps) {
    ts.survival.push_back(std::norm(c[0]));
    ts.transition.push_back(std::norm(c[1]));
    ts.norm.push_back(std::norm(c[0]) + std::norm(c[1]));
  }
  return ts;
}

TimeSeries evolve_lab_frame(const DriveParams& p, std::span<const double> times, const IntegratorSettings& s) {
  const Complex minus_i{0.0, -1.0};
  const SpinorRhs rhs = [&p, minus_i](double t, const Spinor& psi) -> Spinor {
    return minus_i * hamiltonian_at(p, t) * psi;
  };
  const Spinor psi0 = eigensystem_at(p, 0.0).vec_minus;
  const auto traj = integrate_spinor(rhs, psi0, times, reference_period(p), s);

  TimeSeries ts;
  ts.method = "lab";
  ts.times.assign(times.begin(), times.end());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const EigenPair e = eigensystem_at(p, times[i]);
    const Spinor& psi = traj.states[i];
    ts.survival.push_back(std::norm(inner(e.vec_minus, psi)));
    ts.transition.push_back(std::norm(inner(e.vec_plus, psi)));
    ts.norm.push_back(std::norm(psi[0]) + std::norm(psi[1]));
  }
  return ts;
}

ComplexMatrix2 rotating_frame_propagator(const DriveParams& p, double t) {
  if (!std::isfinite(t)) throw DomainError("t must be finite");
  // H_rot = (1/2)(a sz + b sx); exp(-i H_rot t) = cos(wb t/2) - i sin(wb t/2)/wb (a sz + b sx).
  const double a = p.omega0() * std::cos(p.theta()) - p.omega();
  const double b = p.omega0() * std::sin(p.theta());
  const double wb = std::hypot(a, b);
  const double half_angle = 0.5 * wb * t;
  // sin(wb t/2)/wb, continuous through wb = 0.
  const double sinc_term = half_angle == 0.0 ? 0.5 * t : std::sin(half_angle) / wb;
  const double c = std::cos(half_angle);

  ComplexMatrix2 u_rot;
  u_rot(0, 0) = Complex{c, -sinc_term * a};
  u_rot(0, 1) = Complex{0.0, -sinc_term * b};
  u_rot(1, 0) = Complex{0.0, -sinc_term * b};
  u_rot(1, 1) = Complex{c, sinc_term * a};

  const Complex frame = std::polar(1.0, -0.5 * p.omega() * t);
  ComplexMatrix2 r;
  r(0, 0) = frame;
  r(1, 1) = std::conj(frame);
  return r * u_rot;
}

double propagator_survival(const DriveParams& p, double t) {
  const ComplexMatrix2 u = rotating_frame_propagator(p, t);
  const Spinor psi = u * eigensystem_at(p, 0.0).vec_minus;
  return std::norm(inner(eigensystem_at(p, t).vec_minus, psi));
}

}  // namespace toptrap
