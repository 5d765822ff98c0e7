#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "toptrap/closed_form.hpp"
#include "toptrap/errors.hpp"

using namespace toptrap;
using std::numbers::pi;

namespace {

// 1 - min_t survival = coupling^2 / omega_bar^2.
double amplitude(double w0, double w, double th) {
  const DriveParams p(w0, w, th);
  return 1.0 - survival_probability(p, pi / p.omega_bar());
}

}  // namespace

TEST_CASE("amplitudes_at examples") {
  const auto a0 = amplitudes_at(DriveParams(1, 1.5, 1.0), 0.0);
  CHECK(a0.alpha == Complex{1.0});
  CHECK(a0.beta == Complex{0.0});

  for (double t : {0.0, 0.5, 3.0, 17.0}) {
    const auto a = amplitudes_at(DriveParams(1, 1.5, 0.0), t);
    CHECK(std::abs(a.alpha) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(a.beta) == 0.0);
  }

  const DriveParams p(1, 1.5, pi / 2);
  const auto a = amplitudes_at(p, pi / p.omega_bar());
  CHECK(std::norm(a.alpha) == doctest::Approx(1 / 3.25).epsilon(1e-14));
  CHECK(std::norm(a.beta) == doctest::Approx(2.25 / 3.25).epsilon(1e-14));

  CHECK_THROWS_AS(amplitudes_at(p, -1.0), DomainError);
}

TEST_CASE("degenerate point omega_bar = 0 keeps the initial state") {
  const DriveParams p(1, 1, 0);
  for (double t : {0.0, 1.0, 100.0}) {
    const auto a = amplitudes_at(p, t);
    CHECK(a.alpha == Complex{1.0});
    CHECK(a.beta == Complex{0.0});
    CHECK(survival_probability(p, t) == 1.0);
    CHECK(transition_probability(p, t) == 0.0);
  }
}

TEST_CASE("survival and transition examples") {
  CHECK(survival_probability(DriveParams(1, 1.5, 1.0), 0.0) == 1.0);
  CHECK(transition_probability(DriveParams(1, 1.5, 1.0), 0.0) == 0.0);
  for (double t : {0.1, 2.0, 40.0}) {
    CHECK(survival_probability(DriveParams(2, 0.3, 0.0), t) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(transition_probability(DriveParams(2, 0.3, 0.0), t) == 0.0);
  }
  // (1 - 1.5 cos(pi/4))^2 / (3.25 - 3 cos(pi/4)), frozen from a 30-digit evaluation.
  const DriveParams p(1, 1.5, pi / 4);
  CHECK(survival_probability(p, pi / p.omega_bar()) == doctest::Approx(0.0032601424322312751).epsilon(1e-12));
  const DriveParams q(1, 1.5, pi / 2);
  CHECK(transition_probability(q, pi / q.omega_bar()) == doctest::Approx(2.25 / 3.25).epsilon(1e-14));
  // Independent 30-digit matrix-exponential evaluation.
  CHECK(survival_probability(p, 3.7) == doctest::Approx(0.15059383961182808).epsilon(1e-14));
}

TEST_CASE("closed form agrees with an independent Magnus propagator") {
  auto g = oracle::rng(5);
  for (int i = 0; i < 6; ++i) {
    const double w0 = 1.0, w = oracle::uniform(g, 0.1, 3), th = oracle::uniform(g, 0.05, pi - 0.05);
    const double t = oracle::uniform(g, 0.5, 12);
    const double ref = oracle::magnus_survival(w0, w, th, t, 40000);
    CHECK(std::abs(survival_probability(DriveParams(w0, w, th), t) - ref) < 1e-6);
  }
}

TEST_CASE("normalization identity holds to 1e-14") {
  auto g = oracle::rng(1);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const DriveParams p(1.0, oracle::uniform(g, 0, 10), oracle::uniform(g, 0, pi));
    const double t = oracle::uniform(g, 0, 100);
    worst = std::max(worst, std::abs(survival_probability(p, t) + transition_probability(p, t) - 1.0));
    const auto a = amplitudes_at(p, t);
    CHECK(std::abs(std::norm(a.alpha) - survival_probability(p, t)) <= 1e-14);
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("periodicity and full resurrection") {
  auto g = oracle::rng(2);
  for (int i = 0; i < 100; ++i) {
    const DriveParams p(oracle::uniform(g, 0.1, 5), oracle::uniform(g, 0.1, 5), oracle::uniform(g, 0.01, pi));
    const double period = resurrection_period(p);
    const double t = oracle::uniform(g, 0, 20);
    CHECK(std::abs(survival_probability(p, t + period) - survival_probability(p, t)) <= 1e-12);
    CHECK(std::abs(survival_probability(p, period) - 1.0) <= 1e-12);
  }
}

TEST_CASE("adiabatic limit: omega0 >= 100 omega") {
  for (double ratio : {100.0, 300.0, 1000.0}) {
    const DriveParams p(ratio, 1.0, pi / 2);
    const double bound = 1.0 - std::pow(p.coupling() / p.omega_bar(), 2);
    CHECK(survival_probability(p, pi / p.omega_bar()) >= bound - 1e-15);
    CHECK(bound >= 0.9996);
  }
}

TEST_CASE("omega_bar is symmetric under omega0 <-> omega") {
  auto g = oracle::rng(3);
  for (int i = 0; i < 100; ++i) {
    const double a = oracle::uniform(g, 0.1, 5), b = oracle::uniform(g, 0.1, 5), th = oracle::uniform(g, 0, pi);
    CHECK(DriveParams(a, b, th).omega_bar() == doctest::Approx(DriveParams(b, a, th).omega_bar()).epsilon(1e-14));
  }
}

TEST_CASE("oscillation amplitude vs theta: rises to a peak at cos(theta) = min(r, 1/r), then falls") {
  for (double ratio : {0.5, 1.5}) {
    const double peak = std::acos(std::min(ratio, 1.0 / ratio));
    CHECK(amplitude(1.0, ratio, peak) == doctest::Approx(std::min(ratio * ratio, 1.0)).epsilon(1e-12));
    double prev = -1.0;
    for (double th = 0.0; th <= peak; th += peak / 40) {
      const double amp = amplitude(1.0, ratio, th);
      CHECK(amp >= prev);
      prev = amp;
    }
    prev = 2.0;
    for (double th = peak; th <= pi / 2 + 1e-12; th += (pi / 2 - peak) / 40) {
      const double amp = amplitude(1.0, ratio, th);
      CHECK(amp <= prev + 1e-15);
      prev = amp;
    }
  }
  for (double th = pi / 40; th <= pi / 2 + 1e-12; th += pi / 40) {
    CHECK(amplitude(1.0, 0.5, th) < amplitude(1.0, 1.5, th));
  }
}

TEST_CASE("dependence is only on omega/omega0, theta and omega_bar t") {
  auto g = oracle::rng(4);
  for (int i = 0; i < 50; ++i) {
    const DriveParams p(1.0, oracle::uniform(g, 0.1, 4), oracle::uniform(g, 0.01, pi));
    const double c = oracle::uniform(g, 0.1, 50);
    const DriveParams q(c * p.omega0(), c * p.omega(), p.theta());
    const double t = oracle::uniform(g, 0, 30);
    CHECK(std::abs(survival_probability(q, t / c) - survival_probability(p, t)) <= 1e-12);
    CHECK(resurrection_time(q).tau == doctest::Approx(resurrection_time(p).tau).epsilon(1e-13));
  }
}

TEST_CASE("resurrection_time examples") {
  for (double th : {0.3, 1.0, pi / 2, 2.5, pi}) CHECK(resurrection_tau(0.0, th) == 1.0);
  for (double x : {0.0, 0.5, 1.0, 3.0}) {
    CHECK(resurrection_tau(x, pi / 2) == doctest::Approx(1 / std::sqrt(1 + x * x)).epsilon(1e-15));
  }
  const auto r = resurrection_time(DriveParams(0.5, 1.0, pi / 3));
  CHECK(r.x == 0.5);
  CHECK(r.tau == doctest::Approx(1.1547005383792515).epsilon(1e-14));
  // theta = pi is allowed: 1/(1 + x).
  CHECK(resurrection_time(DriveParams(2.0, 1.0, pi)).tau == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(resurrection_time(DriveParams(1.0, 0.0, 1.0)), DomainError);
  CHECK_THROWS_WITH_AS(resurrection_time(DriveParams(1.0, 1.0, 0.0)), "resurrection undefined: no flip occurs",
                       DomainError);
}

TEST_CASE("tau_extremum matches a brute-force grid search") {
  const auto e90 = tau_extremum(pi / 2);
  REQUIRE(e90);
  CHECK(std::abs(e90->x_star) < 1e-15);
  CHECK(e90->tau_max == 1.0);

  const auto e45 = tau_extremum(pi / 4);
  REQUIRE(e45);
  const auto grid = oracle::tau_grid_max(pi / 4, 0.0, 5.0, 1e-4);
  CHECK(std::abs(e45->x_star - grid.x) <= 1e-4);
  CHECK(e45->tau_max == doctest::Approx(grid.tau).epsilon(1e-7));
  CHECK(e45->x_star == doctest::Approx(0.70710678118654757).epsilon(1e-15));
  CHECK(e45->tau_max == doctest::Approx(1.4142135623730951).epsilon(1e-15));

  CHECK_FALSE(tau_extremum(3 * pi / 4));
  CHECK_FALSE(tau_extremum(pi));
  CHECK_THROWS_AS(tau_extremum(0.0), DomainError);
  CHECK_THROWS_AS(tau_extremum(-1.0), DomainError);
}
