#pragma once

// Parameter sweeps over the drive model. A sweep is a tensor grid of up to
// three axes; every grid point is resolved to (omega0, omega, theta, t)
// and the requested quantities are evaluated there. Tables are row-major
// with the first axis outermost.

#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toptrap {

enum class AxisScale { kLinear, kLog, kList };

/// Axis names: omega0, omega, theta, t, ratio (omega/omega0), x (omega0/omega).
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t steps = 2;
  AxisScale scale = AxisScale::kLinear;
  std::vector<double> list;  ///< explicit values when scale == kList

  static Axis linear(std::string name, double min, double max, std::size_t steps);
  static Axis logarithmic(std::string name, double min, double max, std::size_t steps);
  static Axis values(std::string name, std::vector<double> list);

  std::size_t size() const noexcept { return scale == AxisScale::kList ? list.size() : steps; }
  std::vector<double> points() const;
};

enum class Quantity { kSurvival, kTransition, kTau, kAdiabaticity, kOmegaBar };

std::string_view quantity_name(Quantity q) noexcept;
/// Throws DomainError for unknown names.
Quantity parse_quantity(std::string_view name);
std::string_view scale_name(AxisScale s) noexcept;

struct FixedParams {
  double omega0 = 1.0;
  double omega = 1.5;
  double theta = std::numbers::pi / 2;
  double t = 0.0;
};

using Provenance = std::vector<std::pair<std::string, std::string>>;

struct SweepSpec {
  std::vector<Axis> axes;
  std::vector<Quantity> quantities{Quantity::kSurvival};
  FixedParams fixed;
  /// Adds survival_ode / survival_lab columns and enforces oracle_tolerance.
  bool oracle = false;
  double oracle_tolerance = 1e-8;
  /// 0 = hardware concurrency.
  unsigned max_threads = 0;
  /// Extra header entries carried into the result.
  Provenance notes;

  /// Throws DomainError on malformed axes or conflicting axis names.
  void validate() const;
};

struct SweepResult {
  std::vector<Axis> axes;
  std::vector<std::vector<double>> axis_points;
  std::vector<std::string> columns;
  /// One table per column, each of length rows().
  std::vector<std::vector<double>> tables;
  Provenance provenance;
  /// Largest |oracle - closed form| seen, 0 when no oracle ran.
  double max_oracle_delta = 0.0;

  std::size_t rows() const noexcept;
  /// Axis coordinates of row `row`, one per axis.
  std::vector<double> coordinates(std::size_t row) const;
  /// Table for `column`; throws std::out_of_range if absent.
  const std::vector<double>& column(std::string_view column) const;
};

inline constexpr std::size_t kMaxSweepPoints = 10'000'000;

/// Deterministic for a given spec regardless of thread count.
/// Throws GridSizeError above kMaxSweepPoints, DomainError for invalid
/// points and IntegrityError when an oracle column disagrees.
SweepResult run_sweep(const SweepSpec& spec);

enum class Figure { kFig1, kFig2, kFig3 };

/// Throws DomainError for unknown names ("fig1", "fig2", "fig3").
Figure parse_figure(std::string_view name);
std::string_view figure_name(Figure f) noexcept;

/// Canned sweeps. fig1/fig2: survival over theta in {0.3, 0.7, 1.2, pi/2}
/// and t in [0, 15]/omega0 (1501 samples) at omega = 1.5 / 0.5 omega0.
/// fig3: tau over theta in {pi/6, 3 pi/4} and x = omega0/omega in [0, 4]
/// (401 samples).
SweepSpec figure_spec(Figure f);
SweepResult figure_dataset(Figure f, unsigned max_threads = 0);

}  // namespace toptrap
