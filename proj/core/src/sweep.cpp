#include "toptrap/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "toptrap/closed_form.hpp"
#include "toptrap/errors.hpp"
#include "toptrap/integrator.hpp"
#include "toptrap/spin_core.hpp"
#include "toptrap/version.hpp"

namespace toptrap {

namespace {

constexpr std::string_view kAxisNames[] = {"omega0", "omega", "theta", "t", "ratio", "x"};

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct PointParams {
  double omega0;
  double omega;
  double theta;
  double t;
  std::optional<double> x;  // set when an x axis drives the point
};

PointParams resolve(const FixedParams& fixed, const std::vector<std::string>& names, const double* coords) {
  PointParams pp{fixed.omega0, fixed.omega, fixed.theta, fixed.t, std::nullopt};
  std::optional<double> ratio;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string& n = names[i];
    if (n == "omega0") pp.omega0 = coords[i];
    else if (n == "omega") pp.omega = coords[i];
    else if (n == "theta") pp.theta = coords[i];
    else if (n == "t") pp.t = coords[i];
    else if (n == "ratio") ratio = coords[i];
    else if (n == "x") pp.x = coords[i];
  }
  if (ratio) pp.omega = *ratio * pp.omega0;
  if (pp.x) pp.omega0 = *pp.x * pp.omega;
  return pp;
}

double evaluate(Quantity q, const PointParams& pp) {
  if (q == Quantity::kTau) {
    if (pp.x) return resurrection_tau(*pp.x, pp.theta);
    return resurrection_time(DriveParams(pp.omega0, pp.omega, pp.theta)).tau;
  }
  const DriveParams p(pp.omega0, pp.omega, pp.theta);
  switch (q) {
    case Quantity::kSurvival: return survival_probability(p, pp.t);
    case Quantity::kTransition: return transition_probability(p, pp.t);
    case Quantity::kAdiabaticity: return adiabaticity_parameter(p);
    case Quantity::kOmegaBar: return p.omega_bar();
    case Quantity::kTau: break;
  }
  throw std::logic_error("unhandled quantity");
}

// Runs `job(i)` for i in [0, n) on up to `threads` workers; rethrows the
// first exception after all workers stop.
template <class Job>
void parallel_for(std::size_t n, unsigned threads, Job job) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n && !failed; i = next++) {
          try {
            job(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

Axis Axis::linear(std::string name, double min, double max, std::size_t steps) {
  return {std::move(name), min, max, steps, AxisScale::kLinear, {}};
}

Axis Axis::logarithmic(std::string name, double min, double max, std::size_t steps) {
  return {std::move(name), min, max, steps, AxisScale::kLog, {}};
}

Axis Axis::values(std::string name, std::vector<double> list) {
  const auto [lo, hi] = std::minmax_element(list.begin(), list.end());
  const double mn = list.empty() ? 0.0 : *lo;
  const double mx = list.empty() ? 0.0 : *hi;
  const std::size_t n = list.size();
  return {std::move(name), mn, mx, n, AxisScale::kList, std::move(list)};
}

std::vector<double> Axis::points() const {
  if (scale == AxisScale::kList) return list;
  std::vector<double> v(steps);
  const double denom = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / denom;
    v[i] = scale == AxisScale::kLog ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                                    : min + f * (max - min);
  }
  v.front() = min;
  v.back() = max;
  return v;
}

std::string_view quantity_name(Quantity q) noexcept {
  switch (q) {
    case Quantity::kSurvival: return "survival";
    case Quantity::kTransition: return "transition";
    case Quantity::kTau: return "tau";
    case Quantity::kAdiabaticity: return "adiabaticity";
    case Quantity::kOmegaBar: return "omega_bar";
  }
  return "?";
}

Quantity parse_quantity(std::string_view name) {
  for (Quantity q : {Quantity::kSurvival, Quantity::kTransition, Quantity::kTau, Quantity::kAdiabaticity,
                     Quantity::kOmegaBar}) {
    if (quantity_name(q) == name) return q;
  }
  throw DomainError("unknown quantity '" + std::string(name) + "'");
}

std::string_view scale_name(AxisScale s) noexcept {
  switch (s) {
    case AxisScale::kLinear: return "linear";
    case AxisScale::kLog: return "log";
    case AxisScale::kList: return "list";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (axes.size() > 3) throw DomainError("at most 3 sweep axes");
  if (quantities.empty()) throw DomainError("no quantities requested");
  std::set<std::string> seen;
  for (const Axis& a : axes) {
    if (std::find(std::begin(kAxisNames), std::end(kAxisNames), a.name) == std::end(kAxisNames)) {
      throw DomainError("unknown axis '" + a.name + "'");
    }
    if (!seen.insert(a.name).second) throw DomainError("duplicate axis '" + a.name + "'");
    if (a.scale == AxisScale::kList) {
      if (a.list.empty()) throw DomainError("axis '" + a.name + "' has no values");
      for (double v : a.list)
        if (!std::isfinite(v)) throw DomainError("axis '" + a.name + "' has a non-finite value");
      continue;
    }
    if (a.steps < 2) throw DomainError("axis '" + a.name + "' needs steps >= 2");
    if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.min < a.max)) {
      throw DomainError("axis '" + a.name + "' needs finite min < max");
    }
    if (a.scale == AxisScale::kLog && !(a.min > 0.0)) throw DomainError("log axis '" + a.name + "' needs min > 0");
  }
  if (seen.count("ratio") && seen.count("x")) throw DomainError("axes 'ratio' and 'x' conflict");
  if (seen.count("ratio") && seen.count("omega")) throw DomainError("axes 'ratio' and 'omega' conflict");
  if (seen.count("x") && seen.count("omega0")) throw DomainError("axes 'x' and 'omega0' conflict");
  if (!(oracle_tolerance > 0.0)) throw DomainError("oracle tolerance must be > 0");
}

std::size_t SweepResult::rows() const noexcept {
  std::size_t n = 1;
  for (const auto& p : axis_points) n *= p.size();
  return n;
}

std::vector<double> SweepResult::coordinates(std::size_t row) const {
  std::vector<double> c(axis_points.size());
  for (std::size_t i = axis_points.size(); i-- > 0;) {
    const std::size_t len = axis_points[i].size();
    c[i] = axis_points[i][row % len];
    row /= len;
  }
  return c;
}

const std::vector<double>& SweepResult::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return tables[i];
  }
  throw std::out_of_range("no column '" + std::string(name) + "'");
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();

  SweepResult r;
  r.axes = spec.axes;
  std::size_t total = 1;
  for (const Axis& a : spec.axes) {
    total *= a.size();
    if (total > kMaxSweepPoints) {
      std::size_t full = 1;
      for (const Axis& b : spec.axes) full *= b.size();
      throw GridSizeError("sweep grid has " + std::to_string(full) + " points, limit is " +
                          std::to_string(kMaxSweepPoints));
    }
    r.axis_points.push_back(a.points());
  }

  std::vector<std::string> names;
  for (const Axis& a : spec.axes) names.push_back(a.name);

  const bool wants_prob = std::any_of(spec.quantities.begin(), spec.quantities.end(), [](Quantity q) {
    return q == Quantity::kSurvival || q == Quantity::kTransition;
  });
  const bool with_oracle = spec.oracle && wants_prob;

  for (Quantity q : spec.quantities) r.columns.emplace_back(quantity_name(q));
  if (with_oracle) {
    r.columns.emplace_back("survival_ode");
    r.columns.emplace_back("survival_lab");
  }
  r.tables.assign(r.columns.size(), std::vector<double>(total, 0.0));

  // Rows are grouped into lines along the t axis (or single points) so
  // oracle integrations can reuse one trajectory per line.
  const auto t_it = std::find(names.begin(), names.end(), "t");
  const std::size_t t_axis = t_it == names.end() ? names.size() : static_cast<std::size_t>(t_it - names.begin());
  std::size_t t_len = 1;
  std::size_t t_stride = 1;
  if (t_axis < names.size()) {
    t_len = r.axis_points[t_axis].size();
    for (std::size_t i = t_axis + 1; i < names.size(); ++i) t_stride *= r.axis_points[i].size();
  }
  const std::size_t lines = total / t_len;

  std::vector<double> worst_delta(lines, 0.0);
  std::vector<std::size_t> worst_row(lines, 0);

  unsigned threads = spec.max_threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

  parallel_for(lines, threads, [&](std::size_t line) {
    // First row of this line: expand `line` over the non-t axes.
    const std::size_t base = (line / t_stride) * t_stride * t_len + line % t_stride;
    std::vector<double> times;
    std::vector<std::size_t> line_rows;
    for (std::size_t k = 0; k < t_len; ++k) {
      const std::size_t row = base + k * t_stride;
      line_rows.push_back(row);
      const std::vector<double> coords = r.coordinates(row);
      const PointParams pp = resolve(spec.fixed, names, coords.data());
      times.push_back(pp.t);
      for (std::size_t qi = 0; qi < spec.quantities.size(); ++qi) {
        const double v = evaluate(spec.quantities[qi], pp);
        if (!std::isfinite(v)) throw DomainError("non-finite value in sweep");
        r.tables[qi][row] = v;
      }
    }
    if (!with_oracle) return;

    const std::vector<double> coords = r.coordinates(base);
    const PointParams pp = resolve(spec.fixed, names, coords.data());
    const DriveParams p(pp.omega0, pp.omega, pp.theta);
    // The t axis may be descending in a list; integrate over the sorted grid.
    std::vector<std::size_t> order(t_len);
    for (std::size_t k = 0; k < t_len; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return times[a] < times[b]; });
    std::vector<double> sorted(t_len);
    for (std::size_t k = 0; k < t_len; ++k) sorted[k] = times[order[k]];

    const TimeSeries ode = evolve_instantaneous_basis(p, sorted);
    const TimeSeries lab = evolve_lab_frame(p, sorted);
    const std::size_t ode_col = spec.quantities.size();
    for (std::size_t k = 0; k < t_len; ++k) {
      const std::size_t row = line_rows[order[k]];
      r.tables[ode_col][row] = ode.survival[k];
      r.tables[ode_col + 1][row] = lab.survival[k];
      const double exact = survival_probability(p, sorted[k]);
      const double delta = std::max(std::abs(ode.survival[k] - exact), std::abs(lab.survival[k] - exact));
      if (delta > worst_delta[line]) {
        worst_delta[line] = delta;
        worst_row[line] = row;
      }
    }
  });

  if (with_oracle) {
    const auto it = std::max_element(worst_delta.begin(), worst_delta.end());
    r.max_oracle_delta = *it;
    if (r.max_oracle_delta > spec.oracle_tolerance) {
      const std::vector<double> c = r.coordinates(worst_row[static_cast<std::size_t>(it - worst_delta.begin())]);
      std::string where;
      for (std::size_t i = 0; i < names.size(); ++i) where += " " + names[i] + "=" + fmt17(c[i]);
      throw IntegrityError("oracle mismatch " + fmt17(r.max_oracle_delta) + " exceeds " +
                           fmt17(spec.oracle_tolerance) + " at" + where);
    }
  }

  r.provenance.emplace_back("tool", "toptrap");
  r.provenance.emplace_back("tool_version", kVersion);
  r.provenance.emplace_back("omega0", fmt17(spec.fixed.omega0));
  r.provenance.emplace_back("omega", fmt17(spec.fixed.omega));
  r.provenance.emplace_back("theta", fmt17(spec.fixed.theta));
  r.provenance.emplace_back("t", fmt17(spec.fixed.t));
  for (const Axis& a : spec.axes) {
    r.provenance.emplace_back("axis." + a.name, std::string(scale_name(a.scale)) + " " + fmt17(a.min) + " " +
                                                    fmt17(a.max) + " " + std::to_string(a.size()));
  }
  r.provenance.emplace_back("methods", with_oracle ? "closed,ode,lab" : "closed");
  if (with_oracle) r.provenance.emplace_back("max_oracle_delta", fmt17(r.max_oracle_delta));
  for (const auto& kv : spec.notes) r.provenance.push_back(kv);
  return r;
}

Figure parse_figure(std::string_view name) {
  if (name == "fig1") return Figure::kFig1;
  if (name == "fig2") return Figure::kFig2;
  if (name == "fig3") return Figure::kFig3;
  throw DomainError("unknown figure '" + std::string(name) + "'");
}

std::string_view figure_name(Figure f) noexcept {
  switch (f) {
    case Figure::kFig1: return "fig1";
    case Figure::kFig2: return "fig2";
    case Figure::kFig3: return "fig3";
  }
  return "?";
}

SweepSpec figure_spec(Figure f) {
  using std::numbers::pi;
  SweepSpec s;
  s.fixed.omega0 = 1.0;
  s.notes.emplace_back("figure", std::string(figure_name(f)));
  if (f == Figure::kFig3) {
    s.axes = {Axis::values("theta", {pi / 6, 3 * pi / 4}), Axis::linear("x", 0.0, 4.0, 401)};
    s.quantities = {Quantity::kTau};
    s.fixed.omega = 1.0;
    s.notes.emplace_back("theta_set", "pi/6,3pi/4");
    s.notes.emplace_back("units", "x = omega0/omega; tau in units of 2pi/omega");
    return s;
  }
  const double ratio = f == Figure::kFig1 ? 1.5 : 0.5;
  s.fixed.omega = ratio;
  s.axes = {Axis::values("theta", {0.3, 0.7, 1.2, pi / 2}), Axis::linear("t", 0.0, 15.0, 1501)};
  s.quantities = {Quantity::kSurvival};
  s.notes.emplace_back("omega_over_omega0", fmt17(ratio));
  s.notes.emplace_back("theta_set", "0.3,0.7,1.2,pi/2");
  s.notes.emplace_back("units", "t in units of 1/omega0");
  return s;
}

SweepResult figure_dataset(Figure f, unsigned max_threads) {
  SweepSpec s = figure_spec(f);
  s.max_threads = max_threads;
  return run_sweep(s);
}

}  // namespace toptrap
