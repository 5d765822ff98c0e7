#include "toptrap/cli/app.hpp"

#include <cstdio>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "toptrap/cli/svg.hpp"
#include "toptrap/cli/table.hpp"
#include "toptrap/toptrap.hpp"

namespace toptrap::cli {

namespace {

// 12 significant digits for human-facing diagnostics; tables keep full precision.
std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

using std::numbers::pi;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kEvolveIntegrityBound = 1e-6;

struct Output {
  std::string path;
  std::string format = "csv";
};

// Writes through `emit` to --out or to the default stream.
void emit_to(const Output& o, std::ostream& fallback, const std::function<void(std::ostream&)>& emit) {
  if (o.path.empty()) {
    emit(fallback);
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + o.path + "' for writing");
  emit(f);
  f.flush();
  if (!f) throw IoError("write to '" + o.path + "' failed");
}

void write_table(const Output& o, std::ostream& out, const Table& t) {
  emit_to(o, out, [&](std::ostream& os) {
    if (o.format == "json") write_json(os, t);
    else write_csv(os, t);
  });
}

void add_output_flags(CLI::App* cmd, Output& o, std::vector<std::string> formats) {
  cmd->add_option("--out", o.path, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember(std::move(formats)))->capture_default_str();
}

// ---------------------------------------------------------------- evolve

struct EvolveArgs {
  double omega0 = 0.0;
  double omega = 0.0;
  double theta = 0.0;
  double t_max = 0.0;
  std::size_t samples = 1001;
  std::string method = "closed";
  double rel_tol = 1e-10;
  Output output;
};

int cmd_evolve(const EvolveArgs& a, std::ostream& out, std::ostream& err) {
  const DriveParams p(a.omega0, a.omega, a.theta);
  if (!std::isfinite(a.t_max) || a.t_max < 0.0) throw DomainError("--t-max must be finite and >= 0");
  if (a.samples < 1) throw DomainError("--samples must be >= 1");
  const std::vector<double> grid = linear_grid(a.t_max, a.samples);

  IntegratorSettings settings;
  settings.rel_tol = a.rel_tol;
  settings.validate();

  std::vector<std::string> methods;
  if (a.method == "all") methods = {"closed", "ode", "lab"};
  else methods = {a.method};

  std::vector<std::pair<std::vector<double>, std::vector<double>>> results;
  for (const auto& m : methods) {
    if (m == "closed") {
      std::vector<double> s, tr;
      for (double t : grid) {
        s.push_back(survival_probability(p, t));
        tr.push_back(transition_probability(p, t));
      }
      results.emplace_back(std::move(s), std::move(tr));
    } else {
      const TimeSeries ts = m == "ode" ? evolve_instantaneous_basis(p, grid, settings) : evolve_lab_frame(p, grid, settings);
      results.emplace_back(ts.survival, ts.transition);
    }
  }

  Table t;
  t.params = {{"tool", "toptrap"},          {"tool_version", kVersion},
              {"command", "evolve"},        {"omega0", format_double(a.omega0)},
              {"omega", format_double(a.omega)}, {"theta", format_double(a.theta)},
              {"t_max", format_double(a.t_max)}, {"samples", std::to_string(a.samples)},
              {"method", a.method},         {"omega_bar", format_double(p.omega_bar())}};
  t.axes.push_back({"t", 0.0, a.t_max, a.samples, "linear"});
  t.columns = {"t", "survival", "transition"};
  for (std::size_t m = 1; m < methods.size(); ++m) {
    t.columns.push_back("survival_" + methods[m]);
    t.columns.push_back("transition_" + methods[m]);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (const auto& [s, tr] : results) {
      row.push_back(s[i]);
      row.push_back(tr[i]);
    }
    t.rows.push_back(std::move(row));
  }

  double max_delta = 0.0;
  for (std::size_t m = 1; m < results.size(); ++m) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      max_delta = std::max({max_delta, std::abs(results[m].first[i] - results[0].first[i]),
                            std::abs(results[m].second[i] - results[0].second[i])});
    }
  }
  if (results.size() > 1) t.params.emplace_back("max_cross_method_delta", format_double(max_delta));

  if (a.output.format == "svg") {
    ChartSpec chart;
    chart.title = "Weak-field-seeker survival";
    chart.x_label = "t";
    chart.y_label = "probability";
    for (std::size_t m = 0; m < methods.size(); ++m) {
      chart.series.push_back({"survival (" + methods[m] + ")", grid, results[m].first, m > 0});
    }
    chart.annotations = {"omega0 = " + format_double(a.omega0), "omega = " + format_double(a.omega),
                         "theta = " + format_double(a.theta)};
    emit_to(a.output, out, [&](std::ostream& os) { os << render_svg(chart); });
  } else {
    write_table(a.output, out, t);
  }

  if (results.size() > 1) {
    err << "max cross-method delta: " << format_double(max_delta) << '\n';
    if (!(max_delta <= kEvolveIntegrityBound)) {
      err << "integrity failure: methods disagree beyond " << format_double(kEvolveIntegrityBound) << '\n';
      return kExitIntegrity;
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- tau

struct TauArgs {
  std::vector<double> thetas;
  double x_min = 0.0;
  double x_max = 4.0;
  std::size_t steps = 401;
  Output output;
};

int cmd_tau(const TauArgs& a, std::ostream& out, std::ostream& err) {
  for (double th : a.thetas) {
    if (!std::isfinite(th) || th <= 0.0 || th > pi) throw DomainError("theta must be in (0, pi] for tau");
  }
  if (!(a.x_min >= 0.0)) throw DomainError("--x-min must be >= 0");
  SweepSpec spec;
  spec.axes = {Axis::values("theta", a.thetas), Axis::linear("x", a.x_min, a.x_max, a.steps)};
  spec.quantities = {Quantity::kTau};
  spec.max_threads = threads_from_env();
  spec.notes.emplace_back("command", "tau");
  const SweepResult r = run_sweep(spec);

  Table t;
  t.params = r.provenance;
  t.axes = {{"x", a.x_min, a.x_max, a.steps, "linear"}};
  t.columns = {"x", "theta", "tau"};
  const auto& xs = r.axis_points[1];
  const auto& tau = r.column("tau");
  for (std::size_t i = 0; i < r.rows(); ++i) {
    const auto c = r.coordinates(i);
    t.rows.push_back({c[1], c[0], tau[i]});
  }

  const double grid_step = (a.x_max - a.x_min) / static_cast<double>(a.steps - 1);
  bool consistent = true;
  for (std::size_t k = 0; k < a.thetas.size(); ++k) {
    const double th = a.thetas[k];
    const auto first = tau.begin() + static_cast<std::ptrdiff_t>(k * xs.size());
    const auto best = std::max_element(first, first + static_cast<std::ptrdiff_t>(xs.size()));
    const double arg_x = xs[static_cast<std::size_t>(best - first)];
    err << "theta=" << format_double(th) << ": ";
    if (const auto ext = tau_extremum(th)) {
      err << "extremum x*=" << brief(ext->x_star) << " tau_max=" << brief(ext->tau_max) << "; grid argmax x=" << brief(arg_x)
          << " tau=" << brief(*best);
      if (ext->x_star >= a.x_min && ext->x_star <= a.x_max) {
        const bool ok = std::abs(arg_x - ext->x_star) <= grid_step * (1.0 + 1e-9);
        err << (ok ? " (agree within one grid step)" : " (DISAGREE)");
        consistent = consistent && ok;
      } else {
        err << " (extremum outside grid)";
      }
      err << '\n';
    } else {
      err << "monotone decreasing, no interior maximum\n";
    }
  }
  write_table(a.output, out, t);
  return consistent ? kExitOk : kExitIntegrity;
}

// ---------------------------------------------------------------- fig

struct FigArgs {
  std::string which;
  Output output;
};

ChartSpec figure_chart(Figure f, const SweepResult& r) {
  ChartSpec chart;
  const auto& thetas = r.axis_points[0];
  const auto& xs = r.axis_points[1];
  const auto& values = r.tables[0];
  for (std::size_t k = 0; k < thetas.size(); ++k) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(k * xs.size());
    ChartSeries s;
    s.label = "θ = " + format_double(thetas[k]).substr(0, 6);
    s.x = xs;
    s.y.assign(first, first + static_cast<std::ptrdiff_t>(xs.size()));
    s.dashed = f == Figure::kFig3 && thetas[k] > pi / 2;
    chart.series.push_back(std::move(s));
  }
  if (f == Figure::kFig3) {
    chart.title = "Resurrection time vs ω₀/ω";
    chart.x_label = "ω₀/ω";
    chart.y_label = "τ (units of 2π/ω)";
    chart.annotations = {"solid: 0 < θ ≤ π/2", "dashed: π/2 < θ < π"};
  } else {
    const char* ratio = f == Figure::kFig1 ? "1.5" : "0.5";
    chart.title = std::string("Survival probability, ω = ") + ratio + " ω₀";
    chart.x_label = "t·ω₀";
    chart.y_label = "survival probability |α|²";
    chart.annotations = {std::string("ω/ω₀ = ") + ratio, "ω₀ = 1"};
  }
  return chart;
}

int cmd_fig(const FigArgs& a, std::ostream& out) {
  const Figure f = parse_figure(a.which);
  const SweepResult r = figure_dataset(f, threads_from_env());
  if (a.output.format == "svg") {
    const ChartSpec chart = figure_chart(f, r);
    emit_to(a.output, out, [&](std::ostream& os) { os << render_svg(chart); });
  } else {
    write_table(a.output, out, table_from_sweep(r));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- adiabatic

struct AdiabaticArgs {
  double omega0 = 0.0;
  double omega = 0.0;
  double theta = 0.0;
  double threshold = 0.1;
  double t = 0.0;
  std::optional<double> dt;
  std::optional<double> escape_time;
  std::string format = "text";
  std::string out_path;
};

int cmd_adiabatic(const AdiabaticArgs& a, std::ostream& out) {
  const DriveParams p(a.omega0, a.omega, a.theta);
  if (!std::isfinite(a.threshold) || !(a.threshold > 0.0)) throw DomainError("--threshold must be > 0");
  const double param = adiabaticity_parameter(p);
  const double element = a.dt ? adiabaticity_matrix_element(p, a.t, *a.dt) : adiabaticity_matrix_element(p, a.t);
  const bool adiabatic = param < a.threshold;
  std::optional<ConfinementVerdict> verdict;
  if (a.escape_time) verdict = confinement_advisor(p, *a.escape_time);

  emit_to({a.out_path, a.format}, out, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::ordered_json j;
      j["params"] = {{"omega0", a.omega0}, {"omega", a.omega}, {"theta", a.theta}};
      j["parameter"] = param;
      j["matrix_element"] = element;
      j["threshold"] = a.threshold;
      j["adiabatic"] = adiabatic;
      j["verdict"] = adiabatic ? "adiabatic" : "NOT adiabatic";
      if (verdict) {
        j["confinement"] = {{"confined", verdict->confined},
                            {"escape_time", verdict->escape_time},
                            {"resurrection_time", std::isfinite(verdict->resurrection_time)
                                                      ? nlohmann::ordered_json(verdict->resurrection_time)
                                                      : nlohmann::ordered_json(nullptr)},
                            {"ratio", verdict->ratio}};
      }
      os << j.dump(1) << '\n';
      return;
    }
    os << "adiabaticity parameter (omega/2omega0) sin(theta): " << format_double(param) << '\n';
    os << "finite-difference matrix element: " << format_double(element) << '\n';
    os << "threshold: " << brief(a.threshold) << '\n';
    os << "verdict: " << (adiabatic ? "adiabatic" : "NOT adiabatic") << '\n';
    if (verdict) {
      os << "escape time: " << format_double(verdict->escape_time) << '\n';
      os << "resurrection time: "
         << (std::isfinite(verdict->resurrection_time) ? format_double(verdict->resurrection_time) : "inf (no flip)")
         << '\n';
      os << "confinement: " << (verdict->confined ? "confined" : "NOT confined") << '\n';
    }
  });
  return kExitOk;
}

// ---------------------------------------------------------------- geometry

struct GeometryArgs {
  double a0 = 0.0, b0 = 0.0, omega = 0.0, gamma = 0.0, mu = 0.0, mass = 0.0;
  double margin = 10.0;
  std::optional<double> x, y;
  double z = 0.0;
  double t = 0.0;
  std::string format = "text";
  std::string out_path;
};

int cmd_geometry(const GeometryArgs& a, std::ostream& out) {
  const TrapConfig c(a.a0, a.b0, a.omega, a.gamma, a.mu, a.mass);
  const HierarchyReport h = hierarchy_check(c, a.margin);
  const double r0 = circle_of_death_radius(c);
  const double k = spring_constant(c);

  struct PointInfo {
    FieldVector b;
    std::optional<double> larmor;
    std::optional<double> angle;
  };
  std::optional<PointInfo> point;
  if (a.x || a.y) {
    const double x = a.x.value_or(0.0), y = a.y.value_or(0.0);
    PointInfo pi_{field_at(c, x, y, a.z, a.t), std::nullopt, std::nullopt};
    try {
      pi_.larmor = larmor_at(c, x, y, a.t, a.z);
      pi_.angle = field_angle_at(c, x, y, a.t, a.z);
    } catch (const DomainError&) {
      // Field zero: leave Larmor frequency and angle unset.
    }
    point = pi_;
  }

  emit_to({a.out_path, a.format}, out, [&](std::ostream& os) {
    if (a.format == "json") {
      nlohmann::ordered_json j;
      j["params"] = {{"a0", a.a0}, {"b0", a.b0}, {"omega", a.omega}, {"gamma", a.gamma}, {"mu", a.mu}, {"mass", a.mass}};
      j["R0"] = r0;
      j["k"] = k;
      j["omega_osc"] = h.omega_osc;
      j["omega0_ref"] = h.omega0_ref;
      j["hierarchy"] = {{"omega_osc", h.omega_osc},   {"omega", h.omega},     {"omega0_ref", h.omega0_ref},
                        {"ratio_low", h.ratio_low},   {"ratio_high", h.ratio_high}, {"margin", h.margin},
                        {"satisfied", h.satisfied}};
      if (point) {
        auto opt = [](const std::optional<double>& v) {
          return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
        };
        j["point"] = {{"x", a.x.value_or(0.0)}, {"y", a.y.value_or(0.0)}, {"z", a.z}, {"t", a.t},
                      {"field", {point->b.bx, point->b.by, point->b.bz}},
                      {"larmor", opt(point->larmor)}, {"theta", opt(point->angle)}};
      }
      os << j.dump(1) << '\n';
      return;
    }
    os << "R0 (circle of death radius, m): " << format_double(r0) << '\n';
    os << "k (spring constant, N/m): " << format_double(k) << '\n';
    os << "omega_osc (rad/s): " << format_double(h.omega_osc) << '\n';
    os << "omega (rad/s): " << format_double(h.omega) << '\n';
    os << "omega0 at B0 (rad/s): " << format_double(h.omega0_ref) << '\n';
    os << "omega/omega_osc: " << format_double(h.ratio_low) << '\n';
    os << "omega0/omega: " << format_double(h.ratio_high) << '\n';
    os << "hierarchy (margin " << format_double(h.margin) << "): " << (h.satisfied ? "satisfied" : "NOT satisfied")
       << '\n';
    if (point) {
      os << "field at point (T): " << format_double(point->b.bx + 0.0) << ", " << format_double(point->b.by + 0.0) << ", "
         << format_double(point->b.bz + 0.0) << '\n';
      if (point->larmor) {
        os << "Larmor frequency (rad/s): " << format_double(*point->larmor) << '\n';
        os << "field angle theta (rad): " << format_double(*point->angle) << '\n';
      } else {
        os << "Larmor frequency undefined at field zero\n";
      }
    }
  });
  return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::vector<std::string> axes;
  std::vector<std::string> quantities{"survival"};
  FixedParams fixed;
  bool oracle = false;
  Output output;
};

// name:min:max:steps[:log]  or  name=v1,v2,...
Axis parse_axis(const std::string& text) {
  if (const auto eq = text.find('='); eq != std::string::npos) {
    std::vector<double> values;
    std::stringstream ss(text.substr(eq + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        values.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw UsageError("--axis: bad value '" + item + "'");
      }
    }
    return Axis::values(text.substr(0, eq), std::move(values));
  }
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5) throw UsageError("--axis expects name:min:max:steps[:log]");
  try {
    const double mn = std::stod(parts[1]);
    const double mx = std::stod(parts[2]);
    const auto steps = static_cast<std::size_t>(std::stoul(parts[3]));
    if (parts.size() == 5) {
      if (parts[4] != "log" && parts[4] != "linear") throw UsageError("--axis scale must be linear or log");
      if (parts[4] == "log") return Axis::logarithmic(parts[0], mn, mx, steps);
    }
    return Axis::linear(parts[0], mn, mx, steps);
  } catch (const std::logic_error&) {
    throw UsageError("--axis: malformed '" + text + "'");
  }
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  for (const auto& s : a.axes) spec.axes.push_back(parse_axis(s));
  spec.quantities.clear();
  for (const auto& q : a.quantities) spec.quantities.push_back(parse_quantity(q));
  spec.fixed = a.fixed;
  spec.oracle = a.oracle;
  spec.max_threads = threads_from_env();
  spec.notes.emplace_back("command", "sweep");
  const SweepResult r = run_sweep(spec);
  if (spec.oracle) err << "max oracle delta: " << format_double(r.max_oracle_delta) << '\n';
  write_table(a.output, out, table_from_sweep(r));
  return kExitOk;
}

}  // namespace

unsigned threads_from_env() {
  const char* v = std::getenv("TOPTRAP_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n <= 0) return 0;
  return static_cast<unsigned>(std::min<long>(n, 1024));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin dynamics of a two-level weak-field seeker in a TOP trap", "toptrap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  EvolveArgs ev;
  auto* evolve = app.add_subcommand("evolve", "Survival/transition probabilities over time");
  evolve->add_option("--omega0", ev.omega0, "Larmor angular frequency")->required();
  evolve->add_option("--omega", ev.omega, "Rotating-field angular frequency")->required();
  evolve->add_option("--theta", ev.theta, "Field angle from z (rad)")->required();
  evolve->add_option("--t-max", ev.t_max, "End time")->required();
  evolve->add_option("--samples", ev.samples, "Number of time samples")->capture_default_str();
  evolve->add_option("--method", ev.method, "closed|ode|lab|all")
      ->check(CLI::IsMember({"closed", "ode", "lab", "all"}))
      ->capture_default_str();
  evolve->add_option("--rel-tol", ev.rel_tol, "ODE relative tolerance")->capture_default_str();
  add_output_flags(evolve, ev.output, {"csv", "json", "svg"});

  TauArgs ta;
  auto* tau = app.add_subcommand("tau", "Resurrection time over x = omega0/omega");
  tau->add_option("--theta", ta.thetas, "Field angle (repeatable)")->required()->allow_extra_args(false);
  tau->add_option("--x-min", ta.x_min)->capture_default_str();
  tau->add_option("--x-max", ta.x_max)->capture_default_str();
  tau->add_option("--steps", ta.steps)->capture_default_str();
  add_output_flags(tau, ta.output, {"csv", "json"});

  FigArgs fa;
  auto* fig = app.add_subcommand("fig", "Canned figure datasets");
  fig->add_option("which", fa.which, "fig1|fig2|fig3")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  add_output_flags(fig, fa.output, {"csv", "json", "svg"});

  AdiabaticArgs ad;
  auto* adiabatic = app.add_subcommand("adiabatic", "Adiabaticity parameter and verdict");
  adiabatic->add_option("--omega0", ad.omega0)->required();
  adiabatic->add_option("--omega", ad.omega)->required();
  adiabatic->add_option("--theta", ad.theta)->required();
  adiabatic->add_option("--threshold", ad.threshold)->capture_default_str();
  adiabatic->add_option("--t", ad.t, "Time for the finite-difference evaluation")->capture_default_str();
  adiabatic->add_option("--dt", ad.dt, "Finite-difference step");
  adiabatic->add_option("--escape-time", ad.escape_time, "Run the confinement advisor with this escape time");
  adiabatic->add_option("--format", ad.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  adiabatic->add_option("--out", ad.out_path);

  GeometryArgs ge;
  auto* geometry = app.add_subcommand("geometry", "Trap scales and frequency hierarchy");
  geometry->add_option("--a0", ge.a0, "Quadrupole gradient (T/m)")->required();
  geometry->add_option("--b0", ge.b0, "Rotating field (T)")->required();
  geometry->add_option("--omega", ge.omega, "Rotation frequency (rad/s)")->required();
  geometry->add_option("--gamma", ge.gamma, "Gyromagnetic ratio (rad/(s T))")->required();
  geometry->add_option("--mu", ge.mu, "Magnetic moment (J/T)")->required();
  geometry->add_option("--mass", ge.mass, "Atomic mass (kg)")->required();
  geometry->add_option("--margin", ge.margin, "Factor used for <<")->capture_default_str();
  geometry->add_option("--x", ge.x);
  geometry->add_option("--y", ge.y);
  geometry->add_option("--z", ge.z)->capture_default_str();
  geometry->add_option("--t", ge.t)->capture_default_str();
  geometry->add_option("--format", ge.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  geometry->add_option("--out", ge.out_path);

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Generic parameter sweep");
  sweep->add_option("--axis", sw.axes, "name:min:max:steps[:log] or name=v1,v2,...")->allow_extra_args(false);
  sweep->add_option("--quantity", sw.quantities, "survival|transition|tau|adiabaticity|omega_bar")
      ->allow_extra_args(false);
  sweep->add_option("--omega0", sw.fixed.omega0)->capture_default_str();
  sweep->add_option("--omega", sw.fixed.omega)->capture_default_str();
  sweep->add_option("--theta", sw.fixed.theta)->capture_default_str();
  sweep->add_option("--t", sw.fixed.t)->capture_default_str();
  sweep->add_flag("--oracle", sw.oracle, "Add ODE oracle columns");
  add_output_flags(sweep, sw.output, {"csv", "json"});

  std::vector<const char*> argv{"toptrap"};
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*evolve) return cmd_evolve(ev, out, err);
    if (*tau) return cmd_tau(ta, out, err);
    if (*fig) return cmd_fig(fa, out);
    if (*adiabatic) return cmd_adiabatic(ad, out);
    if (*geometry) return cmd_geometry(ge, out);
    if (*sweep) return cmd_sweep(sw, out, err);
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GridSizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IntegrityError& e) {
    err << "integrity failure: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const IntegrationError& e) {
    err << "integration failure: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace toptrap::cli
