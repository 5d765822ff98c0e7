#include "toptrap/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace toptrap::cli {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render_svg(const ChartSpec& chart) {
  const double w = chart.width;
  const double h = chart.height;
  const double left = 70, right = 170, top = 40, bottom = 60;
  const double pw = w - left - right;
  const double ph = h - top - bottom;

  Range xr, yr;
  for (const auto& s : chart.series) {
    for (double v : s.x) xr.add(v);
    for (double v : s.y) yr.add(v);
  }
  xr.pad();
  yr.pad();
  // Snap the y range outward to tick multiples.
  const double ystep = nice_step(yr.hi - yr.lo, 5);
  yr.lo = std::floor(yr.lo / ystep + 1e-9) * ystep;
  yr.hi = std::ceil(yr.hi / ystep - 1e-9) * ystep;
  const double xstep = nice_step(xr.hi - xr.lo, 6);

  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << chart.width << "\" height=\"" << chart.height
     << "\" viewBox=\"0 0 " << chart.width << ' ' << chart.height << "\" font-family=\"sans-serif\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << chart.width << "\" height=\"" << chart.height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
     << xml_escape(chart.title) << "</text>\n";

  // Axes and ticks.
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
     << "\"/>\n";
  os << "</g>\n<g font-size=\"11\">\n";
  for (double v = std::ceil(xr.lo / xstep - 1e-9) * xstep; v <= xr.hi + 1e-9 * xstep; v += xstep) {
    const double x = px(v);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
       << tick_label(v) << "</text>\n";
  }
  for (double v = yr.lo; v <= yr.hi + 1e-9 * ystep; v += ystep) {
    const double y = py(v);
    os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left) << "\" y2=\"" << num(y)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(v)
       << "</text>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(h - 15) << "\" text-anchor=\"middle\" font-size=\"13\">"
     << xml_escape(chart.x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << num(top + ph / 2) << ")\">" << xml_escape(chart.y_label) << "</text>\n";

  // Curves.
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      os << (k ? " " : "") << num(px(s.x[k])) << ',' << num(py(s.y[k]));
    }
    os << "\"><title>" << xml_escape(s.label) << "</title></polyline>\n";
  }

  // Legend and annotations in the right margin.
  const double lx = left + pw + 15;
  double ly = top + 10;
  os << "<g font-size=\"12\">\n";
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const auto& s = chart.series[i];
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 24) << "\" y2=\"" << num(ly)
       << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\" stroke-width=\"2\""
       << (s.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
    os << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(s.label) << "</text>\n";
    ly += 18;
  }
  ly += 10;
  for (const auto& a : chart.annotations) {
    os << "<text x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" font-size=\"11\">" << xml_escape(a) << "</text>\n";
    ly += 15;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace toptrap::cli
