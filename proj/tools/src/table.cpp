#include "toptrap/cli/table.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace toptrap::cli {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw FormatError("line " + std::to_string(line_no) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no column '" + name + "'");
}

std::vector<double> Table::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

Table table_from_sweep(const SweepResult& r) {
  Table t;
  t.params = r.provenance;
  for (const Axis& a : r.axes) {
    t.axes.push_back({a.name, a.min, a.max, a.size(), std::string(scale_name(a.scale))});
    t.columns.push_back(a.name);
  }
  for (const auto& c : r.columns) t.columns.push_back(c);
  const std::size_t n = r.rows();
  t.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row = r.coordinates(i);
    for (const auto& tab : r.tables) row.push_back(tab[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_csv(std::ostream& os, const Table& t) {
  for (const auto& [k, v] : t.params) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (have_header) throw FormatError("line " + std::to_string(line_no) + ": comment after header");
      const auto colon = line.find(": ");
      if (line.size() < 2 || colon == std::string::npos) {
        throw FormatError("line " + std::to_string(line_no) + ": malformed parameter line");
      }
      t.params.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
      continue;
    }
    if (!have_header) {
      t.columns = split(line, ',');
      have_header = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != t.columns.size()) {
      throw FormatError("line " + std::to_string(line_no) + ": expected " + std::to_string(t.columns.size()) +
                        " fields, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c, line_no));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw FormatError("missing column header row");
  return t;
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["params"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.params) j["params"][k] = v;
  j["axes"] = nlohmann::ordered_json::array();
  for (const auto& a : t.axes) {
    j["axes"].push_back({{"name", a.name}, {"min", a.min}, {"max", a.max}, {"steps", a.steps}, {"scale", a.scale}});
  }
  j["columns"] = t.columns;
  j["data"] = t.rows;
  os << j.dump(1) << '\n';
}

}  // namespace toptrap::cli
