#include "lorlim/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lorlim/errors.hpp"

namespace lorlim::io {

std::string format(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format(std::size_t v) { return std::to_string(v); }

Csv::Csv(std::vector<std::string> header, std::string comment_prefix) : columns_(header.size()) {
  text_ += comment_prefix;
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) text_ += comment_prefix.empty() ? "," : " ";
    text_ += header[k];
  }
  text_ += '\n';
}

Csv& Csv::row(std::vector<std::string> cells) {
  if (cells.size() != columns_) throw DomainError("csv row has the wrong number of cells");
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) text_ += ',';
    text_ += cells[k];
  }
  text_ += '\n';
  return *this;
}

std::string Csv::str() const { return text_; }

std::string curve_csv(const CausalCurve& c) {
  Csv csv({"t", "x", "y"});
  for (std::size_t k = 0; k < c.size(); ++k)
    csv.row({format(c.params[k]), format(c.points[k].x), format(c.points[k].y)});
  return csv.str();
}

std::string curve_meta(const CausalCurve& c) {
  std::string s = "orientation: ";
  s += c.orientation == TimeDirection::Future ? "future" : c.orientation == TimeDirection::Past ? "past" : "none";
  s += "\nopen_end: ";
  s += c.open_end ? "true" : "false";
  s += "\ncausal_class: ";
  s += to_string(c.causal_class);
  s += '\n';
  return s;
}

std::string length_csv(const LengthReport& r) {
  Csv csv({"segment", "length"});
  for (std::size_t k = 0; k < r.per_segment.size(); ++k) csv.row({format(k), format(r.per_segment[k])});
  return csv.str();
}

std::string time_field_csv(const ScalarTimeField& f) {
  Csv csv({"x", "y", "value"});
  const auto& lat = f.lattice();
  for (std::size_t n = 0; n < lat.node_count(); ++n) {
    const Point p = lat.position(static_cast<NodeId>(n));
    csv.row({format(p.x), format(p.y), format(f.values()[n])});
  }
  return csv.str();
}

std::string gradient_csv(const GradientReport& r) {
  Csv csv({"x", "y", "gx", "gy", "gnorm"});
  for (const auto& s : r.samples) csv.row({format(s.p.x), format(s.p.y), format(s.gx), format(s.gy), format(s.gnorm)});
  return csv.str();
}

std::string time_field_plot(const ScalarTimeField& f) {
  std::string out = "# x y value\n";
  const auto& lat = f.lattice();
  int last_row = -1;
  for (std::size_t n = 0; n < lat.node_count(); ++n) {
    const NodeId id = static_cast<NodeId>(n);
    if (last_row >= 0 && lat.row(id) != last_row) out += '\n';
    last_row = lat.row(id);
    const Point p = lat.position(id);
    out += format(p.x) + ' ' + format(p.y) + ' ' + format(f.value(id)) + '\n';
  }
  return out;
}

void write_file(const std::string& path, std::string_view text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path + " for writing");
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!os) throw ConfigError("failed writing " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_curve(const std::string& path, const CausalCurve& c) {
  write_file(path, curve_csv(c));
  write_file(path + ".meta", curve_meta(c));
}

namespace {

double parse_number(std::string_view s, const std::string& where) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ConfigError(where + ": bad number '" + std::string(s) + "'");
  return v;
}

}  // namespace

CausalCurve read_curve(const std::string& path, const MetricField& field) {
  std::istringstream in(read_file(path));
  std::string line;
  std::vector<double> params;
  std::vector<Point> points;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.rfind("t,", 0) == 0) continue;
    const std::string where = path + ":" + std::to_string(lineno);
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError(where + ": expected t,x,y");
    const std::string_view sv(line);
    params.push_back(parse_number(sv.substr(0, c1), where));
    points.push_back({parse_number(sv.substr(c1 + 1, c2 - c1 - 1), where), parse_number(sv.substr(c2 + 1), where)});
  }
  bool open_end = false;
  if (std::filesystem::exists(path + ".meta")) {
    std::istringstream meta(read_file(path + ".meta"));
    while (std::getline(meta, line))
      if (line.rfind("open_end:", 0) == 0) open_end = line.find("true") != std::string::npos;
  }
  return make_curve(field, std::move(params), std::move(points), open_end);
}

}  // namespace lorlim::io
