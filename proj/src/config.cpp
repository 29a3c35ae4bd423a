#include "lorlim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "lorlim/errors.hpp"

namespace lorlim {
namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& n, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (n.IsDefined() && n.Mark().line >= 0) os << ":" << n.Mark().line + 1;
    os << ": " << what;
    throw ConfigError(os.str());
  }

  void allow_keys(const YAML::Node& map, std::initializer_list<const char*> keys,
                  const std::string& section) const {
    if (!map.IsMap()) fail(map, "'" + section + "' must be a mapping");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : map) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, "unknown key '" + key + "' in " + section);
    }
  }

  double number(const YAML::Node& n, const std::string& what) const {
    try {
      return n.as<double>();
    } catch (const YAML::Exception&) {
      fail(n, what + " must be a number");
    }
  }

  int integer(const YAML::Node& n, const std::string& what) const {
    try {
      return n.as<int>();
    } catch (const YAML::Exception&) {
      fail(n, what + " must be an integer");
    }
  }

  std::string string(const YAML::Node& n, const std::string& what) const {
    if (!n.IsScalar()) fail(n, what + " must be a scalar");
    return n.as<std::string>();
  }

  Point point(const YAML::Node& n, const std::string& what) const {
    if (!n.IsSequence() || n.size() != 2) fail(n, what + " must be a two-element list [x, y]");
    return {number(n[0], what), number(n[1], what)};
  }

  Expression expression(const YAML::Node& n, const std::string& what) const {
    const std::string text = string(n, what);
    try {
      return Expression::parse(text);
    } catch (const ConfigError& e) {
      fail(n, e.what());
    }
  }

 private:
  std::string source_;
};

ExcludedRegion read_excluded(const Reader& r, const YAML::Node& n) {
  r.allow_keys(n, {"shape", "center", "radius", "min", "max"}, "excluded entry");
  const std::string shape = n["shape"] ? r.string(n["shape"], "shape") : "disk";
  if (shape == "disk") {
    if (!n["center"] || !n["radius"]) r.fail(n, "disk needs center and radius");
    const double radius = r.number(n["radius"], "radius");
    if (!(radius > 0)) r.fail(n["radius"], "radius must be positive");
    return ExcludedRegion::disk(r.point(n["center"], "center"), radius);
  }
  if (shape == "rect") {
    if (!n["min"] || !n["max"]) r.fail(n, "rect needs min and max");
    return ExcludedRegion::rect(r.point(n["min"], "min"), r.point(n["max"], "max"));
  }
  r.fail(n["shape"], "unknown shape '" + shape + "' (expected disk or rect)");
}

}  // namespace

SpacetimeConfig parse_config(std::string_view text, const std::string& source) {
  Reader r(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  SpacetimeConfig cfg;
  cfg.source = source;
  if (root.IsNull()) return cfg;
  r.allow_keys(root,
               {"preset", "domain", "excluded", "puncture", "metric", "conformal", "orientation",
                "lattice", "time_function", "sequence"},
               "config");

  if (root["preset"]) cfg.preset = r.string(root["preset"], "preset");
  static const std::set<std::string> kPresets{"minkowski", "minkowski_punctured", "conformal",
                                              "expression"};
  if (!kPresets.count(cfg.preset)) r.fail(root["preset"], "unknown preset '" + cfg.preset + "'");

  if (const auto d = root["domain"]) {
    r.allow_keys(d, {"x_min", "x_max", "y_min", "y_max"}, "domain");
    for (const char* k : {"x_min", "x_max", "y_min", "y_max"})
      if (!d[k]) r.fail(d, std::string("domain.") + k + " is required");
    cfg.domain = {r.number(d["x_min"], "x_min"), r.number(d["x_max"], "x_max"),
                  r.number(d["y_min"], "y_min"), r.number(d["y_max"], "y_max")};
    if (!(cfg.domain.x_max > cfg.domain.x_min && cfg.domain.y_max > cfg.domain.y_min))
      r.fail(d, "domain must satisfy x_min < x_max and y_min < y_max");
  }

  if (const auto ex = root["excluded"]) {
    if (!ex.IsSequence()) r.fail(ex, "excluded must be a list");
    for (const auto& e : ex) cfg.excluded.push_back(read_excluded(r, e));
  }

  if (const auto p = root["puncture"]) {
    r.allow_keys(p, {"center", "radius"}, "puncture");
    if (p["center"]) cfg.puncture_center = r.point(p["center"], "puncture.center");
    if (p["radius"]) cfg.puncture_radius = r.number(p["radius"], "puncture.radius");
  }

  if (const auto m = root["metric"]) {
    r.allow_keys(m, {"g_xx", "g_xy", "g_yy", "h_xx", "h_xy", "h_yy"}, "metric");
    presets::ComponentExpressions c{Expression::constant(1), Expression::constant(0),
                                    Expression::constant(-1), Expression::constant(1),
                                    Expression::constant(0), Expression::constant(1)};
    if (m["g_xx"]) c.gxx = r.expression(m["g_xx"], "g_xx");
    if (m["g_xy"]) c.gxy = r.expression(m["g_xy"], "g_xy");
    if (m["g_yy"]) c.gyy = r.expression(m["g_yy"], "g_yy");
    if (m["h_xx"]) c.hxx = r.expression(m["h_xx"], "h_xx");
    if (m["h_xy"]) c.hxy = r.expression(m["h_xy"], "h_xy");
    if (m["h_yy"]) c.hyy = r.expression(m["h_yy"], "h_yy");
    cfg.components = c;
  }

  if (const auto c = root["conformal"]) {
    r.allow_keys(c, {"base", "factor", "target"}, "conformal");
    if (c["base"]) cfg.conformal_base = r.string(c["base"], "conformal.base");
    if (cfg.conformal_base != "minkowski" && cfg.conformal_base != "minkowski_punctured")
      r.fail(c["base"], "conformal.base must be minkowski or minkowski_punctured");
    if (c["factor"]) cfg.conformal_factor = r.expression(c["factor"], "conformal.factor");
    if (c["target"]) {
      const auto t = r.string(c["target"], "conformal.target");
      if (t == "h") cfg.conformal_target = presets::ConformalTarget::H;
      else if (t == "g") cfg.conformal_target = presets::ConformalTarget::G;
      else if (t == "both") cfg.conformal_target = presets::ConformalTarget::Both;
      else r.fail(c["target"], "conformal.target must be h, g or both");
    }
  }

  if (const auto o = root["orientation"]) {
    r.allow_keys(o, {"time_axis", "future"}, "orientation");
    if (o["time_axis"] && r.string(o["time_axis"], "time_axis") != "y")
      r.fail(o["time_axis"], "only time_axis: y is supported");
    if (o["future"]) {
      const double s = r.number(o["future"], "orientation.future");
      if (s != 1.0 && s != -1.0) r.fail(o["future"], "orientation.future must be +1 or -1");
      cfg.future_sign = s;
    }
  }

  if (const auto l = root["lattice"]) {
    r.allow_keys(l, {"spacing", "stencil_radius", "causal_tol"}, "lattice");
    if (l["spacing"]) cfg.lattice.spacing = r.number(l["spacing"], "lattice.spacing");
    if (l["stencil_radius"]) cfg.lattice.stencil_radius = r.integer(l["stencil_radius"], "stencil_radius");
    if (l["causal_tol"]) cfg.lattice.causal_tol = r.number(l["causal_tol"], "causal_tol");
    if (!(cfg.lattice.spacing > 0)) r.fail(l, "lattice.spacing must be positive");
    if (cfg.lattice.stencil_radius < 1) r.fail(l, "lattice.stencil_radius must be >= 1");
    if (cfg.lattice.causal_tol && *cfg.lattice.causal_tol < 0) r.fail(l, "causal_tol must be >= 0");
  }

  if (const auto t = root["time_function"]) {
    r.allow_keys(t, {"kind", "expression", "surface", "past_boundary"}, "time_function");
    auto& tf = cfg.time_function;
    const std::string kind = t["kind"] ? r.string(t["kind"], "time_function.kind") : "coordinate";
    if (kind == "coordinate") tf.kind = TimeFunctionSpec::Kind::Coordinate;
    else if (kind == "expression") tf.kind = TimeFunctionSpec::Kind::Expression;
    else if (kind == "surface") tf.kind = TimeFunctionSpec::Kind::Surface;
    else if (kind == "cosmological") tf.kind = TimeFunctionSpec::Kind::Cosmological;
    else r.fail(t["kind"], "unknown time_function.kind '" + kind + "'");
    if (t["expression"]) tf.expression = r.expression(t["expression"], "time_function.expression");
    if (const auto s = t["surface"]) {
      if (!s.IsSequence()) r.fail(s, "time_function.surface must be a list of points");
      for (const auto& p : s) tf.surface.push_back(r.point(p, "surface point"));
    }
    if (const auto pb = t["past_boundary"]) {
      r.allow_keys(pb, {"y"}, "past_boundary");
      if (!pb["y"]) r.fail(pb, "past_boundary.y is required");
      tf.past_boundary = r.number(pb["y"], "past_boundary.y");
    }
    if (tf.kind == TimeFunctionSpec::Kind::Surface && tf.surface.size() < 2)
      r.fail(t, "surface time function needs at least two surface points");
  }

  if (const auto s = root["sequence"]) {
    r.allow_keys(s, {"family", "first", "last", "curves", "start", "eps0", "max_stages"}, "sequence");
    SequenceSpec seq;
    if (s["family"]) seq.family = r.string(s["family"], "sequence.family");
    if (s["first"]) seq.first = r.integer(s["first"], "sequence.first");
    if (s["last"]) seq.last = r.integer(s["last"], "sequence.last");
    if (const auto c = s["curves"]) {
      if (!c.IsSequence()) r.fail(c, "sequence.curves must be a list of CSV paths");
      for (const auto& f : c) seq.curve_files.push_back(r.string(f, "curve path"));
    }
    if (s["start"]) seq.start = r.point(s["start"], "sequence.start");
    if (s["eps0"]) seq.eps0 = r.number(s["eps0"], "sequence.eps0");
    if (s["max_stages"]) seq.max_stages = r.integer(s["max_stages"], "sequence.max_stages");
    if (seq.family.empty() && seq.curve_files.empty())
      r.fail(s, "sequence needs a family or a list of curves");
    if (seq.last < seq.first) r.fail(s, "sequence.last must be >= sequence.first");
    cfg.sequence = seq;
  }
  return cfg;
}

SpacetimeConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

MetricField build_metric_field(const SpacetimeConfig& cfg) {
  auto base = [&](const std::string& preset) {
    if (preset == "minkowski_punctured")
      return presets::minkowski_punctured(cfg.domain, cfg.puncture_center, cfg.puncture_radius,
                                          cfg.excluded);
    return presets::minkowski(cfg.domain, cfg.excluded);
  };

  MetricField field = [&] {
    if (cfg.preset == "conformal")
      return presets::conformal(base(cfg.conformal_base), cfg.conformal_factor, cfg.conformal_target);
    if (cfg.preset == "expression") {
      if (!cfg.components) throw ConfigError(cfg.source + ": preset 'expression' needs a metric section");
      return presets::from_expressions(cfg.domain, *cfg.components, cfg.excluded, cfg.future_sign);
    }
    return base(cfg.preset);
  }();
  field.verify();
  return field;
}

}  // namespace lorlim
