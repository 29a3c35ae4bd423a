#include "lorlim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>

#include "lorlim/errors.hpp"
#include "lorlim/io.hpp"
#include "lorlim/sequence.hpp"

namespace lorlim::experiments {
namespace {

using io::format;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [lo, hi) from the top 53 bits.
double uniform(std::uint64_t& state, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

int uniform_int(std::uint64_t& state, int lo, int hi) {
  return lo + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

NodeId node_near(const CausalLattice& lat, Point p) {
  const NodeId n = lat.nearest_node(p);
  if (n == kNoNode) throw DomainError("no lattice node near (" + format(p.x) + ", " + format(p.y) + ")");
  return n;
}

std::string compactum_csv(const ExtractionReport& r) {
  io::Csv csv({"delta", "epsilon", "n_delta", "sup_distance"});
  for (const auto& row : r.per_compactum)
    csv.row({format(row.delta), format(row.epsilon), format(row.n_delta), format(row.sup_distance)});
  return csv.str();
}

void add_extraction_files(Result& res, const std::string& prefix, const PipelineResult& p) {
  res.files.emplace_back(prefix + "extraction.yaml", report_yaml(p.report, &p.verdict));
  res.files.emplace_back(prefix + "limit_curve.csv", io::curve_csv(p.report.limit_curve));
  res.files.emplace_back(prefix + "limit_curve.csv.meta", io::curve_meta(p.report.limit_curve));
  res.files.emplace_back(prefix + "per_compactum.csv", compactum_csv(p.report));
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

MetricField strip_field() { return presets::minkowski(Rect{-0.5, 0.75, 0.0, 1.0}); }

}  // namespace

CausalCurve kinked_curve(const MetricField& field, int i) {
  return make_polyline(field, {{1.0, 1.0}, {1.0 / i, 0.0}, {0.0, -1.0}});
}

double kinked_length(int i) {
  const double s = 1.0 / i;
  return std::sqrt(1 - s * s) + std::sqrt(1 - (1 - s) * (1 - s));
}

MetricField punctured_plane() { return presets::minkowski_punctured(Rect{-0.25, 1.25, -1.25, 1.25}, {0, 0}, 1e-3); }

MetricField inverted_plane() {
  const MetricField base = presets::minkowski_punctured(Rect{-0.5, 1.5, -0.5, 1.5}, {0, 0}, 1e-3);
  return presets::conformal(base, Expression::parse("1/(x^2+y^2)^2"), presets::ConformalTarget::H);
}

Family make_family(const std::string& name, const MetricField& field, int first, int last) {
  if (first < 2 || last < first) throw ConfigError("family index range must satisfy 2 <= first <= last");
  Family f;
  for (int i = first; i <= last; ++i) {
    const double s = 1.0 / i;
    f.indices.push_back(i);
    if (name == "kinked") {
      f.curves.push_back(kinked_curve(field, i));
    } else if (name == "vertical") {
      f.curves.push_back(make_polyline(field, {{s, 1.0}, {s, 0.0}}));
    } else if (name == "mixed") {
      f.curves.push_back(make_polyline(field, {{s, 1.0}, {s, 0.75}, {s - 0.25, 0.5}, {-0.25, 0.0}}));
    } else {
      throw ConfigError("unknown curve family '" + name + "'");
    }
  }
  f.start = name == "kinked" ? Point{1.0, 1.0} : Point{0.0, 1.0};
  return f;
}

Family family_from_files(const std::vector<std::string>& paths, const MetricField& field, Point start) {
  Family f;
  f.start = start;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    f.indices.push_back(static_cast<double>(k + 1));
    f.curves.push_back(io::read_curve(paths[k], field));
  }
  return f;
}

std::shared_ptr<const CausalLattice> build_config_lattice(const SpacetimeConfig& cfg, const MetricField& field) {
  LatticeParams p;
  p.spacing = cfg.lattice.spacing;
  p.stencil_radius = cfg.lattice.stencil_radius;
  p.causal_tol = cfg.lattice.causal_tol ? *cfg.lattice.causal_tol : field.default_causal_tol(p.spacing);
  return build_lattice(field, p);
}

ScalarTimeField build_time_field(const SpacetimeConfig& cfg, std::shared_ptr<const CausalLattice> lat) {
  const auto& tf = cfg.time_function;
  switch (tf.kind) {
    case TimeFunctionSpec::Kind::Coordinate: {
      const double s = lat->field().future_sign();
      return ScalarTimeField::sample(std::move(lat), [s](Point p) { return s * p.y; }, TimeFieldKind::Coordinate,
                                     "coordinate time");
    }
    case TimeFunctionSpec::Kind::Expression:
      return ScalarTimeField::sample(std::move(lat), [e = tf.expression](Point p) { return e(p); },
                                     TimeFieldKind::User, tf.expression.text());
    case TimeFunctionSpec::Kind::Surface:
      return surface_function(std::move(lat), tf.surface);
    case TimeFunctionSpec::Kind::Cosmological:
      if (!tf.past_boundary) throw RegularityError("cosmological time needs a past_boundary");
      return cosmological_time(std::move(lat), PastBoundary{*tf.past_boundary});
  }
  throw ConfigError("unknown time function kind");
}

bool Result::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Result::check_le(const std::string& n, double value, double limit) {
  checks.push_back({n, value, "<=" + format(limit), value <= limit});
}

void Result::check_ge(const std::string& n, double value, double limit) {
  checks.push_back({n, value, ">=" + format(limit), value >= limit});
}

void Result::check_in(const std::string& n, double value, double lo, double hi) {
  checks.push_back({n, value, "[" + format(lo) + ";" + format(hi) + "]", value >= lo && value <= hi});
}

void Result::check_true(const std::string& n, bool ok, double value, const std::string& threshold) {
  checks.push_back({n, value, threshold, ok});
}

std::string Result::summary_csv() const {
  io::Csv csv({"check", "value", "threshold", "pass"});
  for (const auto& c : checks) csv.row({c.name, format(c.value), c.threshold, c.pass ? "1" : "0"});
  return csv.str();
}

Result reproduce_ex31(const Options&) {
  Result res;
  res.name = "ex31";
  const MetricField field = punctured_plane();

  io::Csv table({"i", "computed", "closed_form", "error", "a_i"});
  std::vector<double> idx, lengths;
  double worst = 0.0, worst_a = 0.0;
  const auto f = [](Point p) { return p.y; };
  for (int i = 2; i <= 100; ++i) {
    const CausalCurve c = kinked_curve(field, i);
    const double L = lorentzian_length(field, c).value;
    const double exact = kinked_length(i);
    const double a_i = time_reparam(f, c, 0).t_end();
    worst = std::max(worst, std::abs(L - exact));
    worst_a = std::max(worst_a, std::abs(a_i - 2.0));
    idx.push_back(i);
    lengths.push_back(L);
    table.row({std::to_string(i), format(L), format(exact), format(std::abs(L - exact)), format(a_i)});
  }
  res.files.emplace_back("lengths.csv", table.str());
  res.check_le("length_max_error", worst, 1e-9);
  res.check_le("a_i_max_error", worst_a, 1e-12);
  const double lim = extrapolate_limit(idx, lengths);
  res.check_le("length_limit_error", std::abs(lim - 1.0), 1e-3);

  const auto lat = build_lattice(field, 1.0 / 128, 2);
  const Family fam = make_family("kinked", field, 2, 512);
  const auto tau = ScalarTimeField::sample(lat, f, TimeFieldKind::Coordinate, "coordinate time");
  const PipelineResult p = time_function_pipeline(tau, f, fam.indices, fam.curves, fam.start);
  add_extraction_files(res, "", p);
  res.check_in("a", p.report.a, 0.95, 1.0);
  res.check_in("limsup_a", p.report.limsup_a, 1.95, 2.05);
  res.check_le("limit_length", p.report.limit_length, 1e-3);
  res.check_ge("limsup_length", p.report.limsup_length, 0.97);
  res.check_true("semi_continuity_fails", !p.verdict.holds(), p.verdict.limit_length - p.verdict.limsup_length, "<0");
  res.check_true("violated_a_equals_limsup", has(p.verdict.violated, "a_equals_limsup"),
                 static_cast<double>(p.verdict.violated.size()), "contains");
  res.check_true("limit_curve_causal", p.report.limit_curve.causal_class != CurveClass::NonCausal &&
                                           p.report.limit_curve.causal_class != CurveClass::Alternating);
  res.check_true("lipschitz_certificate", p.sequence.certificate.holds, p.sequence.certificate.worst_excess,
                 "<=" + format(p.sequence.certificate.slack));
  return res;
}

Result reproduce_ex32(const Options&) {
  Result res;
  res.name = "ex32";
  const MetricField field = inverted_plane();
  const CausalCurve full = make_curve(field, {0.0, 1.0}, {{1.0, 1.0}, {0.0, 0.0}}, /*open_end=*/true);
  io::Csv table({"t", "computed", "closed_form", "error"});
  double worst = 0.0;
  for (int k = 1; k <= 9; ++k) {
    const double t = k / 10.0;
    const double s = riemannian_length(field, restrict_curve(full, 0.0, t));
    const double exact = t / (1 - t) / std::numbers::sqrt2;
    worst = std::max(worst, std::abs(s - exact));
    table.row({format(t), format(s), format(exact), format(std::abs(s - exact))});
  }
  const double total = riemannian_length(field, full);
  table.row({"1", format(total), "inf", "0"});
  res.files.emplace_back("arclength.csv", table.str());
  res.check_le("arclength_max_error", worst, 1e-6);
  res.check_true("divergence_sentinel", std::isinf(total), total, "inf");
  return res;
}

namespace {

Result suite_metric_axioms(const Options& opt) {
  Result res;
  res.name = "metric-axioms";
  std::shared_ptr<const CausalLattice> lat;
  std::optional<ScalarTimeField> tau;
  if (opt.config) {
    const MetricField field = build_metric_field(*opt.config);
    lat = build_config_lattice(*opt.config, field);
    tau = build_time_field(*opt.config, lat);
  } else {
    lat = build_lattice(presets::minkowski(Rect{-1, 1, -1, 1}), 0.05, 4);
    tau = ScalarTimeField::sample(lat, [](Point p) { return p.y; });
  }
  const auto triples = sample_triples(*lat, 1000, opt.seed);
  const ZigzagGraph zz(*tau);
  const MetricAxiomReport r = metric_axiom_suite(zz, triples);

  io::Csv csv({"x1", "y1", "x2", "y2", "x3", "y3", "d12", "d23", "d13"});
  NullDistanceSolver solver(zz);
  for (std::size_t k = 0; k < std::min<std::size_t>(triples.size(), 100); ++k) {
    const auto& t = triples[k];
    std::vector<std::string> row;
    for (NodeId n : t) {
      row.push_back(format(lat->position(n).x));
      row.push_back(format(lat->position(n).y));
    }
    row.push_back(format(solver.distance(t[0], t[1])));
    row.push_back(format(solver.distance(t[1], t[2])));
    row.push_back(format(solver.distance(t[0], t[2])));
    csv.row(std::move(row));
  }
  res.files.emplace_back("triples.csv", csv.str());
  res.check_le("triples_sampled", -static_cast<double>(r.triples), -1000.0 + 0.5);
  res.check_le("symmetry_violations", static_cast<double>(r.symmetry_violations), 0);
  res.check_le("triangle_violations", static_cast<double>(r.triangle_violations), 0);
  res.check_le("definiteness_violations", static_cast<double>(r.definiteness_violations), 0);

  // Control: a constant time field cannot separate causally related points.
  const auto flat = ScalarTimeField::sample(lat, [](Point) { return 0.0; }, TimeFieldKind::User, "constant");
  const ZigzagGraph zz0(flat);
  const auto control = metric_axiom_suite(zz0, std::span(triples).first(std::min<std::size_t>(50, triples.size())));
  res.check_ge("constant_control_definiteness_violations", static_cast<double>(control.definiteness_violations), 1);
  return res;
}

Result suite_causal_identity(const Options& opt) {
  Result res;
  res.name = "causal-identity";
  const auto lat = build_lattice(presets::minkowski(Rect{-0.5, 1.5, -1, 1}), 0.01, 4);
  const auto tau = ScalarTimeField::sample(lat, [](Point p) { return p.y; });
  const ZigzagGraph zz(tau);
  NullDistanceSolver solver(zz);
  std::uint64_t state = opt.seed;
  io::Csv pairs({"x1", "y1", "x2", "y2", "null_distance", "time_difference", "error"});
  std::size_t found = 0, violations = 0;
  double worst = 0.0;
  while (found < 200) {
    const NodeId a = static_cast<NodeId>(splitmix64(state) % lat->node_count());
    const int dj = uniform_int(state, 1, 60);
    const int di = uniform_int(state, -dj, dj);
    const NodeId b = lat->node_at(lat->column(a) + di, lat->row(a) + dj);
    if (b == kNoNode) continue;
    const NodeId src[] = {a};
    if (lattice_d_L(*lat, src, b) == -kInf) continue;
    ++found;
    const double d = solver.distance(a, b);
    const double dt = tau.value(b) - tau.value(a);
    const double err = std::abs(d - dt);
    worst = std::max(worst, err);
    if (err > 1e-12) ++violations;
    pairs.row({format(lat->position(a).x), format(lat->position(a).y), format(lat->position(b).x),
               format(lat->position(b).y), format(d), format(dt), format(err)});
  }
  res.files.emplace_back("causal_pairs.csv", pairs.str());
  res.check_le("causal_pair_violations", static_cast<double>(violations), 0);
  res.check_le("causal_pair_max_error", worst, 1e-12);

  const NullDistanceResult sp = solver.query(node_near(*lat, {0, 0}), node_near(*lat, {1, 0}));
  io::Csv witness({"x", "y", "orientation"});
  for (std::size_t k = 0; k < sp.witness_path.size(); ++k) {
    const Point p = lat->position(sp.witness_path[k]);
    const char* o = k == 0 ? "start" : sp.piece_orientations[k - 1] == TimeDirection::Future ? "future" : "past";
    witness.row({format(p.x), format(p.y), o});
  }
  res.files.emplace_back("spacelike_witness.csv", witness.str());
  res.check_le("spacelike_relative_error", std::abs(sp.value - 1.0), opt.tol);
  return res;
}

Result suite_surface_function(const Options& opt) {
  Result res;
  res.name = "surface-function";
  const MetricField field = presets::minkowski(Rect{-1, 1, -1, 1});
  const auto lat = build_lattice(field, 0.01, 4);
  const std::vector<Point> S = {{-1, 0}, {1, 0}};
  const ScalarTimeField tau = surface_function(lat, S);
  std::uint64_t state = opt.seed;
  io::Csv probes({"x", "y", "tau_s", "coordinate_time", "relative_error"});
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Point p{uniform(state, -0.9, 0.9), uniform(state, -0.9, 0.9)};
    const double v = tau(p);
    const double rel = std::abs(v - p.y) / std::max(std::abs(p.y), lat->spacing());
    worst = std::max(worst, rel);
    probes.row({format(p.x), format(p.y), format(v), format(p.y), format(rel)});
  }
  res.files.emplace_back("probes.csv", probes.str());
  res.check_le("probe_max_relative_error", worst, opt.tol);
  res.check_le("unrelated_nodes", static_cast<double>(tau.warnings().size()), 0);
  res.check_le("monotonicity_violations", static_cast<double>(monotonicity_violations(tau, true)), 0);

  const GradientReport g = gradient_report(tau, Rect{-0.9, 0.9, -0.9, 0.9});
  res.files.emplace_back("gradient.csv", io::gradient_csv(g));
  res.check_le("worst_gnorm_deviation", std::abs(g.worst_gnorm + 1.0), 0.05);
  res.check_le("trimmed_gnorm_deviation", std::abs(g.worst_gnorm_trimmed + 1.0), 0.05);

  std::size_t chords = 0, causal = 0;
  io::Csv levels({"level", "x", "y"});
  for (double t : {-0.5, -0.25, 0.25, 0.5}) {
    const auto lines = level_set(tau, t);
    for (const auto& line : lines) {
      chords += line.empty() ? 0 : line.size() - 1;
      for (const Point& p : line) levels.row({format(t), format(p.x), format(p.y)});
    }
    causal += causal_chords(field, lines, lat->causal_tol());
  }
  res.files.emplace_back("level_sets.csv", levels.str());
  res.check_ge("level_set_chords", static_cast<double>(chords), 1);
  res.check_le("level_set_causal_chords", static_cast<double>(causal), 0);
  return res;
}

Result suite_cosmological(const Options& opt) {
  Result res;
  res.name = "cosmological";
  const MetricField field = strip_field();
  const auto lat = build_lattice(field, 1.0 / 128, 2);
  const PastBoundary boundary{0.0};

  for (const std::string name : {"mixed", "vertical"}) {
    const Family fam = make_family(name, field, 2, 512);
    const PipelineResult p = cosmological_pipeline(lat, boundary, fam.indices, fam.curves, fam.start);
    add_extraction_files(res, name + "_", p);
    res.check_true(name + "_verdict_holds", p.verdict.holds(), p.verdict.limit_length - p.verdict.limsup_length,
                   ">=-" + format(opt.tol) + "*limsup");
    res.check_ge(name + "_limit_minus_limsup", p.verdict.limit_length - p.verdict.limsup_length * (1 - opt.tol), 0);
    res.check_le(name + "_hypotheses_violated", static_cast<double>(p.verdict.violated.size()), 0);
    res.check_le(name + "_gradient_b_error", std::abs(p.gradient.b - 1.0), opt.tol);
    res.check_true(name + "_lipschitz_certificate", p.sequence.certificate.holds, p.sequence.certificate.worst_excess,
                   "<=" + format(p.sequence.certificate.slack));
    const double expected = name == "mixed" ? 0.75 : 1.0;
    res.check_le(name + "_limit_length_error", std::abs(p.report.limit_length - expected), opt.tol * expected);
  }

  // Closed-form lengths of the mixed family.
  io::Csv table({"i", "computed", "closed_form", "error"});
  double worst = 0.0;
  for (int i = 2; i <= 64; ++i) {
    const Family f = make_family("mixed", field, i, i);
    const double L = lorentzian_length(field, f.curves[0]).value;
    const double exact = 0.25 + std::sqrt(0.25 - 1.0 / (static_cast<double>(i) * i));
    worst = std::max(worst, std::abs(L - exact));
    table.row({std::to_string(i), format(L), format(exact), format(std::abs(L - exact))});
  }
  res.files.emplace_back("mixed_lengths.csv", table.str());
  res.check_le("mixed_length_max_error", worst, 1e-9);

  const ScalarTimeField tau = cosmological_time(lat, boundary);
  res.check_le("monotonicity_violations", static_cast<double>(monotonicity_violations(tau, true)), 0);

  // The punctured plane is not regular: paths into the puncture keep tau > 0.
  bool irregular = false;
  try {
    const MetricField punct = punctured_plane();
    cosmological_time(build_lattice(punct, 1.0 / 64, 2), PastBoundary{-1.25});
  } catch (const RegularityError&) {
    irregular = true;
  }
  res.check_true("punctured_regularity_error", irregular);
  return res;
}

Result suite_gradient_bound(const Options& opt) {
  Result res;
  res.name = "gradient-bound";
  const MetricField field = presets::minkowski(Rect{-1, 1, -1, 1});
  const auto lat = build_lattice(field, 0.02, 4);
  std::uint64_t state = opt.seed;
  std::vector<CausalCurve> curves;
  while (curves.size() < 100) {
    int i = uniform_int(state, 10, lat->columns() - 11);
    int j = uniform_int(state, 0, lat->rows() / 4);
    std::vector<Point> pts{lat->grid_point(i, j)};
    const int segments = uniform_int(state, 1, 5);
    for (int s = 0; s < segments; ++s) {
      const int dj = uniform_int(state, 1, 10);
      const int di = uniform_int(state, -dj, dj);
      if (i + di < 0 || i + di >= lat->columns() || j + dj >= lat->rows()) break;
      i += di;
      j += dj;
      pts.push_back(lat->grid_point(i, j));
    }
    if (pts.size() < 2) continue;
    curves.push_back(make_polyline(field, pts));
  }
  io::Csv csv({"b", "pairs", "bound_violations", "worst_slack", "identity_pairs", "identity_violations",
               "max_identity_error"});
  for (double scale : {1.0, 2.0}) {
    const auto f = [scale](Point p) { return scale * p.y; };
    const auto tau = ScalarTimeField::sample(lat, f);
    const GradientReport g = gradient_report(tau, Rect{-0.9, 0.9, -0.9, 0.9});
    const ZigzagGraph zz(tau);
    const auto r = length_vs_nulldistance_bound(f, g.b, field, curves, &zz, 10 * QuadratureConfig{}.rel_tol);
    csv.row({format(g.b), format(r.pairs), format(r.bound_violations), format(r.worst_slack),
             format(r.identity_pairs), format(r.identity_violations), format(r.max_identity_error)});
    const std::string tag = "b" + format(scale);
    res.check_le(tag + "_gradient_error", std::abs(g.b - scale), 1e-9);
    res.check_le(tag + "_bound_violations", static_cast<double>(r.bound_violations), 0);
    res.check_le(tag + "_identity_violations", static_cast<double>(r.identity_violations), 0);
  }
  res.files.emplace_back("gradient_bound.csv", csv.str());
  return res;
}

Result suite_convergence(const Options& opt) {
  Result res;
  res.name = "convergence";
  std::vector<double> ladder = opt.ladder.empty() ? std::vector<double>{0.04, 0.02, 0.01} : opt.ladder;
  for (std::size_t k = 1; k < ladder.size(); ++k)
    if (!(ladder[k] < ladder[k - 1])) throw ConfigError("resolution ladder must be strictly decreasing");
  const MetricField field = presets::minkowski(Rect{-1, 1, -0.2, 1.2});
  // Slopes with no small-denominator representation, so every stencil errs.
  const std::vector<Point> probes = {{0.04, 0.4},  {0.12, 0.52}, {0.2, 0.64},  {0.28, 0.8},  {-0.16, 0.72},
                                     {0.36, 0.92}, {-0.32, 1.0}, {0.44, 1.08}, {0.08, 0.84}, {-0.52, 1.12}};
  io::Csv csv({"spacing", "stencil_radius", "probe", "x", "y", "exact", "lattice", "error"});
  std::vector<std::vector<double>> errors(probes.size());
  for (double h : ladder) {
    const int R = std::max(1, static_cast<int>(std::lround(0.08 / h)));
    const auto lat = build_lattice(field, h, R);
    const NodeId src[] = {node_near(*lat, {0, 0})};
    const auto dp = longest_paths_from(*lat, src);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const NodeId n = node_near(*lat, probes[k]);
      const Point q = lat->position(n);
      const double exact = std::sqrt(q.y * q.y - q.x * q.x);
      const double err = std::abs(dp[static_cast<std::size_t>(n)] - exact);
      errors[k].push_back(err);
      csv.row({format(h), std::to_string(R), std::to_string(k), format(q.x), format(q.y), format(exact),
               format(dp[static_cast<std::size_t>(n)]), format(err)});
    }
  }
  res.files.emplace_back("d_L_convergence.csv", csv.str());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    bool mono = true;
    for (std::size_t m = 1; m < errors[k].size(); ++m) mono &= errors[k][m] < errors[k][m - 1];
    res.check_true("probe" + std::to_string(k) + "_error_decreasing", mono, errors[k].back(), "strictly decreasing");
  }

  // Adding edges never lengthens a null distance.
  const MetricField flat = presets::minkowski(Rect{-1, 1, -1, 1});
  const auto f = [](Point p) { return p.y + 0.25 * p.x * p.x; };
  std::vector<std::vector<double>> prev;
  io::Csv nd({"stencil_radius", "source", "max_increase"});
  double worst_increase = -kInf;
  std::uint64_t state = opt.seed;
  std::vector<Point> sources;
  for (int k = 0; k < 5; ++k) sources.push_back({uniform(state, -0.8, 0.8), uniform(state, -0.8, 0.8)});
  for (int R : {1, 2, 4}) {
    const auto lat = build_lattice(flat, 0.04, R);
    const ZigzagGraph zz(ScalarTimeField::sample(lat, f));
    NullDistanceSolver solver(zz);
    std::vector<std::vector<double>> cur;
    for (std::size_t s = 0; s < sources.size(); ++s) {
      cur.push_back(solver.distances_from(node_near(*lat, sources[s])));
      double inc = -kInf;
      if (!prev.empty())
        for (std::size_t n = 0; n < cur[s].size(); ++n) inc = std::max(inc, cur[s][n] - prev[s][n]);
      if (!prev.empty()) worst_increase = std::max(worst_increase, inc);
      nd.row({std::to_string(R), std::to_string(s), format(inc)});
    }
    prev = std::move(cur);
  }
  res.files.emplace_back("null_distance_stencil.csv", nd.str());
  res.check_le("null_distance_max_increase", worst_increase, 1e-12);
  return res;
}

Result suite_topology(const Options&) {
  Result res;
  res.name = "topology";
  io::Csv csv({"field", "cx", "cy", "radius", "ball_nodes", "r_inner", "r_outer"});
  const std::vector<double> radii = {0.0, 0.05, 0.1, 0.2};
  auto run = [&](const std::string& tag, const MetricField& field, std::vector<Point> centers) {
    const auto lat = build_lattice(field, 0.01, 4);
    const ZigzagGraph zz(ScalarTimeField::sample(lat, [](Point p) { return p.y; }));
    const auto rows = topology_compatibility_probe(zz, centers, radii);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      csv.row({tag, format(r.center.x), format(r.center.y), format(r.radius), format(r.ball_nodes),
               format(r.r_inner), format(r.r_outer)});
      const std::string name = tag + "_center" + std::to_string(k / radii.size()) + "_r" + format(r.radius);
      if (r.radius == 0.0) {
        res.check_le(name + "_ball_nodes", static_cast<double>(r.ball_nodes), 1);
      } else {
        res.check_ge(name + "_inner_ratio", r.r_inner / r.radius, 0.5);
        res.check_le(name + "_outer_ratio", r.r_outer / r.radius, tag == "minkowski" ? 2.0 : 1e6);
      }
    }
  };
  run("minkowski", presets::minkowski(Rect{-1, 1, -1, 1}), {{0, 0}, {0.3, -0.2}});
  run("punctured", presets::minkowski_punctured(Rect{-1, 1, -1, 1}, {0, 0}, 0.05), {{0.06, 0}});
  res.files.emplace_back("balls.csv", csv.str());
  return res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"metric-axioms", "causal-identity", "surface-function",
                                                 "cosmological",  "gradient-bound",          "convergence",
                                                 "topology"};
  return names;
}

std::vector<Result> run_suite(const std::string& name, const Options& opt) {
  if (name == "all") {
    std::vector<Result> out;
    for (const auto& n : suite_names()) out.push_back(run_suite(n, opt).front());
    return out;
  }
  if (name == "metric-axioms") return {suite_metric_axioms(opt)};
  if (name == "causal-identity") return {suite_causal_identity(opt)};
  if (name == "surface-function") return {suite_surface_function(opt)};
  if (name == "cosmological") return {suite_cosmological(opt)};
  if (name == "gradient-bound") return {suite_gradient_bound(opt)};
  if (name == "convergence" || name == "refinement") return {suite_convergence(opt)};
  if (name == "topology") return {suite_topology(opt)};
  throw ConfigError("unknown suite '" + name + "'");
}

Result run_extract(const SpacetimeConfig& cfg) {
  if (!cfg.sequence) throw ConfigError(cfg.source + ": extract needs a 'sequence' section");
  const SequenceSpec& seq_cfg = *cfg.sequence;
  Result res;
  res.name = "extract";
  const MetricField field = build_metric_field(cfg);
  const auto lat = build_config_lattice(cfg, field);
  Family fam;
  if (!seq_cfg.curve_files.empty()) {
    if (!seq_cfg.start) throw ConfigError(cfg.source + ": sequence.curves needs sequence.start");
    fam = family_from_files(seq_cfg.curve_files, field, *seq_cfg.start);
  } else {
    fam = make_family(seq_cfg.family, field, seq_cfg.first, seq_cfg.last);
  }
  if (seq_cfg.start) fam.start = *seq_cfg.start;
  ToleranceSchedule sched;
  sched.eps0 = seq_cfg.eps0;
  sched.max_stages = seq_cfg.max_stages;

  const ScalarTimeField tau = build_time_field(cfg, lat);
  TimeFunction exact;
  if (cfg.time_function.kind == TimeFunctionSpec::Kind::Coordinate) {
    const double s = field.future_sign();
    exact = [s](Point p) { return s * p.y; };
  } else if (cfg.time_function.kind == TimeFunctionSpec::Kind::Expression) {
    exact = [e = cfg.time_function.expression](Point p) { return e(p); };
  }
  const PipelineResult p = time_function_pipeline(tau, exact, fam.indices, fam.curves, fam.start, sched);
  add_extraction_files(res, "", p);
  res.check_le("a_le_limsup_a", p.report.a - p.report.limsup_a, 1e-12);
  res.check_true("lipschitz_certificate", p.sequence.certificate.holds, p.sequence.certificate.worst_excess,
                 "<=" + format(p.sequence.certificate.slack));
  return res;
}

void write_result(const Result& r, const std::string& out_dir) {
  const std::filesystem::path base = std::filesystem::path(out_dir) / r.name;
  for (const auto& [name, text] : r.files) io::write_file((base / name).string(), text);
  io::write_file((base / "summary.csv").string(), r.summary_csv());
}

}  // namespace lorlim::experiments
