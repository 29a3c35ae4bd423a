#include "lorlim/time_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lorlim/errors.hpp"

namespace lorlim {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double distance_to_segment(Point p, Point a, Point b) {
  const Vec2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double s = len2 > 0 ? ((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (p - lerp(a, b, s)).norm();
}

}  // namespace

const char* to_string(TimeFieldKind k) {
  switch (k) {
    case TimeFieldKind::SurfaceFunction: return "surface_function";
    case TimeFieldKind::Cosmological: return "cosmological";
    case TimeFieldKind::Coordinate: return "coordinate";
    case TimeFieldKind::User: return "user";
  }
  return "?";
}

ScalarTimeField::ScalarTimeField(std::shared_ptr<const CausalLattice> lattice, std::vector<double> values,
                                 TimeFieldKind kind, std::string meta)
    : lattice_(std::move(lattice)), values_(std::move(values)), kind_(kind), meta_(std::move(meta)) {
  if (!lattice_ || values_.size() != lattice_->node_count())
    throw DomainError("time field needs one value per lattice node");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("time field values must be finite");
}

ScalarTimeField ScalarTimeField::sample(std::shared_ptr<const CausalLattice> lattice, const TimeFunction& f,
                                        TimeFieldKind kind, std::string meta) {
  std::vector<double> v(lattice->node_count());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = f(lattice->position(static_cast<NodeId>(n)));
  return ScalarTimeField(std::move(lattice), std::move(v), kind, std::move(meta));
}

double ScalarTimeField::operator()(Point p) const {
  const CausalLattice& lat = *lattice_;
  const Rect& d = lat.field().domain();
  const double h = lat.spacing();
  if (!d.contains(p, 0.5 * h)) throw DomainError("time field evaluated outside the chart");
  const double fx = (p.x - d.x_min) / h;
  const double fy = (p.y - d.y_min) / h;
  const int i0 = std::clamp(static_cast<int>(std::floor(fx)), 0, std::max(0, lat.columns() - 2));
  const int j0 = std::clamp(static_cast<int>(std::floor(fy)), 0, std::max(0, lat.rows() - 2));
  const double sx = std::clamp(fx - i0, 0.0, 1.0);
  const double sy = std::clamp(fy - j0, 0.0, 1.0);
  double acc = 0.0, wsum = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const NodeId n = lat.node_at(i0 + a, j0 + b);
      if (n == kNoNode) continue;
      const double w = (a ? sx : 1 - sx) * (b ? sy : 1 - sy);
      acc += w * value(n);
      wsum += w;
    }
  }
  if (wsum > 1e-12) return acc / wsum;
  const NodeId n = lat.nearest_node(p);
  if (n == kNoNode) throw DomainError("time field has no node near the evaluation point");
  return value(n);
}

TimeFunction ScalarTimeField::as_function() const {
  return [self = *this](Point p) { return self(p); };
}

std::vector<double> longest_paths_from(const CausalLattice& lat, std::span<const NodeId> sources) {
  std::vector<double> dp(lat.node_count(), kNegInf);
  for (NodeId s : sources) dp[static_cast<std::size_t>(s)] = 0.0;
  for (std::size_t n = 0; n < dp.size(); ++n) {
    if (dp[n] == kNegInf) continue;
    for (const auto& e : lat.future_edges(static_cast<NodeId>(n))) {
      double& t = dp[static_cast<std::size_t>(e.to)];
      t = std::max(t, dp[n] + e.length);
    }
  }
  return dp;
}

std::vector<double> longest_paths_to(const CausalLattice& lat, std::span<const NodeId> targets) {
  std::vector<double> dp(lat.node_count(), kNegInf);
  for (NodeId s : targets) dp[static_cast<std::size_t>(s)] = 0.0;
  for (std::size_t n = dp.size(); n-- > 0;) {
    for (const auto& e : lat.future_edges(static_cast<NodeId>(n))) {
      const double via = dp[static_cast<std::size_t>(e.to)];
      if (via != kNegInf) dp[n] = std::max(dp[n], via + e.length);
    }
  }
  return dp;
}

double lattice_d_L(const CausalLattice& lat, std::span<const NodeId> sources, NodeId dst) {
  if (dst == kNoNode) return kNegInf;
  NodeId earliest = dst;
  for (NodeId s : sources) earliest = std::min(earliest, s);
  std::vector<double> dp(lat.node_count(), kNegInf);
  for (NodeId s : sources) dp[static_cast<std::size_t>(s)] = 0.0;
  // Only nodes between the earliest source and dst can lie on a path.
  for (NodeId n = earliest; n < dst; ++n) {
    const double here = dp[static_cast<std::size_t>(n)];
    if (here == kNegInf) continue;
    for (const auto& e : lat.future_edges(n)) {
      if (e.to > dst) continue;
      double& t = dp[static_cast<std::size_t>(e.to)];
      t = std::max(t, here + e.length);
    }
  }
  return dp[static_cast<std::size_t>(dst)];
}

std::vector<NodeId> nodes_on_polyline(const CausalLattice& lat, std::span<const Point> polyline) {
  std::vector<NodeId> out;
  const double snap = 0.5 * lat.spacing();
  for (std::size_t n = 0; n < lat.node_count(); ++n) {
    const Point p = lat.position(static_cast<NodeId>(n));
    for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
      if (distance_to_segment(p, polyline[k], polyline[k + 1]) < snap) {
        out.push_back(static_cast<NodeId>(n));
        break;
      }
    }
  }
  return out;
}

ScalarTimeField surface_function(std::shared_ptr<const CausalLattice> lat, std::span<const Point> surface) {
  if (surface.size() < 2) throw DomainError("surface needs at least two points");
  const MetricField& field = lat->field();
  for (std::size_t k = 0; k + 1 < surface.size(); ++k) {
    const Vec2 chord = surface[k + 1] - surface[k];
    const Point mid = lerp(surface[k], surface[k + 1], 0.5);
    if (field.g(mid).quad(chord) <= lat->causal_tol())
      throw AcausalityError("surface polyline has a causal chord");
  }
  const auto on_s = nodes_on_polyline(*lat, surface);
  if (on_s.empty()) throw DomainError("surface polyline does not meet any lattice node");

  const auto above = longest_paths_from(*lat, on_s);
  const auto below = longest_paths_to(*lat, on_s);
  std::vector<char> is_s(lat->node_count(), 0);
  for (NodeId n : on_s) is_s[static_cast<std::size_t>(n)] = 1;

  std::vector<double> values(lat->node_count(), 0.0);
  std::vector<NodeId> unrelated;
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (is_s[n]) continue;
    if (above[n] != kNegInf && (below[n] == kNegInf || above[n] >= below[n])) values[n] = above[n];
    else if (below[n] != kNegInf) values[n] = -below[n];
    else unrelated.push_back(static_cast<NodeId>(n));
  }
  ScalarTimeField out(std::move(lat), std::move(values), TimeFieldKind::SurfaceFunction,
                      "surface polyline with " + std::to_string(surface.size()) + " points");
  out.set_warnings(std::move(unrelated));
  return out;
}

ScalarTimeField cosmological_time(std::shared_ptr<const CausalLattice> lat, const PastBoundary& boundary) {
  const MetricField& field = lat->field();
  const double h = lat->spacing();
  const Rect& d = field.domain();
  const double past_edge = field.future_sign() > 0 ? d.y_min : d.y_max;
  if (field.future_sign() * (past_edge - boundary.y) < -0.5 * h)
    throw RegularityError("chart extends to the past of the boundary; cosmological time is unbounded");

  std::vector<double> tau(lat->node_count(), 0.0);
  for (std::size_t n = 0; n < tau.size(); ++n)
    for (const auto& e : lat->future_edges(static_cast<NodeId>(n))) {
      double& t = tau[static_cast<std::size_t>(e.to)];
      t = std::max(t, tau[n] + e.length);
    }

  // Past-inextendible lattice paths end either on the boundary row, at the
  // lateral chart edge, or next to an excluded cell. Only the last kind can
  // break regularity.
  double tol = boundary.regularity_tol;
  if (tol < 0) {
    double unit = 0.0;
    for (const auto& e : lat->edges())
      if (std::abs(lat->row(e.to) - lat->row(e.from)) == 1) unit = std::max(unit, e.length);
    tol = 2.0 * unit;
  }
  const int back = field.future_sign() > 0 ? -1 : 1;
  for (std::size_t n = 0; n < tau.size(); ++n) {
    const NodeId id = static_cast<NodeId>(n);
    const int i = lat->column(id), j = lat->row(id);
    for (int di = -1; di <= 1; ++di) {
      const int pi = i + di, pj = j + back;
      if (pi < 0 || pj < 0 || pi >= lat->columns() || pj >= lat->rows()) continue;
      if (lat->node_at(pi, pj) != kNoNode) continue;
      if (tau[n] > tol) {
        const Point p = lat->position(id);
        throw RegularityError("past-inextendible path ending at (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ") keeps cosmological time " +
                              std::to_string(tau[n]) + " > 0");
      }
    }
  }
  return ScalarTimeField(std::move(lat), std::move(tau), TimeFieldKind::Cosmological,
                         "past boundary y=" + std::to_string(boundary.y));
}

GradientReport gradient_report(const ScalarTimeField& f, const Rect& region, double outlier_quantile) {
  const CausalLattice& lat = f.lattice();
  const MetricField& field = lat.field();
  const Rect& d = field.domain();
  const double h = lat.spacing();
  const double slack = 1e-9 * h;
  if (region.x_min < d.x_min + h - slack || region.x_max > d.x_max - h + slack ||
      region.y_min < d.y_min + h - slack || region.y_max > d.y_max - h + slack)
    throw MarginError("gradient region must keep a one-cell margin from the chart boundary");

  GradientReport r;
  r.outlier_quantile = outlier_quantile;
  r.worst_gnorm = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < lat.node_count(); ++k) {
    const NodeId n = static_cast<NodeId>(k);
    const Point p = lat.position(n);
    if (!region.contains(p, slack)) continue;
    const int i = lat.column(n), j = lat.row(n);
    const NodeId e = lat.node_at(i + 1, j), w = lat.node_at(i - 1, j);
    const NodeId nn = lat.node_at(i, j + 1), s = lat.node_at(i, j - 1);
    if (e == kNoNode || w == kNoNode || nn == kNoNode || s == kNoNode) continue;
    GradientSample g;
    g.p = p;
    g.gx = (f.value(e) - f.value(w)) / (2 * h);
    g.gy = (f.value(nn) - f.value(s)) / (2 * h);
    const Vec2 df{g.gx, g.gy};
    g.gnorm = field.g(p).inverse().quad(df);
    g.hnorm = std::sqrt(std::max(0.0, field.h(p).inverse().quad(df)));
    r.worst_gnorm = std::max(r.worst_gnorm, g.gnorm);
    r.samples.push_back(g);
  }
  if (r.samples.empty()) {
    r.worst_gnorm = r.worst_gnorm_trimmed = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  std::vector<double> norms;
  norms.reserve(r.samples.size());
  for (const auto& s : r.samples) norms.push_back(s.gnorm);
  std::sort(norms.begin(), norms.end());
  const auto drop = static_cast<std::size_t>(std::floor(outlier_quantile * static_cast<double>(norms.size())));
  r.worst_gnorm_trimmed = norms[norms.size() - 1 - std::min(drop, norms.size() - 1)];
  r.valid = r.worst_gnorm_trimmed < 0.0;
  r.b = r.valid ? std::sqrt(-r.worst_gnorm_trimmed) : 0.0;
  return r;
}

AntiLipschitzResult anti_lipschitz_check(const TimeFunction& f, const MetricField& field,
                                         std::span<const CausalCurve> curves, double h_scale,
                                         const QuadratureConfig& quad) {
  AntiLipschitzResult r;
  r.h_scale = h_scale;
  r.worst_ratio = std::numeric_limits<double>::infinity();
  for (const auto& c : curves) {
    const double increment = f(c.points.back()) - f(c.points.front());
    const double len = h_scale * riemannian_length(field, c, quad);
    double ratio;
    if (len > 0) ratio = increment / len;
    else ratio = increment > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.ratios.push_back(ratio);
    r.worst_ratio = std::min(r.worst_ratio, ratio);
    if (!(increment >= len * (1 - 1e-12))) r.pass = false;
  }
  return r;
}

std::size_t monotonicity_violations(const ScalarTimeField& f, bool strict) {
  std::size_t bad = 0;
  for (const auto& e : f.lattice().edges()) {
    const double a = f.value(e.from), b = f.value(e.to);
    if (strict ? !(b > a) : !(b >= a)) ++bad;
  }
  return bad;
}

std::vector<std::vector<Point>> level_set(const ScalarTimeField& f, double level) {
  const CausalLattice& lat = f.lattice();
  std::vector<std::vector<Point>> out;
  std::vector<Point> current;
  for (int i = 0; i < lat.columns(); ++i) {
    bool found = false;
    for (int j = 0; j + 1 < lat.rows() && !found; ++j) {
      const NodeId a = lat.node_at(i, j), b = lat.node_at(i, j + 1);
      if (a == kNoNode || b == kNoNode) continue;
      const double va = f.value(a) - level, vb = f.value(b) - level;
      if (va == vb || va * vb > 0) continue;
      const double s = va / (va - vb);
      current.push_back(lerp(lat.position(a), lat.position(b), s));
      found = true;
    }
    if (!found && !current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::size_t causal_chords(const MetricField& field, std::span<const std::vector<Point>> polylines, double tol) {
  std::size_t bad = 0;
  for (const auto& line : polylines)
    for (std::size_t k = 0; k + 1 < line.size(); ++k) {
      const Vec2 chord = line[k + 1] - line[k];
      if (field.g(lerp(line[k], line[k + 1], 0.5)).quad(chord) <= tol) ++bad;
    }
  return bad;
}

}  // namespace lorlim
