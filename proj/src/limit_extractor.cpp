#include "lorlim/limit_extractor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <yaml-cpp/yaml.h>

#include "lorlim/errors.hpp"
#include "lorlim/io.hpp"
#include "lorlim/sequence.hpp"

namespace lorlim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LatticeNullDistance::LatticeNullDistance(std::shared_ptr<const ZigzagGraph> zz)
    : zz_(std::move(zz)), solver_(*zz_) {
  const CausalLattice& lat = zz_->lattice();
  double unit = 0.0;
  for (const auto& e : lat.edges())
    if (lat.row(e.to) - lat.row(e.from) == 1 && std::abs(lat.column(e.to) - lat.column(e.from)) <= 1)
      unit = std::max(unit, std::abs(zz_->time().value(e.to) - zz_->time().value(e.from)));
  resolution_ = 2.0 * unit;
}

NodeId LatticeNullDistance::snap(Point p) const {
  const CausalLattice& lat = zz_->lattice();
  int i = 0, j = 0;
  if (lat.nearest_cell(p, i, j)) {
    const NodeId n = lat.node_at(i, j);
    if (n != kNoNode) return n;
  }
  return lat.nearest_node(p);
}

bool LatticeNullDistance::representable(Point p) const {
  const CausalLattice& lat = zz_->lattice();
  if (!lat.field().in_manifold(p)) return false;
  int i = 0, j = 0;
  return lat.nearest_cell(p, i, j) && lat.node_at(i, j) != kNoNode;
}

double LatticeNullDistance::distance(Point p, Point q, double cutoff) {
  NodeId a = snap(p), b = snap(q);
  if (a == kNoNode || b == kNoNode) return kInf;
  if (a == b) return 0.0;
  if (a > b) std::swap(a, b);
  const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  const auto it = cache_.find(key);
  if (it != cache_.end()) {
    if (it->second >= 0.0) return it->second <= cutoff ? it->second : kInf;
    if (cutoff <= -it->second) return kInf;
  }
  const double r = solver_.distance(a, b, cutoff);
  if (std::isfinite(r) || !std::isfinite(cutoff)) cache_[key] = r;
  else if (it == cache_.end() || cutoff > -it->second) cache_[key] = -cutoff;
  return r;
}

FunctionDistance::FunctionDistance(std::function<double(Point, Point)> d, double resolution,
                                   std::function<bool(Point)> representable)
    : d_(std::move(d)), resolution_(resolution), representable_(std::move(representable)) {}

double FunctionDistance::distance(Point p, Point q, double) { return d_(p, q); }

const char* to_string(Parametrization p) {
  return p == Parametrization::HArclength ? "h_arclength" : "time_function";
}

std::vector<double> CurveSequence::domain_ends() const {
  std::vector<double> out;
  out.reserve(curves.size());
  for (const auto& c : curves) out.push_back(c.t_end() - c.t_begin());
  return out;
}

CurveSequence time_parametrized_sequence(const TimeFunction& f, std::vector<double> indices,
                                         std::span<const CausalCurve> curves, double knots_per_unit) {
  if (indices.size() != curves.size()) throw DomainError("sequence needs one index per curve");
  CurveSequence seq;
  seq.indices = std::move(indices);
  seq.parametrization = Parametrization::TimeFunction;
  for (const auto& c : curves) seq.curves.push_back(time_reparam(f, c, knots_per_unit));
  return seq;
}

CurveSequence arclength_parametrized_sequence(const MetricField& field, std::vector<double> indices,
                                              std::span<const CausalCurve> curves) {
  if (indices.size() != curves.size()) throw DomainError("sequence needs one index per curve");
  CurveSequence seq;
  seq.indices = std::move(indices);
  seq.parametrization = Parametrization::HArclength;
  for (const auto& c : curves) seq.curves.push_back(h_arclength_reparam(field, c));
  return seq;
}

LipschitzCertificate certify_lipschitz(CurveSequence& seq, DistanceOracle& d, std::size_t max_knots, double slack) {
  LipschitzCertificate cert;
  cert.slack = slack < 0 ? std::max(1e-6, d.resolution()) : slack;
  cert.holds = true;
  max_knots = std::max<std::size_t>(max_knots, 2);
  for (const auto& c : seq.curves) {
    const std::size_t n = c.size();
    const std::size_t m = std::min(n, max_knots);
    std::size_t prev = 0;
    for (std::size_t k = 1; k < m; ++k) {
      const std::size_t cur = k * (n - 1) / (m - 1);
      if (cur == prev) continue;
      const double dt = std::abs(c.params[cur] - c.params[prev]);
      const double dist = d.distance(c.points[prev], c.points[cur], dt + cert.slack);
      const double excess = std::isfinite(dist) ? dist - dt : kInf;
      cert.worst_excess = std::max(cert.worst_excess, excess);
      if (excess > cert.slack) cert.holds = false;
      ++cert.pairs;
      prev = cur;
    }
  }
  seq.certificate = cert;
  return cert;
}

namespace {

struct StageOutcome {
  bool accepted = false;
  std::vector<std::size_t> members;  // positions into seq, ascending index
  std::vector<double> knots;
  std::vector<Point> limit;
  CompactumRow row;
};

// Whether the closed chord [a, b] meets an excluded region.
bool chord_hits(const ExcludedRegion& r, Point a, Point b) {
  const Vec2 v = b - a;
  if (r.shape == ExcludedRegion::Shape::Disk) {
    const double vv = v.x * v.x + v.y * v.y;
    double s = vv > 0 ? ((r.center.x - a.x) * v.x + (r.center.y - a.y) * v.y) / vv : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return ((a + v * s) - r.center).norm() < r.radius;
  }
  // Liang-Barsky clip against the open rectangle.
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-v.x, v.x, -v.y, v.y};
  const double q[4] = {a.x - r.lo.x, r.hi.x - a.x, a.y - r.lo.y, r.hi.y - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] <= 0.0) return false;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0) t0 = std::max(t0, t);
    else t1 = std::min(t1, t);
  }
  if (t0 >= t1) return false;
  return r.contains(lerp(a, b, 0.5 * (t0 + t1)));
}

class Extractor {
 public:
  Extractor(const CurveSequence& seq, DistanceOracle& d, const MetricField& field, const ToleranceSchedule& s)
      : seq_(seq), d_(d), field_(field), sched_(s), ends_(seq.domain_ends()) {}

  StageOutcome run(int j, double delta, std::span<const std::size_t> subsequence, StageRecord& rec) {
    StageOutcome out;
    const double res = d_.resolution();
    const double eps = std::max(sched_.eps0 * std::ldexp(1.0, -j), res);
    const double floor = sched_.knot_floor < 0 ? res / 4 : sched_.knot_floor;
    const double spacing = std::max(delta * std::ldexp(1.0, -(j + 3)), floor);
    const auto K = static_cast<std::size_t>(std::max(1.0, std::ceil(delta / spacing - 1e-9)));
    rec.stage = j;
    rec.delta = delta;
    rec.epsilon = eps;
    rec.knots = K + 1;

    std::vector<double> knots(K + 1);
    for (std::size_t m = 0; m <= K; ++m) knots[m] = delta * static_cast<double>(m) / static_cast<double>(K);
    knots[K] = delta;

    std::vector<std::size_t> pool;
    for (std::size_t p : subsequence)
      if (ends_[p] >= delta - 1e-12 * std::max(1.0, delta)) pool.push_back(p);
    rec.pool = pool.size();
    if (pool.empty()) {
      rec.note = "no member reaches delta";
      return out;
    }

    std::vector<std::vector<Point>> pts(pool.size(), std::vector<Point>(K + 1));
    for (std::size_t q = 0; q < pool.size(); ++q) {
      const auto& c = seq_.curves[pool[q]];
      for (std::size_t m = 0; m <= K; ++m) pts[q][m] = c.at(c.t_begin() + knots[m]);
    }

    auto sup_within = [&](std::size_t q, std::size_t c) {
      for (std::size_t m = 0; m <= K; ++m)
        if (!(d_.distance(pts[q][m], pts[c][m], eps) <= eps)) return false;
      return true;
    };

    // Greedy eps-net in descending index order.
    std::vector<std::size_t> centers;
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t q = pool.size(); q-- > 0;) {
      bool placed = false;
      for (std::size_t c = 0; c < centers.size() && !placed; ++c) {
        if (sup_within(q, centers[c])) {
          clusters[c].push_back(q);
          placed = true;
        }
      }
      if (!placed) {
        centers.push_back(q);
        clusters.push_back({q});
      }
    }
    rec.clusters = clusters.size();

    // Pigeonhole on the upper half of the pool; ties go to the lowest centre index.
    const std::size_t tail_from = pool.size() / 2;
    std::size_t best = 0, best_count = 0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      std::size_t count = 0;
      for (std::size_t q : clusters[c]) count += q >= tail_from;
      const bool better = count > best_count ||
                          (count == best_count && count > 0 &&
                           seq_.indices[pool[centers[c]]] < seq_.indices[pool[centers[best]]]);
      if (better) {
        best = c;
        best_count = count;
      }
    }
    std::vector<std::size_t> chosen = clusters[best];
    std::sort(chosen.begin(), chosen.end());
    rec.selected = chosen.size();
    if (best_count == 0 || chosen.size() < std::min<std::size_t>(2, pool.size())) {
      rec.note = "no cluster holds the tail";
      return out;
    }

    std::vector<double> idx;
    for (std::size_t q : chosen) idx.push_back(seq_.indices[pool[q]]);
    std::vector<Point> limit(K + 1);
    std::vector<double> xs(chosen.size()), ys(chosen.size());
    for (std::size_t m = 0; m <= K; ++m) {
      const Point last = pts[chosen.back()][m];
      Point cand = last;
      if (chosen.size() > 1) {
        for (std::size_t k = 0; k < chosen.size(); ++k) {
          xs[k] = pts[chosen[k]][m].x;
          ys[k] = pts[chosen[k]][m].y;
        }
        cand = {extrapolate_limit(idx, xs), extrapolate_limit(idx, ys)};
        if (!std::isfinite(cand.x) || !std::isfinite(cand.y)) cand = last;
      }
      if (!d_.representable(cand)) {
        rec.note = "limit knot at u=" + io::format(knots[m]) + " leaves the manifold";
        return out;
      }
      if (!(d_.distance(cand, last, eps) <= eps)) cand = last;
      limit[m] = cand;
      // Knots can straddle a small hole; the chord between them must stay in M.
      if (m > 0)
        for (const auto& r : field_.excluded_regions())
          if (chord_hits(r, limit[m - 1], limit[m])) {
            rec.note = "limit chord ending at u=" + io::format(knots[m]) + " crosses an excluded region";
            return out;
          }
    }

    // Running sup of the compactum distance over the remaining tail.
    CompactumRow row;
    row.delta = delta;
    row.epsilon = eps;
    std::vector<double> dist(chosen.size(), 0.0);
    for (std::size_t k = 0; k < chosen.size(); ++k)
      for (std::size_t m = 0; m <= K && std::isfinite(dist[k]); ++m)
        dist[k] = std::max(dist[k], d_.distance(pts[chosen[k]][m], limit[m], 8 * eps));
    row.tail_sup.assign(chosen.size(), 0.0);
    double running = 0.0;
    for (std::size_t k = chosen.size(); k-- > 0;) {
      running = std::max(running, dist[k]);
      row.tail_sup[k] = running;
    }
    row.n_delta = idx.back();
    for (std::size_t k = 0; k < chosen.size(); ++k)
      if (row.tail_sup[k] <= eps) {
        row.n_delta = idx[k];
        break;
      }
    row.sup_distance = row.tail_sup.back();

    out.accepted = true;
    for (std::size_t q : chosen) out.members.push_back(pool[q]);
    out.knots = std::move(knots);
    out.limit = std::move(limit);
    out.row = std::move(row);
    rec.accepted = true;
    return out;
  }

 private:
  const CurveSequence& seq_;
  DistanceOracle& d_;
  const MetricField& field_;
  const ToleranceSchedule& sched_;
  std::vector<double> ends_;
};

}  // namespace

ExtractionReport extract_limit_curve(const CurveSequence& seq, DistanceOracle& d, Point x, const MetricField& field,
                                     const ToleranceSchedule& sched) {
  const std::size_t n = seq.size();
  if (n == 0) throw ExtractionFailure("empty curve sequence");
  for (std::size_t k = 1; k < n; ++k)
    if (!(seq.indices[k] > seq.indices[k - 1])) throw DomainError("sequence indices must increase");

  ExtractionReport report;
  const auto ends = seq.domain_ends();
  const double a_guess = finite_limsup(ends);
  if (!(a_guess > 0) || !std::isfinite(a_guess)) throw ExtractionFailure("domain ends must be finite and positive");
  const double res = d.resolution();
  const double stop_width = sched.stop_width < 0 ? std::max(res / 4, 1e-9 * a_guess) : sched.stop_width;
  const double start_tol = sched.start_tol < 0 ? std::max(sched.eps0, res) : sched.start_tol;

  if (!d.representable(x)) throw StartPointError("start point is not in the manifold");
  for (std::size_t p = n / 2; p < n; ++p) {
    const double s = d.distance(seq.curves[p].points.front(), x, 2 * start_tol);
    report.start_distance = std::max(report.start_distance, s);
  }
  if (!(report.start_distance <= start_tol))
    throw StartPointError("curve start points do not approach x (tail distance " +
                          io::format(report.start_distance) + ")");

  Extractor ex(seq, d, field, sched);
  std::vector<std::size_t> subsequence(n);
  std::iota(subsequence.begin(), subsequence.end(), 0);
  StageOutcome kept;
  double lo = 0.0, hi = a_guess;
  bool rejected = false;
  int j = 0;
  auto attempt = [&](double delta) {
    StageRecord rec;
    StageOutcome o = ex.run(++j, delta, subsequence, rec);
    report.stages.push_back(rec);
    if (o.accepted) {
      lo = delta;
      subsequence = o.members;
      report.per_compactum.push_back(o.row);
      kept = std::move(o);
    } else {
      hi = delta;
      rejected = true;
    }
  };
  while (j < sched.max_stages && hi - lo >= stop_width) attempt(lo + (hi - lo) / 2);
  if (!rejected && lo < a_guess) attempt(a_guess);
  if (!kept.accepted) {
    std::string why = report.stages.empty() ? std::string("no stage ran") : report.stages.front().note;
    throw ExtractionFailure("stage selection failed: " + why);
  }

  report.a = lo;
  for (std::size_t p : subsequence) report.subsequence.push_back(seq.indices[p]);
  std::vector<double> sub_ends;
  for (std::size_t p : subsequence) sub_ends.push_back(ends[p]);
  report.limsup_a = finite_limsup(sub_ends);

  report.limit_curve = make_curve(field, kept.knots, kept.limit, /*open_end=*/true);
  try {
    report.limit_length = lorentzian_length(field, report.limit_curve).value;
  } catch (const CausalityError&) {
    report.limit_length = std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t p : subsequence) {
    double L = kInf;
    try {
      L = lorentzian_length(field, seq.curves[p]).value;
    } catch (const CausalityError&) {
    }
    report.member_lengths.push_back(L);
  }
  report.limsup_length = finite_limsup(report.member_lengths);
  report.extrapolated_length_limit = extrapolate_limit(report.subsequence, report.member_lengths);
  return report;
}

ClosureCheck verify_limit(const ExtractionReport& report, const CurveSequence& seq, DistanceOracle& d, double t,
                          double tolerance) {
  ClosureCheck out;
  out.tolerance = tolerance;
  if (!(t > 0) || t > report.a) throw DomainError("closure window must lie inside [0, a]");
  const CausalCurve limit = restrict_curve(report.limit_curve, report.limit_curve.t_begin(),
                                           report.limit_curve.t_begin() + t);
  std::vector<double> dist;
  for (double idx : report.subsequence) {
    const auto it = std::find(seq.indices.begin(), seq.indices.end(), idx);
    if (it == seq.indices.end()) throw DomainError("report index missing from the sequence");
    const auto& c = seq.curves[static_cast<std::size_t>(it - seq.indices.begin())];
    double sup = 0.0;
    for (std::size_t m = 0; m < limit.size(); ++m) {
      const double u = limit.params[m] - limit.t_begin();
      sup = std::max(sup, d.distance(c.at(c.t_begin() + u), limit.points[m], 8 * tolerance));
    }
    dist.push_back(sup);
  }
  out.tail_sup.assign(dist.size(), 0.0);
  double running = 0.0;
  for (std::size_t k = dist.size(); k-- > 0;) {
    running = std::max(running, dist[k]);
    out.tail_sup[k] = running;
  }
  out.final_sup = dist.empty() ? 0.0 : out.tail_sup.back();
  out.pass = out.final_sup <= tolerance;
  return out;
}

const char* to_string(VerdictKind k) {
  return k == VerdictKind::SemiContinuityHolds ? "semi_continuity_holds" : "fails_with_hypothesis_violation";
}

LengthControlVerdict length_control_check(const ExtractionReport& report, const CurveSequence& seq,
                                          const MetricField& field, double b, const LengthControlOptions& opt) {
  LengthControlVerdict v;
  v.limit_length = report.limit_length;
  v.limsup_length = report.limsup_length;
  v.a = report.a;
  v.limsup_a = report.limsup_a;
  v.b = b;
  v.worst_segment_excess = -kInf;

  bool bounded = true;
  for (double L : report.member_lengths) bounded &= std::isfinite(L);
  if (!bounded) v.violated.push_back("lengths_bounded");

  bool segments = b > 0;
  if (segments) {
    for (double idx : report.subsequence) {
      const auto it = std::find(seq.indices.begin(), seq.indices.end(), idx);
      if (it == seq.indices.end()) continue;
      const auto& c = seq.curves[static_cast<std::size_t>(it - seq.indices.begin())];
      LengthReport len;
      try {
        len = lorentzian_length(field, c);
      } catch (const CausalityError&) {
        segments = false;
        continue;
      }
      for (std::size_t k = 0; k < len.per_segment.size(); ++k) {
        const double excess = len.per_segment[k] - (c.params[k + 1] - c.params[k]) / b;
        v.worst_segment_excess = std::max(v.worst_segment_excess, excess);
        if (excess > opt.segment_tol) segments = false;
      }
    }
  }
  if (!segments) v.violated.push_back("segment_bound");

  if (!(std::abs(report.a - report.limsup_a) <= opt.a_rel_tol * report.limsup_a))
    v.violated.push_back("a_equals_limsup");

  const bool inequality = report.limit_length >= report.limsup_length * (1 - opt.length_rel_tol);
  v.kind = inequality ? VerdictKind::SemiContinuityHolds : VerdictKind::FailsWithHypothesisViolation;
  return v;
}

PipelineResult time_function_pipeline(const ScalarTimeField& tau, const TimeFunction& f, std::vector<double> indices,
                                      std::span<const CausalCurve> curves, Point x, const ToleranceSchedule& schedule) {
  PipelineResult r;
  const CausalLattice& lat = tau.lattice();
  const MetricField& field = lat.field();
  r.sequence = time_parametrized_sequence(f ? f : tau.as_function(), std::move(indices), curves);
  LatticeNullDistance oracle(std::make_shared<const ZigzagGraph>(tau));
  certify_lipschitz(r.sequence, oracle);
  const Rect& d = field.domain();
  const double margin = 2 * lat.spacing();
  r.gradient = gradient_report(tau, Rect{d.x_min + margin, d.x_max - margin, d.y_min + margin, d.y_max - margin});
  r.report = extract_limit_curve(r.sequence, oracle, x, field, schedule);
  r.verdict = length_control_check(r.report, r.sequence, field, r.gradient.b);
  return r;
}

PipelineResult cosmological_pipeline(std::shared_ptr<const CausalLattice> lat, const PastBoundary& boundary,
                                     std::vector<double> indices, std::span<const CausalCurve> curves, Point x,
                                     const ToleranceSchedule& schedule) {
  const ScalarTimeField tau = cosmological_time(std::move(lat), boundary);
  return time_function_pipeline(tau, {}, std::move(indices), curves, x, schedule);
}

std::string report_yaml(const ExtractionReport& r, const LengthControlVerdict* v) {
  using io::format;
  YAML::Emitter e;
  e << YAML::BeginMap;
  e << YAML::Key << "a" << YAML::Value << format(r.a);
  e << YAML::Key << "limsup_a" << YAML::Value << format(r.limsup_a);
  e << YAML::Key << "start_distance" << YAML::Value << format(r.start_distance);
  e << YAML::Key << "subsequence" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (double i : r.subsequence) e << format(i);
  e << YAML::EndSeq;
  e << YAML::Key << "length_comparison" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "limit" << YAML::Value << format(r.limit_length);
  e << YAML::Key << "limsup" << YAML::Value << format(r.limsup_length);
  e << YAML::Key << "extrapolated_limit" << YAML::Value << format(r.extrapolated_length_limit);
  e << YAML::EndMap;
  e << YAML::Key << "limit_curve" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "knots" << YAML::Value << r.limit_curve.size();
  e << YAML::Key << "causal_class" << YAML::Value << to_string(r.limit_curve.causal_class);
  e << YAML::Key << "open_end" << YAML::Value << r.limit_curve.open_end;
  e << YAML::EndMap;
  e << YAML::Key << "per_compactum" << YAML::Value << YAML::BeginSeq;
  for (const auto& row : r.per_compactum) {
    e << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "delta" << YAML::Value << format(row.delta);
    e << YAML::Key << "epsilon" << YAML::Value << format(row.epsilon);
    e << YAML::Key << "n_delta" << YAML::Value << format(row.n_delta);
    e << YAML::Key << "sup_distance" << YAML::Value << format(row.sup_distance);
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;
  e << YAML::Key << "stages" << YAML::Value << YAML::BeginSeq;
  for (const auto& s : r.stages) {
    e << YAML::Flow << YAML::BeginMap;
    e << YAML::Key << "stage" << YAML::Value << s.stage;
    e << YAML::Key << "delta" << YAML::Value << format(s.delta);
    e << YAML::Key << "epsilon" << YAML::Value << format(s.epsilon);
    e << YAML::Key << "knots" << YAML::Value << s.knots;
    e << YAML::Key << "pool" << YAML::Value << s.pool;
    e << YAML::Key << "clusters" << YAML::Value << s.clusters;
    e << YAML::Key << "selected" << YAML::Value << s.selected;
    e << YAML::Key << "accepted" << YAML::Value << s.accepted;
    if (!s.note.empty()) e << YAML::Key << "note" << YAML::Value << s.note;
    e << YAML::EndMap;
  }
  e << YAML::EndSeq;
  if (v) {
    e << YAML::Key << "verdict" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "result" << YAML::Value << to_string(v->kind);
    e << YAML::Key << "violated" << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto& h : v->violated) e << h;
    e << YAML::EndSeq;
    e << YAML::Key << "b" << YAML::Value << format(v->b);
    e << YAML::Key << "worst_segment_excess" << YAML::Value << format(v->worst_segment_excess);
    e << YAML::EndMap;
  }
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace lorlim
