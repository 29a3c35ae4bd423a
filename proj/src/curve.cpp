#include "lorlim/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lorlim/errors.hpp"
#include "lorlim/sequence.hpp"

namespace lorlim {

const char* to_string(CurveClass c) {
  switch (c) {
    case CurveClass::Causal: return "causal";
    case CurveClass::Timelike: return "timelike";
    case CurveClass::Null: return "null";
    case CurveClass::Alternating: return "alternating";
    case CurveClass::NonCausal: return "non_causal";
  }
  return "?";
}

Point CausalCurve::at(double t) const {
  if (points.empty()) return {};
  if (t <= params.front()) return points.front();
  if (t >= params.back()) return points.back();
  const auto it = std::upper_bound(params.begin(), params.end(), t);
  const auto k = static_cast<std::size_t>(it - params.begin()) - 1;
  const double s = (t - params[k]) / (params[k + 1] - params[k]);
  return lerp(points[k], points[k + 1], s);
}

CurveClass certify(const MetricField& field, const CausalCurve& c, double tol) {
  bool any_future = false, any_past = false, all_timelike = true, all_null = true;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const Vec2 chord = c.points[k + 1] - c.points[k];
    if (chord.x == 0.0 && chord.y == 0.0) continue;
    const VectorClass v = classify_vector(field, lerp(c.points[k], c.points[k + 1], 0.5), chord, tol);
    if (!v.causal() || v.direction == TimeDirection::None) return CurveClass::NonCausal;
    any_future |= v.direction == TimeDirection::Future;
    any_past |= v.direction == TimeDirection::Past;
    all_timelike &= v.kind == CausalKind::Timelike;
    all_null &= v.kind == CausalKind::Null;
  }
  if (any_future && any_past) return CurveClass::Alternating;
  if (!any_future && !any_past) return CurveClass::Null;  // single point
  if (all_timelike) return CurveClass::Timelike;
  if (all_null) return CurveClass::Null;
  return CurveClass::Causal;
}

CausalCurve make_curve(const MetricField& field, std::vector<double> params,
                       std::vector<Point> points, bool open_end, double causal_tol) {
  if (params.size() != points.size() || points.empty())
    throw DomainError("curve needs matching, non-empty parameter and point lists");
  for (std::size_t k = 0; k + 1 < params.size(); ++k)
    if (!(params[k + 1] > params[k])) throw DomainError("curve parameters must be strictly increasing");
  const std::size_t checked = open_end ? points.size() - 1 : points.size();
  for (std::size_t k = 0; k < checked; ++k)
    if (field.excluded(points[k])) throw ExcludedPointError("curve knot lies in an excluded region");

  CausalCurve c;
  c.params = std::move(params);
  c.points = std::move(points);
  c.open_end = open_end;
  c.causal_class = certify(field, c, causal_tol);
  c.orientation = TimeDirection::Future;
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const double t = field.time_component(c.points[k + 1] - c.points[k]);
    if (t != 0.0) {
      c.orientation = t > 0 ? TimeDirection::Future : TimeDirection::Past;
      break;
    }
  }
  return c;
}

CausalCurve make_polyline(const MetricField& field, std::vector<Point> points, bool open_end,
                          double causal_tol) {
  std::vector<double> params(points.size());
  for (std::size_t k = 0; k < params.size(); ++k) params[k] = static_cast<double>(k);
  return make_curve(field, std::move(params), std::move(points), open_end, causal_tol);
}

namespace {

bool is_causal_class(CurveClass c) {
  return c == CurveClass::Causal || c == CurveClass::Timelike || c == CurveClass::Null;
}

}  // namespace

LengthReport lorentzian_length(const MetricField& field, const CausalCurve& c,
                               const QuadratureConfig& quad, double causal_tol) {
  if (!is_causal_class(c.causal_class))
    throw CausalityError(std::string("Lorentzian length needs a causal curve, got ") +
                         to_string(c.causal_class));
  LengthReport r;
  r.per_segment.reserve(c.segments());
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const Point a = c.points[k];
    const Vec2 chord = c.points[k + 1] - a;
    double value = 0.0, err = 0.0;
    if (chord.x != 0.0 || chord.y != 0.0) {
      auto integrand = [&](double s) {
        const double q = field.g(lerp(a, c.points[k + 1], s)).quad(chord);
        if (q > causal_tol) throw CausalityError("curve segment leaves the causal cone");
        return std::sqrt(std::max(0.0, -q));
      };
      const QuadratureResult res = integrate(integrand, 0.0, 1.0, quad);
      value = res.value;
      err = res.error_estimate;
    }
    r.per_segment.push_back(value);
    r.value += value;
    r.quadrature_error_estimate += err;
  }
  return r;
}

std::vector<double> riemannian_segment_lengths(const MetricField& field, const CausalCurve& c,
                                               const QuadratureConfig& quad) {
  std::vector<double> out;
  out.reserve(c.segments());
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const Point a = c.points[k];
    const Point b = c.points[k + 1];
    const Vec2 chord = b - a;
    if (chord.x == 0.0 && chord.y == 0.0) {
      out.push_back(0.0);
      continue;
    }
    auto integrand = [&](double s) {
      const double q = field.h(lerp(a, b, s)).quad(chord);
      return std::sqrt(std::max(0.0, q));
    };
    out.push_back(integrate(integrand, 0.0, 1.0, quad).value);
  }
  return out;
}

double riemannian_length(const MetricField& field, const CausalCurve& c, const QuadratureConfig& quad) {
  double total = 0.0;
  for (double s : riemannian_segment_lengths(field, c, quad)) {
    total += s;
    if (!std::isfinite(total) || total > quad.divergence_value)
      return std::numeric_limits<double>::infinity();
  }
  return total;
}

CausalCurve h_arclength_reparam(const MetricField& field, const CausalCurve& c,
                                const QuadratureConfig& quad) {
  const auto seg = riemannian_segment_lengths(field, c, quad);
  CausalCurve out = c;
  double acc = 0.0;
  out.params[0] = 0.0;
  for (std::size_t k = 0; k < seg.size(); ++k) {
    acc += seg[k];
    if (!std::isfinite(acc) || acc > quad.divergence_value)
      throw DivergenceError("h length of a curve prefix is infinite");
    if (!(acc > out.params[k])) throw DomainError("curve has a segment of zero h length");
    out.params[k + 1] = acc;
  }
  return out;
}

CausalCurve restrict_curve(const CausalCurve& c, double t0, double t1) {
  if (!(t1 > t0)) throw DomainError("restriction needs t0 < t1");
  t0 = std::max(t0, c.t_begin());
  t1 = std::min(t1, c.t_end());
  if (!(t1 > t0)) throw DomainError("restriction window misses the curve domain");
  CausalCurve out;
  out.orientation = c.orientation;
  out.causal_class = c.causal_class;
  out.open_end = c.open_end && t1 >= c.t_end();
  out.params.push_back(t0);
  out.points.push_back(c.at(t0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c.params[k] > t0 && c.params[k] < t1) {
      out.params.push_back(c.params[k]);
      out.points.push_back(c.points[k]);
    }
  }
  out.params.push_back(t1);
  out.points.push_back(c.at(t1));
  return out;
}

CausalCurve refine(const CausalCurve& c, double knots_per_unit) {
  if (!(knots_per_unit > 0.0) || c.size() < 2) return c;
  CausalCurve out = c;
  out.params.clear();
  out.points.clear();
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    const double span = c.params[k + 1] - c.params[k];
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span * knots_per_unit - 1e-9)));
    for (std::size_t q = 0; q < pieces; ++q) {
      const double s = static_cast<double>(q) / static_cast<double>(pieces);
      out.params.push_back(c.params[k] + s * span);
      out.points.push_back(lerp(c.points[k], c.points[k + 1], s));
    }
  }
  out.params.push_back(c.params.back());
  out.points.push_back(c.points.back());
  return out;
}

DomainMap DomainMap::make(double a_i, double a) {
  if (!(a > 0.0)) throw DomainError("common domain end must be positive");
  if (!(a_i > 0.0)) throw DomainError("curve domain end must be positive");
  DomainMap m;
  m.a_i_ = a_i;
  m.a_ = a;
  if (std::isinf(a) && std::isinf(a_i)) m.kind_ = Kind::Identity;
  else if (std::isinf(a)) m.kind_ = Kind::Arctan;
  else if (std::isinf(a_i)) throw DomainError("infinite curve domain with a finite common end");
  else m.kind_ = Kind::Linear;
  return m;
}

double DomainMap::operator()(double x) const {
  switch (kind_) {
    case Kind::Identity: return x;
    case Kind::Arctan: return 2.0 * a_i_ / std::numbers::pi * std::atan(std::numbers::pi * x / (2.0 * a_i_));
    case Kind::Linear: return a_i_ / a_ * x;
  }
  return x;
}

double DomainMap::derivative(double x) const {
  switch (kind_) {
    case Kind::Identity: return 1.0;
    case Kind::Arctan: {
      const double z = std::numbers::pi * x / (2.0 * a_i_);
      return 1.0 / (1.0 + z * z);
    }
    case Kind::Linear: return a_i_ / a_;
  }
  return 1.0;
}

double DomainMap::max_derivative() const { return kind_ == Kind::Linear ? a_i_ / a_ : 1.0; }

std::vector<std::size_t> DomainMapFamily::subsequence(double eps) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (maps[i].max_derivative() <= 1.0 + eps) out.push_back(i);
  return out;
}

DomainMapFamily domain_map_family(std::span<const double> a_list, double a) {
  DomainMapFamily fam;
  fam.a = a;
  fam.maps.reserve(a_list.size());
  for (double ai : a_list) fam.maps.push_back(DomainMap::make(ai, a));
  return fam;
}

DomainMapFamily domain_map_family(std::span<const double> a_list) {
  return domain_map_family(a_list, finite_limsup(a_list));
}

CausalCurve time_reparam(const TimeFunction& f, const CausalCurve& c, double knots_per_unit) {
  if (c.size() < 2) throw DomainError("time reparametrisation needs at least two knots");
  if (c.orientation != TimeDirection::Past)
    throw MonotonicityError("time reparametrisation expects a past-directed curve");
  CausalCurve out = knots_per_unit > 0.0 ? refine(c, knots_per_unit) : c;
  const double f0 = f(out.points.front());
  double previous = f0;
  out.params[0] = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double fk = f(out.points[k]);
    if (!(fk < previous)) throw MonotonicityError("time function is not strictly decreasing along the curve");
    out.params[k] = f0 - fk;
    previous = fk;
  }
  return out;
}

}  // namespace lorlim
