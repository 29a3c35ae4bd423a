#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lorlim/quadrature.hpp"
#include "lorlim/spacetime.hpp"

namespace lorlim {

enum class CurveClass { Causal, Timelike, Null, Alternating, NonCausal };
const char* to_string(CurveClass c);

/// Polyline t_k -> p_k with strictly increasing parameters.
///
/// With `open_end` set the domain is [t_0, t_N): the last knot is the limit
/// point and may lie in an excluded region.
struct CausalCurve {
  std::vector<double> params;
  std::vector<Point> points;
  TimeDirection orientation = TimeDirection::Future;
  bool open_end = false;
  CurveClass causal_class = CurveClass::NonCausal;

  std::size_t size() const { return points.size(); }
  std::size_t segments() const { return points.empty() ? 0 : points.size() - 1; }
  double t_begin() const { return params.front(); }
  double t_end() const { return params.back(); }
  /// Linear interpolation; t is clamped to the parameter range.
  Point at(double t) const;
};

/// Builds a curve and certifies its causal class against `field`.
/// Throws DomainError on non-increasing params, ExcludedPointError on removed knots.
CausalCurve make_curve(const MetricField& field, std::vector<double> params,
                       std::vector<Point> points, bool open_end = false, double causal_tol = 1e-9);

/// Uniform parametrisation 0, 1, 2, ... of the given knots.
CausalCurve make_polyline(const MetricField& field, std::vector<Point> points, bool open_end = false,
                          double causal_tol = 1e-9);

/// Classifies every chord: all future (or all past) causal gives
/// Timelike / Null / Causal, mixed orientations give Alternating.
CurveClass certify(const MetricField& field, const CausalCurve& c, double causal_tol);

struct LengthReport {
  double value = 0.0;
  std::vector<double> per_segment;
  double quadrature_error_estimate = 0.0;
};

/// Integral of sqrt(-g(c', c')) per segment. For open-ended curves the
/// value is the limit of the segment sums.
/// Throws CausalityError for non-causal curves or g(c', c') > causal_tol.
LengthReport lorentzian_length(const MetricField& field, const CausalCurve& c,
                               const QuadratureConfig& quad = {}, double causal_tol = 1e-9);

/// Per-segment h lengths; a diverging segment is +inf.
std::vector<double> riemannian_segment_lengths(const MetricField& field, const CausalCurve& c,
                                               const QuadratureConfig& quad = {});

/// Integral of sqrt(h(c', c')); +inf when the integrand diverges.
double riemannian_length(const MetricField& field, const CausalCurve& c,
                         const QuadratureConfig& quad = {});

/// Parameter becomes cumulative h length. Throws DivergenceError when a
/// prefix has infinite length.
CausalCurve h_arclength_reparam(const MetricField& field, const CausalCurve& c,
                                const QuadratureConfig& quad = {});

/// Sub-curve on [t0, t1] with interpolated end knots.
CausalCurve restrict_curve(const CausalCurve& c, double t0, double t1);

/// Inserts knots so every segment spans at most 1/knots_per_unit in parameter.
CausalCurve refine(const CausalCurve& c, double knots_per_unit);

/// Increasing bijection [0, a] -> [0, a_i] (or the half-open versions when
/// an endpoint is infinite) used to put a family of curves on one domain.
class DomainMap {
 public:
  enum class Kind { Identity, Arctan, Linear };

  /// Throws DomainError when a <= 0, a_i <= 0, or a_i is infinite but a is not.
  static DomainMap make(double a_i, double a);

  double operator()(double x) const;
  double derivative(double x) const;
  /// Supremum of the derivative over the domain.
  double max_derivative() const;
  Kind kind() const { return kind_; }
  double source_end() const { return a_; }
  double target_end() const { return a_i_; }

 private:
  Kind kind_ = Kind::Identity;
  double a_i_ = 0.0;
  double a_ = 0.0;
};

struct DomainMapFamily {
  double a = 0.0;  // common domain end (limsup of the a_i)
  std::vector<DomainMap> maps;

  /// Indices whose map has derivative bounded by 1 + eps.
  std::vector<std::size_t> subsequence(double eps) const;
};

DomainMapFamily domain_map_family(std::span<const double> a_list, double a);
/// Uses the finite limsup estimate of a_list as the common end.
DomainMapFamily domain_map_family(std::span<const double> a_list);

using TimeFunction = std::function<double(Point)>;

/// Reparametrises a past-directed curve by the drop of f:
/// f(c(u)) = f(c(0)) - u at every knot. Knots are first refined to
/// `knots_per_unit` per unit of the original parameter (0 disables).
/// Throws MonotonicityError when f is not strictly decreasing at the knots.
CausalCurve time_reparam(const TimeFunction& f, const CausalCurve& c, double knots_per_unit = 256.0);

}  // namespace lorlim
