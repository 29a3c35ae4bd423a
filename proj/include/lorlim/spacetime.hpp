#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lorlim/expression.hpp"
#include "lorlim/geometry.hpp"

namespace lorlim {

/// Closed chart rectangle.
struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(Point p, double slack = 0.0) const {
    return p.x >= x_min - slack && p.x <= x_max + slack && p.y >= y_min - slack &&
           p.y <= y_max + slack;
  }
  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

/// Open disk or open rectangle removed from the manifold.
struct ExcludedRegion {
  enum class Shape { Disk, Rect };

  Shape shape = Shape::Disk;
  Point center;
  double radius = 0.0;
  Point lo;  // Rect only
  Point hi;

  static ExcludedRegion disk(Point center, double radius) {
    ExcludedRegion r;
    r.center = center;
    r.radius = radius;
    return r;
  }
  static ExcludedRegion rect(Point lo, Point hi) {
    ExcludedRegion r;
    r.shape = Shape::Rect;
    r.lo = lo;
    r.hi = hi;
    return r;
  }

  bool contains(Point p) const {
    if (shape == Shape::Disk) return (p - center).norm() < radius;
    return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y;
  }
};

using TensorField = std::function<Sym2(Point)>;

enum class CausalKind { Timelike, Null, Spacelike };
enum class TimeDirection { Future, Past, None };

struct VectorClass {
  CausalKind kind = CausalKind::Spacelike;
  TimeDirection direction = TimeDirection::None;

  bool causal() const { return kind != CausalKind::Spacelike; }
  bool future_causal() const { return causal() && direction == TimeDirection::Future; }
  bool past_causal() const { return causal() && direction == TimeDirection::Past; }
};

const char* to_string(CausalKind k);
const char* to_string(TimeDirection d);

/// Lorentzian metric g and auxiliary Riemannian metric h on one chart.
///
/// The time axis is the chart `y` coordinate; `future_sign` fixes which way
/// along it is future. Instances are immutable.
class MetricField {
 public:
  MetricField(std::string name, Rect domain, TensorField g, TensorField h,
              std::vector<ExcludedRegion> excluded, double future_sign, bool g_constant,
              bool h_constant);

  const std::string& name() const { return name_; }
  const Rect& domain() const { return domain_; }
  const std::vector<ExcludedRegion>& excluded_regions() const { return excluded_; }
  double future_sign() const { return future_sign_; }
  bool g_constant() const { return g_constant_; }
  bool h_constant() const { return h_constant_; }

  Sym2 g(Point p) const { return g_(p); }
  Sym2 h(Point p) const { return h_(p); }
  bool excluded(Point p) const;
  /// Inside the chart and not removed.
  bool in_manifold(Point p) const { return domain_.contains(p) && !excluded(p); }

  /// Signed time component of `v` (positive means future pointing).
  double time_component(Vec2 v) const { return future_sign_ * v.y; }

  /// Cone tolerance used when a lattice config does not pin one.
  double default_causal_tol(double spacing) const;

  /// Checks signature (-,+) of g, positivity of h, and that the time axis is
  /// timelike on an n x n verification grid. Throws SignatureError.
  void verify(int samples_per_axis = 33) const;

 private:
  std::string name_;
  Rect domain_;
  TensorField g_;
  TensorField h_;
  std::vector<ExcludedRegion> excluded_;
  double future_sign_;
  bool g_constant_;
  bool h_constant_;
};

/// Sign classification of g_p(v, v) within `tol` together with the time
/// orientation. Throws ExcludedPointError when p is removed.
VectorClass classify_vector(const MetricField& field, Point p, Vec2 v, double tol);

namespace presets {

/// g = dx^2 - dy^2 (time axis y), h = dx^2 + dy^2.
MetricField minkowski(Rect domain, std::vector<ExcludedRegion> excluded = {});
MetricField minkowski_punctured(Rect domain, Point center, double radius,
                                std::vector<ExcludedRegion> extra = {});

enum class ConformalTarget { H, G, Both };

/// Multiplies g and/or h of `base` by a positive factor field.
MetricField conformal(const MetricField& base, Expression factor, ConformalTarget target);

/// Component expressions for g and h.
struct ComponentExpressions {
  Expression gxx, gxy, gyy;
  Expression hxx, hxy, hyy;
};
MetricField from_expressions(Rect domain, const ComponentExpressions& c,
                             std::vector<ExcludedRegion> excluded, double future_sign);

}  // namespace presets
}  // namespace lorlim
