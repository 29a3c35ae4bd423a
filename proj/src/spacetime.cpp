#include "lorlim/spacetime.hpp"

#include <cmath>
#include <sstream>

#include "lorlim/errors.hpp"

namespace lorlim {

const char* to_string(CausalKind k) {
  switch (k) {
    case CausalKind::Timelike: return "timelike";
    case CausalKind::Null: return "null";
    case CausalKind::Spacelike: return "spacelike";
  }
  return "?";
}

const char* to_string(TimeDirection d) {
  switch (d) {
    case TimeDirection::Future: return "future";
    case TimeDirection::Past: return "past";
    case TimeDirection::None: return "none";
  }
  return "?";
}

MetricField::MetricField(std::string name, Rect domain, TensorField g, TensorField h,
                         std::vector<ExcludedRegion> excluded, double future_sign,
                         bool g_constant, bool h_constant)
    : name_(std::move(name)),
      domain_(domain),
      g_(std::move(g)),
      h_(std::move(h)),
      excluded_(std::move(excluded)),
      future_sign_(future_sign < 0 ? -1.0 : 1.0),
      g_constant_(g_constant),
      h_constant_(h_constant) {
  if (!(std::isfinite(domain.x_min) && std::isfinite(domain.x_max) &&
        std::isfinite(domain.y_min) && std::isfinite(domain.y_max)) ||
      domain.x_max <= domain.x_min || domain.y_max <= domain.y_min)
    throw DomainError("metric domain must be a finite non-degenerate rectangle");
}

bool MetricField::excluded(Point p) const {
  for (const auto& r : excluded_)
    if (r.contains(p)) return true;
  return false;
}

double MetricField::default_causal_tol(double spacing) const {
  return g_constant_ ? 1e-9 : 1e-6 * spacing;
}

void MetricField::verify(int n) const {
  if (n < 2) n = 2;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Point p{domain_.x_min + domain_.width() * a / (n - 1),
                    domain_.y_min + domain_.height() * b / (n - 1)};
      if (excluded(p)) continue;
      const Sym2 gp = g(p);
      const Sym2 hp = h(p);
      auto where = [&] {
        std::ostringstream os;
        os << " at (" << p.x << ", " << p.y << ")";
        return os.str();
      };
      if (!std::isfinite(gp.xx) || !std::isfinite(gp.xy) || !std::isfinite(gp.yy))
        throw SignatureError("g is not finite" + where());
      double lo = 0.0, hi = 0.0;
      gp.eigenvalues(lo, hi);
      if (!(lo < 0.0 && hi > 0.0)) throw SignatureError("g does not have signature (-,+)" + where());
      if (!(gp.yy < 0.0)) throw SignatureError("time axis y is not timelike for g" + where());
      if (!std::isfinite(hp.xx) || !std::isfinite(hp.xy) || !std::isfinite(hp.yy))
        throw SignatureError("h is not finite" + where());
      if (!(hp.xx > 0.0 && hp.det() > 0.0)) throw SignatureError("h is not positive definite" + where());
    }
  }
}

VectorClass classify_vector(const MetricField& field, Point p, Vec2 v, double tol) {
  if (field.excluded(p)) throw ExcludedPointError("point is not in the manifold");
  VectorClass c;
  const double q = field.g(p).quad(v);
  if (q < -tol) c.kind = CausalKind::Timelike;
  else if (q <= tol) c.kind = CausalKind::Null;
  else c.kind = CausalKind::Spacelike;
  const double t = field.time_component(v);
  c.direction = t > 0.0 ? TimeDirection::Future : (t < 0.0 ? TimeDirection::Past : TimeDirection::None);
  return c;
}

namespace presets {

MetricField minkowski(Rect domain, std::vector<ExcludedRegion> excluded) {
  return MetricField(
      "minkowski", domain, [](Point) { return Sym2::diag(1.0, -1.0); },
      [](Point) { return Sym2::diag(1.0, 1.0); }, std::move(excluded), 1.0, true, true);
}

MetricField minkowski_punctured(Rect domain, Point center, double radius,
                                std::vector<ExcludedRegion> extra) {
  if (!(radius > 0.0)) throw DomainError("puncture radius must be positive");
  extra.insert(extra.begin(), ExcludedRegion::disk(center, radius));
  return MetricField(
      "minkowski_punctured", domain, [](Point) { return Sym2::diag(1.0, -1.0); },
      [](Point) { return Sym2::diag(1.0, 1.0); }, std::move(extra), 1.0, true, true);
}

MetricField conformal(const MetricField& base, Expression factor, ConformalTarget target) {
  const bool scale_g = target != ConformalTarget::H;
  const bool scale_h = target != ConformalTarget::G;
  const bool factor_constant = factor.is_constant();
  TensorField g = [base, factor, scale_g](Point p) {
    return scale_g ? base.g(p) * factor(p) : base.g(p);
  };
  TensorField h = [base, factor, scale_h](Point p) {
    return scale_h ? base.h(p) * factor(p) : base.h(p);
  };
  return MetricField("conformal", base.domain(), std::move(g), std::move(h), base.excluded_regions(),
                     base.future_sign(), base.g_constant() && (!scale_g || factor_constant),
                     base.h_constant() && (!scale_h || factor_constant));
}

MetricField from_expressions(Rect domain, const ComponentExpressions& c,
                             std::vector<ExcludedRegion> excluded, double future_sign) {
  TensorField g = [c](Point p) { return Sym2{c.gxx(p), c.gxy(p), c.gyy(p)}; };
  TensorField h = [c](Point p) { return Sym2{c.hxx(p), c.hxy(p), c.hyy(p)}; };
  const bool gc = c.gxx.is_constant() && c.gxy.is_constant() && c.gyy.is_constant();
  const bool hc = c.hxx.is_constant() && c.hxy.is_constant() && c.hyy.is_constant();
  return MetricField("expression", domain, std::move(g), std::move(h), std::move(excluded),
                     future_sign, gc, hc);
}

}  // namespace presets
}  // namespace lorlim
