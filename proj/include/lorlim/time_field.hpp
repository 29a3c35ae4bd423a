#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lorlim/curve.hpp"
#include "lorlim/lattice.hpp"

namespace lorlim {

enum class TimeFieldKind { SurfaceFunction, Cosmological, Coordinate, User };
const char* to_string(TimeFieldKind k);

/// Generalised time function sampled on lattice nodes, bilinear in between.
class ScalarTimeField {
 public:
  ScalarTimeField(std::shared_ptr<const CausalLattice> lattice, std::vector<double> values,
                  TimeFieldKind kind, std::string meta = {});

  /// Samples f at every node.
  static ScalarTimeField sample(std::shared_ptr<const CausalLattice> lattice, const TimeFunction& f,
                                TimeFieldKind kind = TimeFieldKind::Coordinate, std::string meta = {});

  const CausalLattice& lattice() const { return *lattice_; }
  const std::shared_ptr<const CausalLattice>& lattice_ptr() const { return lattice_; }
  TimeFieldKind kind() const { return kind_; }
  const std::string& meta() const { return meta_; }
  const std::vector<double>& values() const { return values_; }
  double value(NodeId n) const { return values_[static_cast<std::size_t>(n)]; }

  /// Bilinear interpolation over the surrounding cell; corners in excluded
  /// cells are dropped and the weights renormalised. DomainError outside the chart.
  double operator()(Point p) const;
  TimeFunction as_function() const;

  /// Nodes flagged while building (for surface functions: nodes with no
  /// causal relation to S).
  const std::vector<NodeId>& warnings() const { return warnings_; }
  void set_warnings(std::vector<NodeId> w) { warnings_ = std::move(w); }

 private:
  std::shared_ptr<const CausalLattice> lattice_;
  std::vector<double> values_;
  TimeFieldKind kind_;
  std::string meta_;
  std::vector<NodeId> warnings_;
};

/// Longest-path values from `sources` to every node; -inf where unreachable.
std::vector<double> longest_paths_from(const CausalLattice& lat, std::span<const NodeId> sources);
/// Longest-path values from every node into `targets`; -inf where unreachable.
std::vector<double> longest_paths_to(const CausalLattice& lat, std::span<const NodeId> targets);

/// Lattice Lorentzian distance sup over sources of the longest path into dst
/// (-inf when dst is not in the lattice future of any source).
double lattice_d_L(const CausalLattice& lat, std::span<const NodeId> sources, NodeId dst);

/// Nodes within half a cell of the polyline S.
std::vector<NodeId> nodes_on_polyline(const CausalLattice& lat, std::span<const Point> polyline);

/// Signed lattice Lorentzian distance to the acausal polyline S.
/// Throws AcausalityError when a chord of S is causal. Nodes with no causal
/// relation to S get 0 and are listed in warnings().
ScalarTimeField surface_function(std::shared_ptr<const CausalLattice> lat, std::span<const Point> surface);

struct PastBoundary {
  double y = 0.0;
  /// Largest value tolerated where a past-inextendible lattice path ends in
  /// an excluded cell; negative selects two unit-step edge lengths.
  double regularity_tol = -1.0;
};

/// Longest lattice path into each node from anywhere in its past.
/// Throws RegularityError when the chart extends past the boundary or when a
/// past-inextendible lattice path ends (in an excluded cell) with values
/// bounded away from 0.
ScalarTimeField cosmological_time(std::shared_ptr<const CausalLattice> lat, const PastBoundary& boundary);

struct GradientSample {
  Point p;
  double gx = 0.0;
  double gy = 0.0;
  double gnorm = 0.0;  // g^{-1}(df, df)
  double hnorm = 0.0;  // sqrt(h^{-1}(df, df))
};

struct GradientReport {
  std::vector<GradientSample> samples;
  double worst_gnorm = 0.0;          // max over every sample
  double worst_gnorm_trimmed = 0.0;  // max after dropping the outlier quantile
  double outlier_quantile = 0.0;
  double b = 0.0;                    // sqrt(-worst_gnorm_trimmed), 0 when invalid
  bool valid = false;                // worst_gnorm_trimmed < 0
};

/// Central differences over nodes of `region`. Throws MarginError when the
/// region comes within one cell of the chart boundary.
GradientReport gradient_report(const ScalarTimeField& f, const Rect& region, double outlier_quantile = 0.01);

struct AntiLipschitzResult {
  bool pass = true;
  double worst_ratio = 0.0;  // min over curves of increment / (scale * h length)
  std::vector<double> ratios;
  double h_scale = 1.0;
};

AntiLipschitzResult anti_lipschitz_check(const TimeFunction& f, const MetricField& field,
                                         std::span<const CausalCurve> curves, double h_scale,
                                         const QuadratureConfig& quad = {});

/// Number of edges u -> v with values(v) <= values(u) (or < when !strict).
std::size_t monotonicity_violations(const ScalarTimeField& f, bool strict);

/// Level set {f = level} traced column by column (first crossing per
/// column); gaps split the result into separate polylines.
std::vector<std::vector<Point>> level_set(const ScalarTimeField& f, double level);

/// Chords of the polylines that are not spacelike within tol.
std::size_t causal_chords(const MetricField& field, std::span<const std::vector<Point>> polylines, double tol);

}  // namespace lorlim
