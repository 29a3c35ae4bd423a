#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "lorlim/null_distance.hpp"

namespace lorlim {

/// Distance between chart points used for uniform convergence.
class DistanceOracle {
 public:
  virtual ~DistanceOracle() = default;
  /// May return +inf as soon as the value is known to exceed cutoff.
  virtual double distance(Point p, Point q, double cutoff = std::numeric_limits<double>::infinity()) = 0;
  /// Smallest separation the oracle resolves; stage tolerances never go below it.
  virtual double resolution() const = 0;
  /// Whether p is a point of the (discretised) manifold.
  virtual bool representable(Point p) const = 0;
};

/// Null distance of a lattice time field. Points snap to their nearest grid
/// node; results are cached per node pair.
class LatticeNullDistance final : public DistanceOracle {
 public:
  explicit LatticeNullDistance(std::shared_ptr<const ZigzagGraph> zz);

  double distance(Point p, Point q, double cutoff = std::numeric_limits<double>::infinity()) override;
  double resolution() const override { return resolution_; }
  bool representable(Point p) const override;
  const ZigzagGraph& graph() const { return *zz_; }

 private:
  NodeId snap(Point p) const;

  std::shared_ptr<const ZigzagGraph> zz_;
  NullDistanceSolver solver_;
  double resolution_ = 0.0;
  // Non-negative entries are exact; negative entries mean "greater than -value".
  std::unordered_map<std::uint64_t, double> cache_;
};

/// Closed-form distance (tests and h-distance experiments).
class FunctionDistance final : public DistanceOracle {
 public:
  FunctionDistance(std::function<double(Point, Point)> d, double resolution,
                   std::function<bool(Point)> representable);

  double distance(Point p, Point q, double cutoff = std::numeric_limits<double>::infinity()) override;
  double resolution() const override { return resolution_; }
  bool representable(Point p) const override { return representable_(p); }

 private:
  std::function<double(Point, Point)> d_;
  double resolution_;
  std::function<bool(Point)> representable_;
};

enum class Parametrization { HArclength, TimeFunction };
const char* to_string(Parametrization p);

struct LipschitzCertificate {
  bool holds = false;
  std::size_t pairs = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();  // max of d - |dt|
  double slack = 0.0;
};

/// Curves gamma_i : [0, a_i) -> M sharing a parametrisation convention.
struct CurveSequence {
  std::vector<double> indices;  // the i of each curve
  std::vector<CausalCurve> curves;
  Parametrization parametrization = Parametrization::TimeFunction;
  LipschitzCertificate certificate;

  std::size_t size() const { return curves.size(); }
  std::vector<double> domain_ends() const;
};

/// Time-parametrised sequence: each past-directed curve is reparametrised by
/// the drop of f.
CurveSequence time_parametrized_sequence(const TimeFunction& f, std::vector<double> indices,
                                         std::span<const CausalCurve> curves, double knots_per_unit = 256.0);

/// h arc-length parametrised sequence.
CurveSequence arclength_parametrized_sequence(const MetricField& field, std::vector<double> indices,
                                              std::span<const CausalCurve> curves);

/// Checks d(c(t1), c(t2)) <= |t1 - t2| + slack on consecutive pairs of up to
/// `max_knots` evenly spaced knots of every curve. Negative slack selects
/// max(1e-6, oracle resolution). Stores and returns the certificate.
LipschitzCertificate certify_lipschitz(CurveSequence& seq, DistanceOracle& d, std::size_t max_knots = 32,
                                       double slack = -1.0);

struct ToleranceSchedule {
  double eps0 = 1e-2;
  int max_stages = 16;
  double stop_width = -1.0;  // negative: resolution / 4
  double knot_floor = -1.0;  // negative: resolution / 4
  double start_tol = -1.0;   // negative: max(eps0, resolution)
};

struct CompactumRow {
  double delta = 0.0;
  double epsilon = 0.0;
  double n_delta = 0.0;       // first index from which the tail stays within epsilon
  double sup_distance = 0.0;  // tail sup at the last index
  std::vector<double> tail_sup;  // running sup over the remaining tail, per member
};

struct StageRecord {
  int stage = 0;
  double delta = 0.0;
  double epsilon = 0.0;
  std::size_t knots = 0;
  std::size_t pool = 0;
  std::size_t clusters = 0;
  std::size_t selected = 0;
  bool accepted = false;
  std::string note;
};

struct ExtractionReport {
  std::vector<double> subsequence;  // indices i_k
  CausalCurve limit_curve;          // on [0, a)
  double a = 0.0;
  double limsup_a = 0.0;            // over the subsequence
  std::vector<CompactumRow> per_compactum;
  std::vector<StageRecord> stages;
  double limit_length = 0.0;
  double limsup_length = 0.0;             // max over the tail half
  double extrapolated_length_limit = 0.0;  // Richardson estimate of lim L(gamma_{i_k})
  std::vector<double> member_lengths;     // aligned with subsequence
  double start_distance = 0.0;
};

/// Diagonal extraction over windows [0, delta_j] with eps-net pigeonholing.
/// Throws StartPointError when gamma_i(0) does not approach x and
/// ExtractionFailure when no stage selects a subsequence.
ExtractionReport extract_limit_curve(const CurveSequence& seq, DistanceOracle& d, Point x,
                                     const MetricField& field, const ToleranceSchedule& schedule = {});

struct ClosureCheck {
  bool pass = false;
  double final_sup = 0.0;
  double tolerance = 0.0;
  std::vector<double> tail_sup;
};

/// Re-verifies uniform convergence of the reported subsequence to the limit
/// curve restricted to [0, t].
ClosureCheck verify_limit(const ExtractionReport& report, const CurveSequence& seq, DistanceOracle& d, double t,
                          double tolerance);

enum class VerdictKind { SemiContinuityHolds, FailsWithHypothesisViolation };

struct LengthControlVerdict {
  VerdictKind kind = VerdictKind::FailsWithHypothesisViolation;
  std::vector<std::string> violated;  // lengths_bounded, segment_bound, a_equals_limsup
  double limit_length = 0.0;
  double limsup_length = 0.0;
  double a = 0.0;
  double limsup_a = 0.0;
  double b = 0.0;
  double worst_segment_excess = 0.0;  // max of L(segment) - |du| / b

  bool holds() const { return kind == VerdictKind::SemiContinuityHolds; }
};

struct LengthControlOptions {
  double a_rel_tol = 0.02;
  double length_rel_tol = 0.02;
  double segment_tol = 1e-9;
};

LengthControlVerdict length_control_check(const ExtractionReport& report, const CurveSequence& seq,
                                          const MetricField& field, double b, const LengthControlOptions& opt = {});

struct PipelineResult {
  ExtractionReport report;
  LengthControlVerdict verdict;
  GradientReport gradient;
  CurveSequence sequence;
};

/// Time reparametrisation by `f` (tau itself when f is empty) -> extraction
/// under the null distance of tau -> gradient bound of tau -> length control.
PipelineResult time_function_pipeline(const ScalarTimeField& tau, const TimeFunction& f, std::vector<double> indices,
                                      std::span<const CausalCurve> curves, Point x,
                                      const ToleranceSchedule& schedule = {});

/// cosmological_time -> time reparametrisation -> extraction under the null
/// distance of tau -> length control. RegularityError propagates.
PipelineResult cosmological_pipeline(std::shared_ptr<const CausalLattice> lat, const PastBoundary& boundary,
                                     std::vector<double> indices, std::span<const CausalCurve> curves, Point x,
                                     const ToleranceSchedule& schedule = {});

/// YAML text of a report and verdict.
std::string report_yaml(const ExtractionReport& report, const LengthControlVerdict* verdict = nullptr);
const char* to_string(VerdictKind k);

}  // namespace lorlim
