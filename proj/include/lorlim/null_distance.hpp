#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "lorlim/time_field.hpp"

namespace lorlim {

/// Both orientations of every lattice edge, weighted by |tau(v) - tau(u)|.
class ZigzagGraph {
 public:
  struct Arc {
    NodeId to = kNoNode;
    double weight = 0.0;
    bool future = true;  // traversed along the lattice edge direction
  };

  explicit ZigzagGraph(ScalarTimeField tau);

  const ScalarTimeField& time() const { return tau_; }
  const CausalLattice& lattice() const { return tau_.lattice(); }
  std::size_t node_count() const { return offsets_.size() - 1; }
  std::span<const Arc> arcs(NodeId n) const;

 private:
  ScalarTimeField tau_;
  std::vector<std::uint32_t> offsets_;
  std::vector<Arc> arcs_;
};

struct NullDistanceResult {
  double value = 0.0;
  std::vector<NodeId> witness_path;
  std::vector<TimeDirection> piece_orientations;  // one per witness edge

  /// Orientation changes along the witness.
  std::size_t switches() const;
};

/// Dijkstra with private scratch space; reuse one per thread.
/// Ties are broken by (hop count, predecessor index) so witnesses are canonical.
class NullDistanceSolver {
 public:
  explicit NullDistanceSolver(const ZigzagGraph& zz);

  /// Throws DisconnectedError when y is unreachable.
  NullDistanceResult query(NodeId x, NodeId y);
  /// Value only; +inf when y is unreachable or farther than cutoff.
  double distance(NodeId x, NodeId y, double cutoff = std::numeric_limits<double>::infinity());
  /// Distances from x to every node (+inf beyond cutoff or unreachable).
  std::vector<double> distances_from(NodeId x, double cutoff = std::numeric_limits<double>::infinity());

 private:
  void run(NodeId x, NodeId target, double cutoff);

  const ZigzagGraph& zz_;
  std::vector<double> dist_;
  std::vector<std::uint32_t> hops_;
  std::vector<NodeId> pred_;
  std::vector<std::uint32_t> stamp_;
  std::vector<char> done_;
  std::uint32_t epoch_ = 0;
};

NullDistanceResult null_distance(const ZigzagGraph& zz, NodeId x, NodeId y);

using NodeTriple = std::array<NodeId, 3>;

/// Deterministic uniform node triples (splitmix64 stream from seed).
std::vector<NodeTriple> sample_triples(const CausalLattice& lat, std::size_t count, std::uint64_t seed);

struct MetricAxiomReport {
  std::size_t triples = 0;
  std::size_t symmetry_violations = 0;
  std::size_t triangle_violations = 0;
  std::size_t definiteness_violations = 0;
  double max_asymmetry = 0.0;
  double max_triangle_excess = 0.0;

  std::size_t violations() const { return symmetry_violations + triangle_violations + definiteness_violations; }
};

/// Symmetry, triangle inequality and definiteness over the sampled triples.
/// `tol` absorbs floating roundoff only.
MetricAxiomReport metric_axiom_suite(const ZigzagGraph& zz, std::span<const NodeTriple> triples,
                                     double tol = 1e-12);

struct TopologyProbeRow {
  Point center;
  double radius = 0.0;
  std::size_t ball_nodes = 0;
  double r_inner = 0.0;  // Euclidean ball of this radius lies inside the null ball
  double r_outer = 0.0;  // null ball lies inside the Euclidean ball of this radius
};

std::vector<TopologyProbeRow> topology_compatibility_probe(const ZigzagGraph& zz, std::span<const Point> centers,
                                                           std::span<const double> radii);

struct LengthBoundReport {
  std::size_t pairs = 0;
  std::size_t bound_violations = 0;     // |df| < b L - tol
  double worst_slack = std::numeric_limits<double>::infinity();  // min of |df| - b L
  std::size_t identity_pairs = 0;
  std::size_t identity_violations = 0;  // null distance != |df| on related node pairs
  double max_identity_error = 0.0;
};

/// Checks |f(p_m) - f(p_k)| >= b L(c|[t_k, t_m]) on every knot pair. When zz
/// is given, knot pairs sitting on lattice-related nodes also check
/// d(p_k, p_m; f) = |f(p_m) - f(p_k)| within identity_tol.
LengthBoundReport length_vs_nulldistance_bound(const TimeFunction& f, double b, const MetricField& field,
                                               std::span<const CausalCurve> curves, const ZigzagGraph* zz,
                                               double tol, double identity_tol = 1e-9,
                                               const QuadratureConfig& quad = {});

}  // namespace lorlim
