#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lorlim/spacetime.hpp"

namespace lorlim {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct LatticeParams {
  double spacing = 0.01;
  int stencil_radius = 4;
  double causal_tol = 1e-9;
};

/// Future-directed straight chord between two lattice nodes.
struct LatticeEdge {
  NodeId from = kNoNode;
  NodeId to = kNoNode;
  double length = 0.0;    // Lorentzian length, midpoint metric
  double h_length = 0.0;  // h length, midpoint metric
};

/// Directed acyclic graph of non-excluded grid nodes joined by future-causal
/// chords of Chebyshev radius <= stencil_radius.
///
/// Node ids follow time rows from past to future, so every edge u -> v has
/// u < v and ascending id order is a topological order.
class CausalLattice {
 public:
  CausalLattice(const MetricField& field, LatticeParams params);

  const MetricField& field() const { return field_; }
  const LatticeParams& params() const { return params_; }
  double spacing() const { return params_.spacing; }
  int stencil_radius() const { return params_.stencil_radius; }
  double causal_tol() const { return params_.causal_tol; }

  int columns() const { return nx_; }
  int rows() const { return ny_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  Point position(NodeId n) const { return nodes_[static_cast<std::size_t>(n)].p; }
  int column(NodeId n) const { return nodes_[static_cast<std::size_t>(n)].i; }
  int row(NodeId n) const { return nodes_[static_cast<std::size_t>(n)].j; }
  Point grid_point(int i, int j) const;

  /// Node at grid cell (i, j), or kNoNode when out of range or excluded.
  NodeId node_at(int i, int j) const;
  /// Node whose grid point is nearest to p (kNoNode if p is outside the
  /// domain by more than half a cell). Excluded cells are skipped.
  NodeId nearest_node(Point p) const;
  /// Grid cell nearest to p; false when outside the grid.
  bool nearest_cell(Point p, int& i, int& j) const;

  std::span<const LatticeEdge> future_edges(NodeId n) const;
  /// Indices into edges() of the edges ending at n.
  std::span<const std::uint32_t> past_edge_ids(NodeId n) const;
  const std::vector<LatticeEdge>& edges() const { return edges_; }

 private:
  struct Node {
    Point p;
    int i = 0;
    int j = 0;
  };

  MetricField field_;
  LatticeParams params_;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<NodeId> cell_to_node_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> future_offsets_;
  std::vector<LatticeEdge> edges_;
  std::vector<std::uint32_t> past_offsets_;
  std::vector<std::uint32_t> past_ids_;
};

/// Validates parameters and builds the lattice (DomainError on bad input or
/// an empty node set).
std::shared_ptr<const CausalLattice> build_lattice(const MetricField& field, LatticeParams params);

/// Same with the metric's default cone tolerance.
std::shared_ptr<const CausalLattice> build_lattice(const MetricField& field, double spacing,
                                                   int stencil_radius);

}  // namespace lorlim
