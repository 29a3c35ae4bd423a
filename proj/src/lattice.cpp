#include "lorlim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lorlim/errors.hpp"
#include "lorlim/parallel.hpp"

namespace lorlim {
namespace {

int grid_count(double lo, double hi, double spacing) {
  const double n = std::floor((hi - lo) / spacing + 1e-9);
  if (n > 1e7) throw DomainError("lattice too large for the requested spacing");
  return static_cast<int>(n) + 1;
}

}  // namespace

CausalLattice::CausalLattice(const MetricField& field, LatticeParams params)
    : field_(field), params_(params) {
  const Rect& d = field_.domain();
  nx_ = grid_count(d.x_min, d.x_max, params_.spacing);
  ny_ = grid_count(d.y_min, d.y_max, params_.spacing);
  cell_to_node_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), kNoNode);

  // Rows from past to future.
  const bool forward = field_.future_sign() > 0;
  for (int step = 0; step < ny_; ++step) {
    const int j = forward ? step : ny_ - 1 - step;
    for (int i = 0; i < nx_; ++i) {
      const Point p = grid_point(i, j);
      if (field_.excluded(p)) continue;
      cell_to_node_[static_cast<std::size_t>(j) * nx_ + i] = static_cast<NodeId>(nodes_.size());
      nodes_.push_back({p, i, j});
    }
  }

  const int R = params_.stencil_radius;
  const int dir = forward ? 1 : -1;
  std::vector<std::vector<LatticeEdge>> per_node(nodes_.size());
  parallel_for(nodes_.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t n = begin; n < end; ++n) {
      const Node& u = nodes_[n];
      auto& out = per_node[n];
      for (int dj = 1; dj <= R; ++dj) {
        for (int di = -R; di <= R; ++di) {
          const NodeId v = node_at(u.i + di, u.j + dir * dj);
          if (v == kNoNode) continue;
          const Point q = nodes_[static_cast<std::size_t>(v)].p;
          const Vec2 chord = q - u.p;
          const Point mid = lerp(u.p, q, 0.5);
          if (field_.excluded(mid)) continue;
          const double gq = field_.g(mid).quad(chord);
          if (gq > params_.causal_tol || field_.time_component(chord) <= 0.0) continue;
          bool blocked = false;
          for (int k = 1; k <= R + 1 && !blocked; ++k)
            blocked = field_.excluded(lerp(u.p, q, static_cast<double>(k) / (R + 2)));
          if (blocked) continue;
          out.push_back({static_cast<NodeId>(n), v, std::sqrt(std::max(0.0, -gq)),
                         std::sqrt(std::max(0.0, field_.h(mid).quad(chord)))});
        }
      }
    }
  });

  future_offsets_.assign(nodes_.size() + 1, 0);
  for (std::size_t n = 0; n < nodes_.size(); ++n)
    future_offsets_[n + 1] = future_offsets_[n] + static_cast<std::uint32_t>(per_node[n].size());
  edges_.reserve(future_offsets_.back());
  for (auto& list : per_node) {
    edges_.insert(edges_.end(), list.begin(), list.end());
    std::vector<LatticeEdge>().swap(list);
  }

  past_offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& e : edges_) ++past_offsets_[static_cast<std::size_t>(e.to) + 1];
  for (std::size_t n = 0; n < nodes_.size(); ++n) past_offsets_[n + 1] += past_offsets_[n];
  past_ids_.resize(edges_.size());
  std::vector<std::uint32_t> fill(past_offsets_.begin(), past_offsets_.end() - 1);
  for (std::uint32_t e = 0; e < edges_.size(); ++e)
    past_ids_[fill[static_cast<std::size_t>(edges_[e].to)]++] = e;
}

Point CausalLattice::grid_point(int i, int j) const {
  const Rect& d = field_.domain();
  return {d.x_min + i * params_.spacing, d.y_min + j * params_.spacing};
}

NodeId CausalLattice::node_at(int i, int j) const {
  if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return kNoNode;
  return cell_to_node_[static_cast<std::size_t>(j) * nx_ + i];
}

bool CausalLattice::nearest_cell(Point p, int& i, int& j) const {
  const Rect& d = field_.domain();
  i = static_cast<int>(std::lround((p.x - d.x_min) / params_.spacing));
  j = static_cast<int>(std::lround((p.y - d.y_min) / params_.spacing));
  return i >= 0 && j >= 0 && i < nx_ && j < ny_;
}

NodeId CausalLattice::nearest_node(Point p) const {
  int ci = 0, cj = 0;
  if (!nearest_cell(p, ci, cj)) return kNoNode;
  if (const NodeId n = node_at(ci, cj); n != kNoNode) return n;
  NodeId best = kNoNode;
  double best_d = std::numeric_limits<double>::infinity();
  for (int r = 1; r <= 4 && best == kNoNode; ++r) {
    for (int dj = -r; dj <= r; ++dj) {
      for (int di = -r; di <= r; ++di) {
        if (std::max(std::abs(di), std::abs(dj)) != r) continue;
        const NodeId n = node_at(ci + di, cj + dj);
        if (n == kNoNode) continue;
        const double dist = (position(n) - p).norm();
        if (dist < best_d || (dist == best_d && n < best)) {
          best = n;
          best_d = dist;
        }
      }
    }
  }
  return best;
}

std::span<const LatticeEdge> CausalLattice::future_edges(NodeId n) const {
  const auto k = static_cast<std::size_t>(n);
  return {edges_.data() + future_offsets_[k], future_offsets_[k + 1] - future_offsets_[k]};
}

std::span<const std::uint32_t> CausalLattice::past_edge_ids(NodeId n) const {
  const auto k = static_cast<std::size_t>(n);
  return {past_ids_.data() + past_offsets_[k], past_offsets_[k + 1] - past_offsets_[k]};
}

std::shared_ptr<const CausalLattice> build_lattice(const MetricField& field, LatticeParams params) {
  if (!(params.spacing > 0.0)) throw DomainError("lattice spacing must be positive");
  if (params.stencil_radius < 1) throw DomainError("stencil radius must be at least 1");
  if (!(params.causal_tol >= 0.0)) throw DomainError("causal tolerance must be non-negative");
  auto lat = std::make_shared<const CausalLattice>(field, params);
  if (lat->node_count() == 0) throw DomainError("lattice has no nodes outside the excluded regions");
  return lat;
}

std::shared_ptr<const CausalLattice> build_lattice(const MetricField& field, double spacing,
                                                   int stencil_radius) {
  return build_lattice(field, {spacing, stencil_radius, field.default_causal_tol(spacing)});
}

}  // namespace lorlim
