#include "lorlim/null_distance.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <tuple>

#include "lorlim/errors.hpp"

namespace lorlim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ZigzagGraph::ZigzagGraph(ScalarTimeField tau) : tau_(std::move(tau)) {
  const CausalLattice& lat = tau_.lattice();
  const std::size_t n = lat.node_count();
  offsets_.assign(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) {
    const auto fut = lat.future_edges(static_cast<NodeId>(u));
    offsets_[u + 1] = static_cast<std::uint32_t>(fut.size() + lat.past_edge_ids(static_cast<NodeId>(u)).size());
  }
  for (std::size_t u = 0; u < n; ++u) offsets_[u + 1] += offsets_[u];
  arcs_.resize(offsets_[n]);
  for (std::size_t u = 0; u < n; ++u) {
    const NodeId id = static_cast<NodeId>(u);
    std::size_t k = offsets_[u];
    const double tu = tau_.value(id);
    for (const auto& e : lat.future_edges(id)) arcs_[k++] = {e.to, std::abs(tau_.value(e.to) - tu), true};
    for (std::uint32_t eid : lat.past_edge_ids(id)) {
      const NodeId from = lat.edges()[eid].from;
      arcs_[k++] = {from, std::abs(tu - tau_.value(from)), false};
    }
  }
}

std::span<const ZigzagGraph::Arc> ZigzagGraph::arcs(NodeId n) const {
  const auto u = static_cast<std::size_t>(n);
  return {arcs_.data() + offsets_[u], arcs_.data() + offsets_[u + 1]};
}

std::size_t NullDistanceResult::switches() const {
  std::size_t s = 0;
  for (std::size_t k = 1; k < piece_orientations.size(); ++k)
    if (piece_orientations[k] != piece_orientations[k - 1]) ++s;
  return s;
}

NullDistanceSolver::NullDistanceSolver(const ZigzagGraph& zz)
    : zz_(zz),
      dist_(zz.node_count(), kInf),
      hops_(zz.node_count(), 0),
      pred_(zz.node_count(), kNoNode),
      stamp_(zz.node_count(), 0),
      done_(zz.node_count(), 0) {}

void NullDistanceSolver::run(NodeId x, NodeId target, double cutoff) {
  if (x < 0 || static_cast<std::size_t>(x) >= zz_.node_count()) throw DomainError("null distance source is not a node");
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  auto touch = [&](NodeId n) {
    const auto u = static_cast<std::size_t>(n);
    if (stamp_[u] != epoch_) {
      stamp_[u] = epoch_;
      dist_[u] = kInf;
      hops_[u] = 0;
      pred_[u] = kNoNode;
      done_[u] = 0;
    }
  };
  using Key = std::tuple<double, std::uint32_t, NodeId>;
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
  touch(x);
  dist_[static_cast<std::size_t>(x)] = 0.0;
  heap.emplace(0.0, 0u, x);
  while (!heap.empty()) {
    const auto [d, h, u] = heap.top();
    heap.pop();
    const auto ui = static_cast<std::size_t>(u);
    if (done_[ui] || d != dist_[ui] || h != hops_[ui]) continue;
    if (d > cutoff) break;
    done_[ui] = 1;
    if (u == target) break;
    for (const auto& a : zz_.arcs(u)) {
      touch(a.to);
      const auto vi = static_cast<std::size_t>(a.to);
      if (done_[vi]) continue;
      const double nd = d + a.weight;
      const std::uint32_t nh = h + 1;
      if (nd < dist_[vi] || (nd == dist_[vi] && (nh < hops_[vi] || (nh == hops_[vi] && u < pred_[vi])))) {
        dist_[vi] = nd;
        hops_[vi] = nh;
        pred_[vi] = u;
        heap.emplace(nd, nh, a.to);
      }
    }
  }
}

double NullDistanceSolver::distance(NodeId x, NodeId y, double cutoff) {
  if (x == y) return 0.0;
  run(x, y, cutoff);
  const auto yi = static_cast<std::size_t>(y);
  if (stamp_[yi] != epoch_ || !done_[yi]) return kInf;
  return dist_[yi];
}

std::vector<double> NullDistanceSolver::distances_from(NodeId x, double cutoff) {
  run(x, kNoNode, cutoff);
  std::vector<double> out(zz_.node_count(), kInf);
  for (std::size_t u = 0; u < out.size(); ++u)
    if (stamp_[u] == epoch_ && done_[u]) out[u] = dist_[u];
  return out;
}

NullDistanceResult NullDistanceSolver::query(NodeId x, NodeId y) {
  NullDistanceResult r;
  if (x == y) {
    r.witness_path = {x};
    return r;
  }
  r.value = distance(x, y);
  if (!std::isfinite(r.value)) throw DisconnectedError("target node is not reachable by alternating causal paths");
  for (NodeId n = y; n != kNoNode; n = pred_[static_cast<std::size_t>(n)]) r.witness_path.push_back(n);
  std::reverse(r.witness_path.begin(), r.witness_path.end());
  // Nodes are numbered past to future, so the id order gives the piece orientation.
  for (std::size_t k = 0; k + 1 < r.witness_path.size(); ++k)
    r.piece_orientations.push_back(r.witness_path[k + 1] > r.witness_path[k] ? TimeDirection::Future
                                                                             : TimeDirection::Past);
  return r;
}

NullDistanceResult null_distance(const ZigzagGraph& zz, NodeId x, NodeId y) {
  NullDistanceSolver solver(zz);
  return solver.query(x, y);
}

std::vector<NodeTriple> sample_triples(const CausalLattice& lat, std::size_t count, std::uint64_t seed) {
  std::vector<NodeTriple> out(count);
  std::uint64_t state = seed;
  const auto n = static_cast<std::uint64_t>(lat.node_count());
  for (auto& t : out)
    for (auto& v : t) v = static_cast<NodeId>(splitmix64(state) % n);
  return out;
}

MetricAxiomReport metric_axiom_suite(const ZigzagGraph& zz, std::span<const NodeTriple> triples, double tol) {
  MetricAxiomReport r;
  NullDistanceSolver solver(zz);
  for (const auto& t : triples) {
    ++r.triples;
    std::array<std::vector<double>, 3> from;
    for (int k = 0; k < 3; ++k) from[static_cast<std::size_t>(k)] = solver.distances_from(t[static_cast<std::size_t>(k)]);
    auto d = [&](int a, int b) {
      return from[static_cast<std::size_t>(a)][static_cast<std::size_t>(t[static_cast<std::size_t>(b)])];
    };
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const double ab = d(a, b), ba = d(b, a);
        const double gap = std::isfinite(ab) && std::isfinite(ba) ? std::abs(ab - ba) : (ab == ba ? 0.0 : kInf);
        r.max_asymmetry = std::max(r.max_asymmetry, gap);
        if (gap > tol * (1 + std::abs(ab))) ++r.symmetry_violations;
        if (t[static_cast<std::size_t>(a)] != t[static_cast<std::size_t>(b)] && !(ab > tol)) ++r.definiteness_violations;
      }
    }
    // All three orderings of the triangle through the middle vertex.
    const int mids[3][3] = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}};
    for (const auto& m : mids) {
      const double lhs = d(m[0], m[2]);
      const double rhs = d(m[0], m[1]) + d(m[1], m[2]);
      if (!std::isfinite(rhs)) continue;
      const double excess = lhs - rhs;
      r.max_triangle_excess = std::max(r.max_triangle_excess, excess);
      if (excess > tol * (1 + rhs)) ++r.triangle_violations;
    }
  }
  return r;
}

std::vector<TopologyProbeRow> topology_compatibility_probe(const ZigzagGraph& zz, std::span<const Point> centers,
                                                           std::span<const double> radii) {
  const CausalLattice& lat = zz.lattice();
  NullDistanceSolver solver(zz);
  std::vector<TopologyProbeRow> rows;
  for (const Point& c : centers) {
    const NodeId x = lat.nearest_node(c);
    if (x == kNoNode) throw ExcludedPointError("probe center has no lattice node");
    const auto dist = solver.distances_from(x);
    const Point cx = lat.position(x);
    for (double r : radii) {
      TopologyProbeRow row;
      row.center = cx;
      row.radius = r;
      row.r_inner = kInf;
      for (std::size_t n = 0; n < dist.size(); ++n) {
        const double e = (lat.position(static_cast<NodeId>(n)) - cx).norm();
        if (dist[n] <= r + 1e-12) {
          ++row.ball_nodes;
          row.r_outer = std::max(row.r_outer, e);
        } else {
          row.r_inner = std::min(row.r_inner, e);
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

LengthBoundReport length_vs_nulldistance_bound(const TimeFunction& f, double b, const MetricField& field,
                                               std::span<const CausalCurve> curves, const ZigzagGraph* zz,
                                               double tol, double identity_tol, const QuadratureConfig& quad) {
  LengthBoundReport r;
  std::unique_ptr<NullDistanceSolver> solver;
  if (zz) solver = std::make_unique<NullDistanceSolver>(*zz);
  for (const auto& c : curves) {
    const LengthReport len = lorentzian_length(field, c, quad);
    std::vector<double> prefix(c.size(), 0.0);
    for (std::size_t k = 0; k < len.per_segment.size(); ++k) prefix[k + 1] = prefix[k] + len.per_segment[k];
    std::vector<double> fv(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) fv[k] = f(c.points[k]);
    for (std::size_t k = 0; k < c.size(); ++k) {
      for (std::size_t m = k + 1; m < c.size(); ++m) {
        ++r.pairs;
        const double slack = std::abs(fv[m] - fv[k]) - b * (prefix[m] - prefix[k]);
        r.worst_slack = std::min(r.worst_slack, slack);
        if (slack < -tol) ++r.bound_violations;
      }
    }
    if (!zz) continue;
    const CausalLattice& lat = zz->lattice();
    std::vector<NodeId> nodes(c.size(), kNoNode);
    for (std::size_t k = 0; k < c.size(); ++k) {
      const NodeId n = lat.nearest_node(c.points[k]);
      if (n != kNoNode && (lat.position(n) - c.points[k]).norm() < 1e-9 * lat.spacing()) nodes[k] = n;
    }
    for (std::size_t k = 0; k < c.size(); ++k) {
      for (std::size_t m = k + 1; m < c.size(); ++m) {
        NodeId a = nodes[k], z = nodes[m];
        if (a == kNoNode || z == kNoNode || a == z) continue;
        if (a > z) std::swap(a, z);
        const NodeId src[] = {a};
        if (lattice_d_L(lat, src, z) == -kInf) continue;
        ++r.identity_pairs;
        const double expect = std::abs(zz->time().value(z) - zz->time().value(a));
        const double err = std::abs(solver->distance(a, z) - expect);
        r.max_identity_error = std::max(r.max_identity_error, err);
        if (err > identity_tol) ++r.identity_violations;
      }
    }
  }
  return r;
}

}  // namespace lorlim
