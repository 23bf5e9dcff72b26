#include "sparsify/instance.hpp"

#include "sparsify/edge_set.hpp"

namespace sparsify {

Instance::Instance(std::string name, DistanceMode mode, std::vector<Point> points)
    : name_(std::move(name)), mode_(mode), points_(std::move(points)) {
  if (points_.size() < 4) {
    throw InvalidInstance("instance needs at least 4 vertices, got " + std::to_string(points_.size()));
  }
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
      throw InvalidInstance("non-finite coordinate at vertex " + std::to_string(i + 1));
    }
  }
}

std::string to_string(DistanceMode mode) { return mode == DistanceMode::euc_2d ? "EUC_2D" : "CEIL_2D"; }

SparseEdgeSet SparseEdgeSet::from_edges(std::size_t n, std::span<const Edge> edges) {
  SparseEdgeSet set(n);
  for (const Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
    if (e.v >= n) throw std::out_of_range("edge endpoint out of range");
    set.adjacency_[e.u].push_back(e.v);
    set.adjacency_[e.v].push_back(e.u);
  }
  std::size_t twice = 0;
  for (auto& adj : set.adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    twice += adj.size();
  }
  set.edge_count_ = twice / 2;
  return set;
}

SparseEdgeSet SparseEdgeSet::complete(std::size_t n) {
  SparseEdgeSet set(n);
  for (Vertex v = 0; v < n; ++v) {
    auto& adj = set.adjacency_[v];
    adj.reserve(n - 1);
    for (Vertex u = 0; u < n; ++u)
      if (u != v) adj.push_back(u);
  }
  set.edge_count_ = n * (n - 1) / 2;
  return set;
}

std::vector<Edge> SparseEdgeSet::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < adjacency_.size(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

SparseEdgeSet SparseEdgeSet::without(std::span<const Edge> removed) const {
  SparseEdgeSet copy = *this;
  for (const Edge& e : removed) {
    auto drop = [&](Vertex a, Vertex b) {
      auto& adj = copy.adjacency_[a];
      auto it = std::lower_bound(adj.begin(), adj.end(), b);
      if (it != adj.end() && *it == b) {
        adj.erase(it);
        return true;
      }
      return false;
    };
    if (drop(e.u, e.v)) {
      drop(e.v, e.u);
      --copy.edge_count_;
    }
  }
  return copy;
}

bool SparseEdgeSet::is_subset_of(const SparseEdgeSet& other) const {
  if (other.vertex_count() != vertex_count()) return false;
  for (Vertex u = 0; u < adjacency_.size(); ++u)
    for (Vertex v : adjacency_[u])
      if (!other.contains(u, v)) return false;
  return true;
}

}  // namespace sparsify
