#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "sparsify/instance.hpp"

namespace sparsify {

/// Symmetric simple graph on n vertices stored as sorted adjacency lists.
class SparseEdgeSet {
 public:
  SparseEdgeSet() = default;
  explicit SparseEdgeSet(std::size_t n) : adjacency_(n) {}

  /// Builds from an edge list; duplicates collapse, self-loops throw.
  static SparseEdgeSet from_edges(std::size_t n, std::span<const Edge> edges);
  static SparseEdgeSet complete(std::size_t n);

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }

  bool contains(Vertex a, Vertex b) const {
    const auto& adj = adjacency_[a];
    return std::binary_search(adj.begin(), adj.end(), b);
  }

  /// All edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  /// Copy without the given edges.
  SparseEdgeSet without(std::span<const Edge> removed) const;

  bool is_subset_of(const SparseEdgeSet& other) const;

  friend bool operator==(const SparseEdgeSet&, const SparseEdgeSet&) = default;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

}  // namespace sparsify
