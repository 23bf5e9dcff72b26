#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sparsify/edge_set.hpp"
#include "sparsify/eliminate.hpp"
#include "sparsify/instance.hpp"
#include "sparsify/kd_tree.hpp"

namespace sparsify {

/// Vertex-disjoint paths assumed to be part of an optimum tour, grown from an anchor edge.
class PathSystem {
 public:
  PathSystem(const Instance& inst, Edge anchor);

  Edge anchor() const { return anchor_; }
  std::size_t depth() const { return depth_; }
  Length length() const { return length_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::span<const Vertex> vertices() const { return vertices_; }

  bool contains(Vertex v) const { return slot(v) != kMissing; }
  int degree(Vertex v) const;
  /// Committed neighbors of v; unused entries hold NeighborIndex::kNone.
  std::array<Vertex, 2> neighbors(Vertex v) const;

  /// Far end of the path that has v as an endpoint.
  Vertex other_end(Vertex endpoint) const;

  std::vector<Edge> edges() const;
  std::vector<std::vector<Vertex>> paths() const;
  std::vector<Vertex> interior() const;
  std::vector<Vertex> endpoints() const;

  /// The path through v as a vertex sequence.
  std::vector<Vertex> path_through(Vertex v) const;

  void add_edge(const Instance& inst, Vertex a, Vertex b);
  void bump_depth() { ++depth_; }

 private:
  static constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::size_t slot(Vertex v) const;
  std::size_t ensure(Vertex v);

  Edge anchor_;
  std::vector<Vertex> vertices_;
  std::vector<std::array<Vertex, 2>> adjacent_;
  Length length_ = 0;
  std::size_t depth_ = 0;
};

/// One extension step: new tour edges at `at` (one edge for a path
/// endpoint, two for a fresh vertex).
struct Move {
  Vertex at = 0;
  std::array<Vertex, 2> to{NeighborIndex::kNone, NeighborIndex::kNone};
  std::size_t count = 0;
  bool closes_tour = false;
};

struct SearchConfig {
  std::size_t max_depth = 10;
  /// Search nodes per edge before giving up; a deterministic stand-in for a time budget.
  std::size_t node_budget = 2000;
  /// Fresh vertices (nearest the anchor midpoint) considered as branch points.
  std::size_t fresh_candidates = 8;
  /// Vertices tried per committed edge for the in-context main theorem.
  std::size_t context_probes = 4;
  std::size_t context_combo_cap = 2500;
  std::size_t witness_candidates = 10;
  /// Minimality DP is skipped above this many interior vertices.
  std::size_t max_dp_interior = 10;
};

/// No other set of paths with the same endpoint pairs and the same interior
/// vertices is strictly shorter.
bool is_locally_minimal(const Instance& inst, const PathSystem& state, std::size_t max_interior = 16);

/// Minimum length of a path collection with the state's endpoint pairs and interior set.
Length min_path_system_length(const Instance& inst, const PathSystem& state);

enum class RefuteResult { useless, unknown };

/// Bounded-depth search for a refutation of an edge.
class Backtracker {
 public:
  Backtracker(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, SearchConfig cfg = {});

  RefuteResult refute(Edge pq);

  /// Legal moves at v in `state` (v must have degree < 2).
  std::vector<Move> options_at(const PathSystem& state, Vertex v);

  /// Moves at the branch point with the fewest options. Empty means refuted.
  std::vector<Move> extensions(const PathSystem& state);

  std::size_t nodes_visited() const { return nodes_; }

 private:
  enum class Outcome { refuted, open };

  Outcome explore(const PathSystem& state);
  bool pruned_in_context(const PathSystem& state, const std::vector<std::pair<Vertex, std::vector<Move>>>& options);
  bool blocked_triple(Vertex a, Vertex b, Vertex c, Vertex d);
  bool window_blocked(const PathSystem& extended, Vertex v, std::span<const Vertex> added);
  std::vector<Vertex> branch_candidates(const PathSystem& state) const;

  const Instance& inst_;
  const SparseEdgeSet& edges_;
  const NeighborIndex& index_;
  SearchConfig cfg_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
  std::map<std::array<Vertex, 4>, bool> triple_cache_;
  std::vector<Vertex> anchor_candidates_;
};

RefuteResult refute_edge(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, Edge pq,
                         const SearchConfig& cfg = {});

}  // namespace sparsify
