#pragma once

#include <span>
#include <vector>

#include "sparsify/edge_set.hpp"
#include "sparsify/instance.hpp"

namespace sparsify::oracle {

/// Cyclic vertex order starting at vertex 0, oriented so that order[1] < order.back().
struct Tour {
  std::vector<Vertex> order;
  Length length = 0;

  std::vector<Edge> edges() const;
};

/// Every tour of minimum length. n <= 12.
std::vector<Tour> enumerate_optimum_tours(const Instance& inst);

inline constexpr Length kNoTour = -1;

/// Optimum tour length by subset DP. n <= 18. If `edges` is given, only those
/// edges may be used; returns kNoTour when no Hamiltonian cycle exists.
Length held_karp_value(const Instance& inst, const SparseEdgeSet* edges = nullptr);

/// Complement of the union of all optimum tours. n <= 12.
SparseEdgeSet exact_useless_edges(const Instance& inst);

/// Union of the edges of all optimum tours. n <= 12.
SparseEdgeSet optimum_tour_edges(const Instance& inst);

struct EndpointPair {
  Vertex a;
  Vertex b;
};

/// Minimum total length over all ways to connect each endpoint pair by a path
/// so that every interior vertex lies on exactly one path. |interior| <= 8.
Length brute_min_path_system(const Instance& inst, std::span<const EndpointPair> pairs,
                             std::span<const Vertex> interior);

}  // namespace sparsify::oracle
