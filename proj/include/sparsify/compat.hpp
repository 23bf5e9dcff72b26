#pragma once

#include <optional>
#include <span>

#include "sparsify/edge_set.hpp"
#include "sparsify/instance.hpp"
#include "sparsify/kd_tree.hpp"

namespace sparsify {

/// 2-opt test: edges sharing a vertex are always compatible, otherwise
/// max(l(px) + l(qy), l(py) + l(qx)) >= l(pq) + l(xy).
/// Two edges of an optimum tour are always compatible.
inline bool compatible(const Instance& inst, Vertex p, Vertex q, Vertex x, Vertex y) {
  if (p == x || p == y || q == x || q == y) return true;
  const Length lhs = std::max(inst.dist(p, x) + inst.dist(q, y), inst.dist(p, y) + inst.dist(q, x));
  return lhs >= inst.dist(p, q) + inst.dist(x, y);
}

inline bool compatible(const Instance& inst, Edge pq, Edge xy) { return compatible(inst, pq.u, pq.v, xy.u, xy.v); }

/// m_pq(z): the smallest shortcut gain available at z when z's tour
/// neighbors come from N(z) \ {p, q}. Empty when fewer than two eligible
/// neighbors exist (treat as unusable).
std::optional<Length> metric_excess(const Instance& inst, const SparseEdgeSet& edges, Vertex p, Vertex q, Vertex z);

/// Candidate witnesses z for three_incompatible; by default the K vertices
/// nearest to the midpoint of pr.
std::vector<Vertex> witness_candidates(const Instance& inst, const NeighborIndex& index, Vertex p, Vertex r,
                                       std::size_t k);

/// True if some z in `candidates` (outside {p, q, r, x}) gives
///   l(xq) + l(rz) + l(zp) - m_pr(z) < l(pq) + l(rx),
/// proving the path q-p-r-x cannot be part of an optimum tour.
bool three_incompatible(const Instance& inst, const SparseEdgeSet& edges, Vertex p, Vertex q, Vertex r, Vertex x,
                        std::span<const Vertex> candidates);

bool three_incompatible(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, Vertex p,
                        Vertex q, Vertex r, Vertex x, std::size_t k = 10);

}  // namespace sparsify
