#include "sparsify/compat.hpp"

#include <algorithm>
#include <limits>

namespace sparsify {

std::optional<Length> metric_excess(const Instance& inst, const SparseEdgeSet& edges, Vertex p, Vertex q, Vertex z) {
  std::vector<Vertex> eligible;
  for (Vertex x : edges.neighbors(z))
    if (x != p && x != q) eligible.push_back(x);
  if (eligible.size() < 2) return std::nullopt;

  const Length zp = inst.dist(z, p);
  const Length zq = inst.dist(z, q);
  // Each neighbor contributes the better of its two shortcuts.
  std::vector<Length> gain(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    const Vertex x = eligible[i];
    const Length xz = inst.dist(x, z);
    gain[i] = std::max(xz + zp - inst.dist(x, p), xz + zq - inst.dist(x, q));
  }
  // min over pairs of max(gain[i], gain[j]) is the second smallest gain.
  std::partial_sort(gain.begin(), gain.begin() + 2, gain.end());
  return gain[1];
}

std::vector<Vertex> witness_candidates(const Instance& inst, const NeighborIndex& index, Vertex p, Vertex r,
                                       std::size_t k) {
  const Point& a = inst.point(p);
  const Point& b = inst.point(r);
  return index.nearest(Point{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, k);
}

bool three_incompatible(const Instance& inst, const SparseEdgeSet& edges, Vertex p, Vertex q, Vertex r, Vertex x,
                        std::span<const Vertex> candidates) {
  const Length rhs = inst.dist(p, q) + inst.dist(r, x);
  const Length xq = inst.dist(x, q);
  for (Vertex z : candidates) {
    if (z == p || z == q || z == r || z == x) continue;
    const auto excess = metric_excess(inst, edges, p, r, z);
    if (!excess) continue;
    if (xq + inst.dist(r, z) + inst.dist(z, p) - *excess < rhs) return true;
  }
  return false;
}

bool three_incompatible(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, Vertex p,
                        Vertex q, Vertex r, Vertex x, std::size_t k) {
  const auto candidates = witness_candidates(inst, index, p, r, k);
  return three_incompatible(inst, edges, p, q, r, x, candidates);
}

}  // namespace sparsify
