#pragma once

#include <span>
#include <vector>

#include "sparsify/instance.hpp"

namespace sparsify {

/// Balanced 2-d tree over a fixed point set.
///
/// Nodes are stored implicitly: the subtree for range [lo, hi) of `order_`
/// splits at mid = (lo + hi) / 2 along the axis recorded in `axis_[mid]`.
/// Ties in distance are broken by ascending vertex index everywhere, so query
/// results are deterministic and match a sorted linear scan.
class NeighborIndex {
 public:
  explicit NeighborIndex(std::span<const Point> points);

  /// The k vertices closest to `target` (excluding `skip_a`/`skip_b` when
  /// given), sorted by (squared distance, index).
  std::vector<Vertex> nearest(const Point& target, std::size_t k, Vertex skip_a = kNone,
                              Vertex skip_b = kNone) const;

  /// Closest vertex other than v itself.
  Vertex nearest_other(Vertex v) const;

  std::size_t size() const { return points_.size(); }

  static constexpr Vertex kNone = static_cast<Vertex>(-1);

 private:
  struct Candidate {
    double d2;
    Vertex v;
    bool operator<(const Candidate& o) const { return d2 < o.d2 || (d2 == o.d2 && v < o.v); }
  };

  void build(std::size_t lo, std::size_t hi, int depth);
  void search(std::size_t lo, std::size_t hi, const Point& target, std::size_t k, Vertex skip_a,
              Vertex skip_b, std::vector<Candidate>& heap) const;

  std::vector<Point> points_;
  std::vector<Vertex> order_;
  std::vector<unsigned char> axis_;
};

}  // namespace sparsify
