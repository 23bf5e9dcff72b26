#include "sparsify/kd_tree.hpp"

#include <algorithm>
#include <numeric>

namespace sparsify {
namespace {

double coord(const Point& p, int axis) { return axis == 0 ? p.x : p.y; }

double squared(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

NeighborIndex::NeighborIndex(std::span<const Point> points)
    : points_(points.begin(), points.end()), order_(points.size()), axis_(points.size(), 0) {
  std::iota(order_.begin(), order_.end(), Vertex{0});
  build(0, order_.size(), 0);
}

void NeighborIndex::build(std::size_t lo, std::size_t hi, int depth) {
  if (hi - lo <= 1) return;
  // Split along the wider extent of this cell.
  double min_x = points_[order_[lo]].x, max_x = min_x;
  double min_y = points_[order_[lo]].y, max_y = min_y;
  for (std::size_t i = lo + 1; i < hi; ++i) {
    const Point& p = points_[order_[i]];
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const int axis = (max_x - min_x) >= (max_y - min_y) ? 0 : 1;
  const std::size_t mid = (lo + hi) / 2;
  std::nth_element(order_.begin() + lo, order_.begin() + mid, order_.begin() + hi, [&](Vertex a, Vertex b) {
    const double ca = coord(points_[a], axis);
    const double cb = coord(points_[b], axis);
    return ca < cb || (ca == cb && a < b);
  });
  axis_[mid] = static_cast<unsigned char>(axis);
  build(lo, mid, depth + 1);
  build(mid + 1, hi, depth + 1);
}

void NeighborIndex::search(std::size_t lo, std::size_t hi, const Point& target, std::size_t k, Vertex skip_a,
                           Vertex skip_b, std::vector<Candidate>& heap) const {
  if (lo >= hi) return;
  const std::size_t mid = (lo + hi) / 2;
  const Vertex v = order_[mid];
  if (v != skip_a && v != skip_b) {
    const Candidate c{squared(points_[v], target), v};
    if (heap.size() < k) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end());
    } else if (c < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = c;
      std::push_heap(heap.begin(), heap.end());
    }
  }
  if (hi - lo == 1) return;
  const int axis = axis_[mid];
  const double diff = coord(target, axis) - coord(points_[v], axis);
  const bool left_first = diff <= 0.0;
  const auto [a_lo, a_hi] = left_first ? std::pair{lo, mid} : std::pair{mid + 1, hi};
  const auto [b_lo, b_hi] = left_first ? std::pair{mid + 1, hi} : std::pair{lo, mid};
  search(a_lo, a_hi, target, k, skip_a, skip_b, heap);
  // <= keeps equal-distance candidates on the far side reachable for index tie-breaks.
  if (heap.size() < k || diff * diff <= heap.front().d2) search(b_lo, b_hi, target, k, skip_a, skip_b, heap);
}

std::vector<Vertex> NeighborIndex::nearest(const Point& target, std::size_t k, Vertex skip_a, Vertex skip_b) const {
  std::vector<Candidate> heap;
  heap.reserve(k + 1);
  if (k > 0) search(0, order_.size(), target, k, skip_a, skip_b, heap);
  std::sort(heap.begin(), heap.end());
  std::vector<Vertex> out;
  out.reserve(heap.size());
  for (const auto& c : heap) out.push_back(c.v);
  return out;
}

Vertex NeighborIndex::nearest_other(Vertex v) const { return nearest(points_[v], 1, v).front(); }

}  // namespace sparsify
