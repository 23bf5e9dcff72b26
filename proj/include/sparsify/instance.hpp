#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sparsify {

using Vertex = std::uint32_t;
using Length = std::int64_t;

enum class DistanceMode { euc_2d, ceil_2d };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable point set with a TSPLIB rounding mode.
class Instance {
 public:
  Instance(std::string name, DistanceMode mode, std::vector<Point> points);

  const std::string& name() const { return name_; }
  DistanceMode mode() const { return mode_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(Vertex v) const { return points_[v]; }

  /// Rounded TSPLIB length l(uv).
  Length dist(Vertex u, Vertex v) const {
    const double d = euclid(u, v);
    if (mode_ == DistanceMode::euc_2d) return static_cast<Length>(std::floor(d + 0.5));
    return static_cast<Length>(std::ceil(d));
  }

  /// Unrounded Euclidean distance |uv|.
  double euclid(Vertex u, Vertex v) const {
    const double dx = points_[u].x - points_[v].x;
    const double dy = points_[u].y - points_[v].y;
    return std::sqrt(dx * dx + dy * dy);
  }

  /// Constant c such that |l(uv) - c - |uv|| <= 1/2 for every pair.
  /// EUC_2D rounds to nearest (c = 0); CEIL_2D rounds up (c = 1/2).
  double rounding_shift() const { return mode_ == DistanceMode::euc_2d ? 0.0 : 0.5; }

 private:
  std::string name_;
  DistanceMode mode_;
  std::vector<Point> points_;
};

std::string to_string(DistanceMode mode);

}  // namespace sparsify
