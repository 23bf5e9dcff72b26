#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sparsify/instance.hpp"

namespace sparsify::testing {

/// Distinct integer points drawn uniformly from [0, extent]^2.
inline Instance random_instance(std::mt19937_64& rng, std::size_t n, int extent = 1000,
                                DistanceMode mode = DistanceMode::euc_2d) {
  std::uniform_int_distribution<int> coord(0, extent);
  std::set<std::pair<int, int>> seen;
  std::vector<Point> pts;
  while (pts.size() < n) {
    const int x = coord(rng);
    const int y = coord(rng);
    if (!seen.emplace(x, y).second) continue;
    pts.push_back({static_cast<double>(x), static_cast<double>(y)});
  }
  return Instance("random" + std::to_string(n), mode, std::move(pts));
}

inline Instance unit_square(double side = 10.0) {
  return Instance("square", DistanceMode::euc_2d, {{0, 0}, {side, 0}, {side, side}, {0, side}});
}

}  // namespace sparsify::testing
