#include "sparsify/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sparsify::oracle {

std::vector<Edge> Tour::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < order.size(); ++i) out.emplace_back(order[i], order[(i + 1) % order.size()]);
  return out;
}

namespace {

class TourEnumerator {
 public:
  explicit TourEnumerator(const Instance& inst) : n_(inst.size()), dist_(n_ * n_), used_(n_, false) {
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = 0; v < n_; ++v) dist_[u * n_ + v] = inst.dist(u, v);
  }

  std::vector<Tour> run() {
    path_.push_back(0);
    used_[0] = true;
    extend(0);
    return std::move(best_tours_);
  }

 private:
  Length d(Vertex a, Vertex b) const { return dist_[a * n_ + b]; }

  void extend(Length partial) {
    if (partial > best_) return;
    if (path_.size() == n_) {
      if (path_[1] > path_.back()) return;
      const Length total = partial + d(path_.back(), 0);
      if (total < best_) {
        best_ = total;
        best_tours_.clear();
      }
      if (total == best_) best_tours_.push_back(Tour{path_, total});
      return;
    }
    for (Vertex v = 1; v < n_; ++v) {
      if (used_[v]) continue;
      used_[v] = true;
      path_.push_back(v);
      extend(partial + d(path_[path_.size() - 2], v));
      path_.pop_back();
      used_[v] = false;
    }
  }

  std::size_t n_;
  std::vector<Length> dist_;
  std::vector<bool> used_;
  std::vector<Vertex> path_;
  Length best_ = std::numeric_limits<Length>::max();
  std::vector<Tour> best_tours_;
};

}  // namespace

std::vector<Tour> enumerate_optimum_tours(const Instance& inst) {
  if (inst.size() > 12) throw std::invalid_argument("tour enumeration limited to n <= 12");
  return TourEnumerator(inst).run();
}

Length held_karp_value(const Instance& inst, const SparseEdgeSet* edges) {
  const std::size_t n = inst.size();
  if (n > 18) throw std::invalid_argument("Held-Karp oracle limited to n <= 18");
  constexpr Length inf = std::numeric_limits<Length>::max() / 4;
  auto w = [&](Vertex a, Vertex b) -> Length {
    if (edges != nullptr && !edges->contains(a, b)) return inf;
    return inst.dist(a, b);
  };
  // dp[S][v]: shortest path from vertex 0 through the set S (of vertices 1..n-1) ending at v in S.
  const std::size_t m = n - 1;
  const std::size_t full = std::size_t{1} << m;
  std::vector<Length> dp(full * m, inf);
  for (std::size_t v = 0; v < m; ++v) dp[(std::size_t{1} << v) * m + v] = w(0, static_cast<Vertex>(v + 1));
  for (std::size_t set = 1; set < full; ++set) {
    for (std::size_t v = 0; v < m; ++v) {
      const Length cur = dp[set * m + v];
      if (cur >= inf || !(set & (std::size_t{1} << v))) continue;
      for (std::size_t u = 0; u < m; ++u) {
        if (set & (std::size_t{1} << u)) continue;
        const Length step = w(static_cast<Vertex>(v + 1), static_cast<Vertex>(u + 1));
        if (step >= inf) continue;
        Length& next = dp[(set | (std::size_t{1} << u)) * m + u];
        next = std::min(next, cur + step);
      }
    }
  }
  Length best = inf;
  for (std::size_t v = 0; v < m; ++v) {
    const Length cur = dp[(full - 1) * m + v];
    const Length back = w(static_cast<Vertex>(v + 1), 0);
    if (cur < inf && back < inf) best = std::min(best, cur + back);
  }
  return best >= inf ? kNoTour : best;
}

SparseEdgeSet optimum_tour_edges(const Instance& inst) {
  std::vector<Edge> used;
  for (const Tour& t : enumerate_optimum_tours(inst))
    for (const Edge& e : t.edges()) used.push_back(e);
  return SparseEdgeSet::from_edges(inst.size(), used);
}

SparseEdgeSet exact_useless_edges(const Instance& inst) {
  const auto used = optimum_tour_edges(inst);
  std::vector<Edge> useless;
  for (Vertex u = 0; u < inst.size(); ++u)
    for (Vertex v = u + 1; v < inst.size(); ++v)
      if (!used.contains(u, v)) useless.emplace_back(u, v);
  return SparseEdgeSet::from_edges(inst.size(), useless);
}

Length brute_min_path_system(const Instance& inst, std::span<const EndpointPair> pairs,
                             std::span<const Vertex> interior) {
  if (interior.size() > 8) throw std::invalid_argument("brute force limited to 8 interior vertices");
  const std::size_t k = interior.size();
  const std::size_t m = pairs.size();
  if (m == 0) return k == 0 ? 0 : std::numeric_limits<Length>::max();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Length best = std::numeric_limits<Length>::max();
  // Every ordering of the interior vertices, cut into m consecutive (possibly
  // empty) blocks assigned to the pairs in order, covers every assignment.
  do {
    auto cost_of_block = [&](std::size_t path, std::size_t from, std::size_t to) {
      Vertex prev = pairs[path].a;
      Length total = 0;
      for (std::size_t i = from; i < to; ++i) {
        total += inst.dist(prev, interior[perm[i]]);
        prev = interior[perm[i]];
      }
      return total + inst.dist(prev, pairs[path].b);
    };
    // Enumerate block boundaries 0 = c_0 <= c_1 <= ... <= c_m = k.
    std::vector<std::size_t> c(m + 1, 0);
    c[m] = k;
    auto recurse = [&](auto&& self, std::size_t idx, Length acc) -> void {
      if (idx == m) {
        best = std::min(best, acc);
        return;
      }
      const std::size_t lo = c[idx];
      for (std::size_t hi = (idx + 1 == m ? k : lo); hi <= k; ++hi) {
        c[idx + 1] = hi;
        self(self, idx + 1, acc + cost_of_block(idx, lo, hi));
      }
    };
    recurse(recurse, 0, 0);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace sparsify::oracle
