#include "sparsify/eliminate.hpp"

#include "sparsify/compat.hpp"

namespace sparsify {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::none: return "none";
    case Method::main_fast: return "main_fast";
    case Method::main_direct: return "main_direct";
    case Method::close_point: return "close_point";
    case Method::backtrack: return "backtrack";
  }
  return "unknown";
}

bool main_theorem_check(const Instance& inst, Edge pq, const PotentialPoint& r, const PotentialPoint& s, double margin,
                        const SparseEdgeSet* edges) {
  const Vertex rv = r.vertex;
  const Vertex sv = s.vertex;
  if (rv == sv || rv == pq.u || rv == pq.v || sv == pq.u || sv == pq.v) return false;
  const bool separated = (edges != nullptr && !edges->contains(rv, sv)) || !compatible(inst, pq.u, pq.v, rv, sv);
  if (!separated) return false;
  const double base = static_cast<double>(inst.dist(pq.u, pq.v) - inst.dist(rv, sv));
  return base + s.bound_p + r.bound_q > margin && base + r.bound_p + s.bound_q > margin;
}

bool close_point_refutes(const Instance& inst, Vertex p, Vertex q, Vertex r, Vertex x, Vertex y) {
  return inst.dist(x, y) + inst.dist(p, r) + inst.dist(q, r) < inst.dist(p, q) + inst.dist(x, r) + inst.dist(y, r);
}

namespace {

std::vector<Vertex> compatible_neighbors(const Instance& inst, const SparseEdgeSet& edges, Edge pq, Vertex r) {
  std::vector<Vertex> out;
  for (Vertex x : edges.neighbors(r))
    if (compatible(inst, pq.u, pq.v, r, x)) out.push_back(x);
  return out;
}

}  // namespace

bool close_point_check(const Instance& inst, const SparseEdgeSet& edges, Edge pq, Vertex r) {
  const Vertex p = pq.u;
  const Vertex q = pq.v;
  const auto R = compatible_neighbors(inst, edges, pq, r);
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::size_t j = i + 1; j < R.size(); ++j) {
      const Vertex x = R[i];
      const Vertex y = R[j];
      if ((x == p && y == q) || (x == q && y == p)) continue;
      if (!close_point_refutes(inst, p, q, r, x, y)) return false;
    }
  }
  return true;
}

std::vector<NeighborPair> feasible_pairs(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index,
                                         Edge pq, Vertex r, const DirectOptions& options) {
  const Vertex p = pq.u;
  const Vertex q = pq.v;
  const auto R = compatible_neighbors(inst, edges, pq, r);

  // Whether the path (end)-(mid)-r-y is 3-incompatible, for mid in {p, q}.
  std::vector<Vertex> witnesses_p;
  std::vector<Vertex> witnesses_q;
  if (options.use_three_incompatibility) {
    witnesses_p = witness_candidates(inst, index, p, r, options.witness_candidates);
    witnesses_q = witness_candidates(inst, index, q, r, options.witness_candidates);
  }
  auto blocked = [&](Vertex mid, Vertex y) {
    if (!options.use_three_incompatibility) return false;
    const Vertex end = mid == p ? q : p;
    return three_incompatible(inst, edges, mid, end, r, y, mid == p ? witnesses_p : witnesses_q);
  };

  std::vector<NeighborPair> out;
  for (std::size_t i = 0; i < R.size(); ++i) {
    for (std::size_t j = i + 1; j < R.size(); ++j) {
      const Vertex x = R[i];
      const Vertex y = R[j];
      const bool has_p = x == p || y == p;
      const bool has_q = x == q || y == q;
      if (has_p && has_q) continue;
      if (close_point_refutes(inst, p, q, r, x, y)) continue;
      if (has_p && blocked(p, x == p ? y : x)) continue;
      if (has_q && blocked(q, x == q ? y : x)) continue;
      out.push_back({x, y});
    }
  }
  return out;
}

bool refute_with_pair(const Instance& inst, Edge pq, Vertex r, std::span<const NeighborPair> r_pairs, Vertex s,
                      std::span<const NeighborPair> s_pairs) {
  const Vertex p = pq.u;
  const Vertex q = pq.v;
  const Length base = inst.dist(p, q) - inst.dist(r, s);
  auto has = [](const NeighborPair& pair, Vertex v) { return pair.a == v || pair.b == v; };

  // Both moves of the main theorem for the labeling x,y (at r) and z,w (at s).
  auto labeling_refutes = [&](Vertex x, Vertex y, Vertex z, Vertex w) {
    const Length m1 = base + inst.dist(r, x) - inst.dist(p, x) + inst.dist(s, w) - inst.dist(q, w);
    const Length m2 = base + inst.dist(r, y) - inst.dist(q, y) + inst.dist(s, z) - inst.dist(p, z);
    return m1 > 0 && m2 > 0;
  };

  for (const auto& rp : r_pairs) {
    const bool s_in = has(rp, s);
    for (const auto& sp : s_pairs) {
      const bool r_in = has(sp, r);
      if (s_in != r_in) continue;  // rs used on one side only
      if (s_in) return false;      // rs in the tour: the 3-opt argument does not apply
      if ((has(rp, p) && has(sp, p)) || (has(rp, q) && has(sp, q))) continue;  // p or q would get degree 3
      const bool refuted = labeling_refutes(rp.a, rp.b, sp.a, sp.b) || labeling_refutes(rp.a, rp.b, sp.b, sp.a) ||
                           labeling_refutes(rp.b, rp.a, sp.a, sp.b) || labeling_refutes(rp.b, rp.a, sp.b, sp.a);
      if (!refuted) return false;
    }
  }
  return true;
}

std::vector<Vertex> midpoint_candidates(const Instance& inst, const NeighborIndex& index, Edge pq, std::size_t k) {
  const Point& a = inst.point(pq.u);
  const Point& b = inst.point(pq.v);
  return index.nearest(Point{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, k, pq.u, pq.v);
}

Verdict direct_eliminate(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, Edge pq,
                         std::span<const Vertex> candidates, const DirectConfig& cfg) {
  Verdict verdict{pq};
  const std::size_t count = std::min(candidates.size(), cfg.candidates);
  std::vector<std::vector<NeighborPair>> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Vertex r = candidates[i];
    if (r == pq.u || r == pq.v) {
      pairs.emplace_back();
      continue;
    }
    pairs.push_back(feasible_pairs(inst, edges, index, pq, r, cfg.options));
    if (pairs.back().empty()) {
      verdict.useless = true;
      verdict.method = Method::close_point;
      verdict.r = r;
      return verdict;
    }
  }
  const std::size_t combined = std::min(count, cfg.pair_candidates);
  for (std::size_t i = 0; i < combined; ++i) {
    if (pairs[i].empty()) continue;
    for (std::size_t j = i + 1; j < combined; ++j) {
      if (pairs[j].empty()) continue;
      if (refute_with_pair(inst, pq, candidates[i], pairs[i], candidates[j], pairs[j])) {
        verdict.useless = true;
        verdict.method = Method::main_direct;
        verdict.r = candidates[i];
        verdict.s = candidates[j];
        return verdict;
      }
    }
  }
  return verdict;
}

bool replay(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, const Verdict& verdict,
            const DirectConfig& cfg) {
  if (!verdict.useless) return false;
  switch (verdict.method) {
    case Method::close_point:
      return feasible_pairs(inst, edges, index, verdict.edge, verdict.r, cfg.options).empty();
    case Method::main_direct: {
      const auto rp = feasible_pairs(inst, edges, index, verdict.edge, verdict.r, cfg.options);
      const auto sp = feasible_pairs(inst, edges, index, verdict.edge, verdict.s, cfg.options);
      return refute_with_pair(inst, verdict.edge, verdict.r, rp, verdict.s, sp);
    }
    default: return false;
  }
}

}  // namespace sparsify
