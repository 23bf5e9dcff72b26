#include "sparsify/backtrack.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sparsify/compat.hpp"

namespace sparsify {

namespace {
constexpr Vertex kNone = NeighborIndex::kNone;
}

PathSystem::PathSystem(const Instance& inst, Edge anchor) : anchor_(anchor) { add_edge(inst, anchor.u, anchor.v); }

std::size_t PathSystem::slot(Vertex v) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i] == v) return i;
  return kMissing;
}

std::size_t PathSystem::ensure(Vertex v) {
  const std::size_t i = slot(v);
  if (i != kMissing) return i;
  vertices_.push_back(v);
  adjacent_.push_back({kNone, kNone});
  return vertices_.size() - 1;
}

int PathSystem::degree(Vertex v) const {
  const std::size_t i = slot(v);
  if (i == kMissing) return 0;
  return (adjacent_[i][0] != kNone) + (adjacent_[i][1] != kNone);
}

std::array<Vertex, 2> PathSystem::neighbors(Vertex v) const {
  const std::size_t i = slot(v);
  return i == kMissing ? std::array<Vertex, 2>{kNone, kNone} : adjacent_[i];
}

void PathSystem::add_edge(const Instance& inst, Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("path system: self-loop");
  const std::size_t ia = ensure(a);
  const std::size_t ib = ensure(b);
  auto attach = [](std::array<Vertex, 2>& adj, Vertex w) {
    if (adj[0] == kNone) adj[0] = w;
    else if (adj[1] == kNone) adj[1] = w;
    else throw std::invalid_argument("path system: degree above two");
  };
  attach(adjacent_[ia], b);
  attach(adjacent_[ib], a);
  length_ += inst.dist(a, b);
}

Vertex PathSystem::other_end(Vertex endpoint) const {
  Vertex prev = kNone;
  Vertex cur = endpoint;
  while (true) {
    const auto adj = neighbors(cur);
    const Vertex next = adj[0] != prev ? adj[0] : adj[1];
    if (next == kNone || next == endpoint) return cur;
    prev = cur;
    cur = next;
  }
}

std::vector<Vertex> PathSystem::path_through(Vertex v) const {
  // Walk to one end, then collect toward the other.
  Vertex start = v;
  {
    Vertex prev = kNone;
    Vertex cur = v;
    while (true) {
      const auto adj = neighbors(cur);
      const Vertex next = adj[0] != prev ? adj[0] : adj[1];
      if (next == kNone || next == v) break;
      prev = cur;
      cur = next;
    }
    start = cur;
  }
  std::vector<Vertex> seq{start};
  Vertex prev = kNone;
  Vertex cur = start;
  while (true) {
    const auto adj = neighbors(cur);
    const Vertex next = adj[0] != prev ? adj[0] : adj[1];
    if (next == kNone || next == start) break;
    seq.push_back(next);
    prev = cur;
    cur = next;
  }
  return seq;
}

std::vector<Edge> PathSystem::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    for (Vertex w : adjacent_[i])
      if (w != kNone && vertices_[i] < w) out.emplace_back(vertices_[i], w);
  return out;
}

std::vector<std::vector<Vertex>> PathSystem::paths() const {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> seen;
  for (Vertex v : vertices_) {
    if (degree(v) != 1 || std::find(seen.begin(), seen.end(), v) != seen.end()) continue;
    out.push_back(path_through(v));
    seen.push_back(out.back().front());
    seen.push_back(out.back().back());
  }
  return out;
}

std::vector<Vertex> PathSystem::interior() const {
  std::vector<Vertex> out;
  for (Vertex v : vertices_)
    if (degree(v) == 2) out.push_back(v);
  return out;
}

std::vector<Vertex> PathSystem::endpoints() const {
  std::vector<Vertex> out;
  for (Vertex v : vertices_)
    if (degree(v) == 1) out.push_back(v);
  return out;
}

Length min_path_system_length(const Instance& inst, const PathSystem& state) {
  const auto paths = state.paths();
  const auto interior = state.interior();
  const std::size_t k = interior.size();
  if (k > 20) throw std::invalid_argument("path system DP limited to 20 interior vertices");
  constexpr Length inf = std::numeric_limits<Length>::max() / 4;
  const std::size_t full = std::size_t{1} << k;
  const std::size_t width = k + 1;  // position k stands for the start of the current path

  // cur[S * width + j]: paths before the current one are closed, the current one
  // has reached interior[j] (or its start), and S is the set of interior vertices used.
  std::vector<Length> cur(full * width, inf);
  std::vector<Length> next(full * width, inf);
  cur[k] = 0;
  Length best = inf;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Vertex a = paths[i].front();
    const Vertex b = paths[i].back();
    auto at = [&](std::size_t j) { return j == k ? a : interior[j]; };
    std::fill(next.begin(), next.end(), inf);
    const bool last = i + 1 == paths.size();
    for (std::size_t set = 0; set < full; ++set) {
      for (std::size_t j = 0; j < width; ++j) {
        const Length c = cur[set * width + j];
        if (c >= inf) continue;
        for (std::size_t t = 0; t < k; ++t) {
          const std::size_t bit = std::size_t{1} << t;
          if (set & bit) continue;
          Length& slot = cur[(set | bit) * width + t];
          slot = std::min(slot, c + inst.dist(at(j), interior[t]));
        }
        const Length closed = c + inst.dist(at(j), b);
        if (last) {
          if (set == full - 1) best = std::min(best, closed);
        } else {
          Length& slot = next[set * width + k];
          slot = std::min(slot, closed);
        }
      }
    }
    std::swap(cur, next);
  }
  return best;
}

bool is_locally_minimal(const Instance& inst, const PathSystem& state, std::size_t max_interior) {
  if (state.interior().size() > max_interior) return true;
  return min_path_system_length(inst, state) >= state.length();
}

Backtracker::Backtracker(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index,
                         SearchConfig cfg)
    : inst_(inst), edges_(edges), index_(index), cfg_(cfg) {}

bool Backtracker::blocked_triple(Vertex a, Vertex b, Vertex c, Vertex d) {
  const std::array<Vertex, 4> key{a, b, c, d};
  if (auto it = triple_cache_.find(key); it != triple_cache_.end()) return it->second;
  // Path a-b-c-d read as q-p-r-x.
  const bool blocked = three_incompatible(inst_, edges_, index_, b, a, c, d, cfg_.witness_candidates);
  triple_cache_.emplace(key, blocked);
  return blocked;
}

bool Backtracker::window_blocked(const PathSystem& extended, Vertex v, std::span<const Vertex> added) {
  const auto seq = extended.path_through(v);
  if (seq.size() < 4) return false;
  auto is_new = [&](Vertex a, Vertex b) {
    if (a == v) return std::find(added.begin(), added.end(), b) != added.end();
    if (b == v) return std::find(added.begin(), added.end(), a) != added.end();
    return false;
  };
  for (std::size_t i = 0; i + 3 < seq.size(); ++i) {
    const bool touches = is_new(seq[i], seq[i + 1]) || is_new(seq[i + 1], seq[i + 2]) || is_new(seq[i + 2], seq[i + 3]);
    if (!touches) continue;
    if (blocked_triple(seq[i], seq[i + 1], seq[i + 2], seq[i + 3])) return true;
    if (blocked_triple(seq[i + 3], seq[i + 2], seq[i + 1], seq[i])) return true;
  }
  return false;
}

std::vector<Move> Backtracker::options_at(const PathSystem& state, Vertex v) {
  const int deg = state.degree(v);
  if (deg >= 2) return {};
  const auto committed = state.edges();
  const Vertex fixed = state.neighbors(v)[0];
  const std::size_t n = inst_.size();

  auto fits = [&](Vertex w) {
    if (w == fixed || state.degree(w) >= 2) return false;
    for (const Edge& e : committed)
      if (!compatible(inst_, e.u, e.v, v, w)) return false;
    return true;
  };
  std::vector<Vertex> cands;
  for (Vertex w : edges_.neighbors(v))
    if (fits(w)) cands.push_back(w);

  // Pair {x, y} at v against every committed edge not touching v.
  auto pair_refuted = [&](Vertex x, Vertex y) {
    for (const Edge& e : committed) {
      if (e.u == v || e.v == v) continue;
      if ((x == e.u && y == e.v) || (x == e.v && y == e.u)) continue;
      if (close_point_refutes(inst_, e.u, e.v, v, x, y)) return true;
    }
    return false;
  };

  std::vector<std::pair<Length, Move>> out;
  if (deg == 1) {
    const Vertex own_end = state.other_end(v);
    for (Vertex w : cands) {
      Move move{v, {w, kNone}, 1, false};
      if (w == own_end) {
        if (state.vertex_count() != n) continue;
        move.closes_tour = true;
      }
      if (pair_refuted(fixed, w)) continue;
      if (!move.closes_tour) {
        PathSystem next = state;
        next.add_edge(inst_, v, w);
        const Vertex added[] = {w};
        if (window_blocked(next, v, added)) continue;
      }
      out.emplace_back(inst_.dist(v, w), move);
    }
  } else {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      for (std::size_t j = i + 1; j < cands.size(); ++j) {
        const Vertex x = cands[i];
        const Vertex y = cands[j];
        Move move{v, {x, y}, 2, false};
        const bool same_path = state.contains(x) && state.contains(y) && state.degree(x) == 1 &&
                               state.other_end(x) == y;
        if (same_path) {
          if (state.vertex_count() + 1 != n) continue;
          move.closes_tour = true;
        }
        if (pair_refuted(x, y)) continue;
        if (!move.closes_tour && (state.contains(x) || state.contains(y))) {
          PathSystem next = state;
          next.add_edge(inst_, v, x);
          next.add_edge(inst_, v, y);
          const Vertex added[] = {x, y};
          if (window_blocked(next, v, added)) continue;
        }
        out.emplace_back(inst_.dist(v, x) + inst_.dist(v, y), move);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Move> moves;
  moves.reserve(out.size());
  for (auto& [len, move] : out) moves.push_back(move);
  return moves;
}

std::vector<Vertex> Backtracker::branch_candidates(const PathSystem& state) const {
  auto out = state.endpoints();
  std::size_t fresh = 0;
  for (Vertex v : anchor_candidates_) {
    if (fresh >= cfg_.fresh_candidates) break;
    if (state.contains(v)) continue;
    out.push_back(v);
    ++fresh;
  }
  return out;
}

std::vector<Move> Backtracker::extensions(const PathSystem& state) {
  if (anchor_candidates_.empty())
    anchor_candidates_ =
        midpoint_candidates(inst_, index_, state.anchor(), cfg_.fresh_candidates + 2 * cfg_.max_depth + 2);
  std::vector<Move> best;
  bool have = false;
  for (Vertex v : branch_candidates(state)) {
    auto moves = options_at(state, v);
    if (moves.empty()) return {};
    if (!have || moves.size() < best.size()) {
      best = std::move(moves);
      have = true;
    }
  }
  return best;
}

bool Backtracker::pruned_in_context(const PathSystem& state,
                                    const std::vector<std::pair<Vertex, std::vector<Move>>>& options) {
  struct Probe {
    Vertex v;
    std::vector<NeighborPair> pairs;
  };
  std::vector<Probe> probes;
  for (Vertex v : state.interior()) {
    const auto adj = state.neighbors(v);
    probes.push_back({v, {{adj[0], adj[1]}}});
  }
  for (const auto& [v, moves] : options) {
    Probe probe{v, {}};
    const Vertex fixed = state.neighbors(v)[0];
    for (const Move& m : moves) {
      if (m.count == 1) probe.pairs.push_back({fixed, m.to[0]});
      else probe.pairs.push_back({m.to[0], m.to[1]});
    }
    probes.push_back(std::move(probe));
  }

  for (const Edge& e : state.edges()) {
    const Point& a = inst_.point(e.u);
    const Point& b = inst_.point(e.v);
    const Point mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < probes.size(); ++i) {
      const Vertex v = probes[i].v;
      if (v == e.u || v == e.v) continue;
      const Point& pv = inst_.point(v);
      order.emplace_back((pv.x - mid.x) * (pv.x - mid.x) + (pv.y - mid.y) * (pv.y - mid.y), i);
    }
    std::sort(order.begin(), order.end());
    if (order.size() > cfg_.context_probes) order.resize(cfg_.context_probes);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        const Probe& r = probes[order[i].second];
        const Probe& s = probes[order[j].second];
        if (r.pairs.size() * s.pairs.size() > cfg_.context_combo_cap) continue;
        if (refute_with_pair(inst_, e, r.v, r.pairs, s.v, s.pairs)) return true;
      }
    }
  }
  return false;
}

Backtracker::Outcome Backtracker::explore(const PathSystem& state) {
  if (nodes_ >= cfg_.node_budget) {
    exhausted_ = true;
    return Outcome::open;
  }
  ++nodes_;

  const auto committed = state.edges();
  for (Vertex v : state.interior()) {
    const auto adj = state.neighbors(v);
    for (const Edge& e : committed) {
      if (e.u == v || e.v == v) continue;
      if ((adj[0] == e.u && adj[1] == e.v) || (adj[0] == e.v && adj[1] == e.u)) continue;
      if (close_point_refutes(inst_, e.u, e.v, v, adj[0], adj[1])) return Outcome::refuted;
    }
  }

  std::vector<std::pair<Vertex, std::vector<Move>>> options;
  for (Vertex v : branch_candidates(state)) {
    auto moves = options_at(state, v);
    if (moves.empty()) return Outcome::refuted;
    for (const Move& m : moves)
      if (m.closes_tour) return Outcome::open;
    options.emplace_back(v, std::move(moves));
  }
  if (pruned_in_context(state, options)) return Outcome::refuted;
  if (!is_locally_minimal(inst_, state, cfg_.max_dp_interior)) return Outcome::refuted;
  if (state.depth() >= cfg_.max_depth || options.empty()) return Outcome::open;

  std::size_t pick = 0;
  for (std::size_t i = 1; i < options.size(); ++i)
    if (options[i].second.size() < options[pick].second.size()) pick = i;

  for (const Move& m : options[pick].second) {
    PathSystem child = state;
    for (std::size_t i = 0; i < m.count; ++i) child.add_edge(inst_, m.at, m.to[i]);
    child.bump_depth();
    if (explore(child) == Outcome::open) return Outcome::open;
  }
  return Outcome::refuted;
}

RefuteResult Backtracker::refute(Edge pq) {
  nodes_ = 0;
  exhausted_ = false;
  anchor_candidates_ = midpoint_candidates(inst_, index_, pq, cfg_.fresh_candidates + 2 * cfg_.max_depth + 2);
  const PathSystem root(inst_, pq);
  return explore(root) == Outcome::refuted ? RefuteResult::useless : RefuteResult::unknown;
}

RefuteResult refute_edge(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, Edge pq,
                         const SearchConfig& cfg) {
  Backtracker search(inst, edges, index, cfg);
  return search.refute(pq);
}

}  // namespace sparsify
