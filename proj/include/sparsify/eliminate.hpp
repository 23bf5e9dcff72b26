#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sparsify/certify.hpp"
#include "sparsify/edge_set.hpp"
#include "sparsify/instance.hpp"
#include "sparsify/kd_tree.hpp"

namespace sparsify {

enum class Method { none, main_fast, main_direct, close_point, backtrack };

std::string_view to_string(Method method);

/// Per-edge decision with the vertices that certify it.
struct Verdict {
  Edge edge;
  bool useless = false;
  Method method = Method::none;
  Vertex r = NeighborIndex::kNone;
  Vertex s = NeighborIndex::kNone;
};

/// Main elimination test with certified lower bounds. True proves pq useless.
///
/// The covers used are the cone sets intersected with each point's compatible
/// neighborhood, so r and s are separated when rs is not an edge of `edges`
/// (nullptr means the complete graph) or when rs is incompatible with pq.
bool main_theorem_check(const Instance& inst, Edge pq, const PotentialPoint& r, const PotentialPoint& s,
                        double margin = kDefaultMargin, const SparseEdgeSet* edges = nullptr);

/// l(xy) + l(pr) + l(qr) < l(pq) + l(xr) + l(yr): moving r between p and q
/// beats any tour where pq is an edge and r sits between x and y.
bool close_point_refutes(const Instance& inst, Vertex p, Vertex q, Vertex r, Vertex x, Vertex y);

/// Close point test: every admissible neighbor pair {x, y} of r satisfies
///   l(xy) + l(pr) + l(qr) < l(pq) + l(xr) + l(yr).
/// True proves pq useless.
bool close_point_check(const Instance& inst, const SparseEdgeSet& edges, Edge pq, Vertex r);

/// Unordered pair of prospective tour neighbors of some vertex.
struct NeighborPair {
  Vertex a;
  Vertex b;
};

struct DirectOptions {
  std::size_t witness_candidates = 10;  ///< z candidates for 3-incompatibility pruning
  bool use_three_incompatibility = true;
};

/// Neighbor pairs {x, y} of r that could be r's tour neighbors in an optimum
/// tour containing pq: both rx, ry in E and compatible with pq, {x, y} != {p, q},
/// not refuted by the close point inequality, and (when x is p or q) not
/// refuted by 3-incompatibility.
std::vector<NeighborPair> feasible_pairs(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index,
                                         Edge pq, Vertex r, const DirectOptions& options = {});

/// True if every consistent combination of r- and s-neighbor pairs admits a
/// labeling for which both 3-opt moves of the main theorem strictly shorten
/// the tour.
bool refute_with_pair(const Instance& inst, Edge pq, Vertex r, std::span<const NeighborPair> r_pairs, Vertex s,
                      std::span<const NeighborPair> s_pairs);

struct DirectConfig {
  std::size_t candidates = 10;       ///< vertices examined for empty feasible sets
  std::size_t pair_candidates = 6;   ///< the first this-many are combined pairwise
  DirectOptions options;
};

/// Exact elimination on a sparse graph; `candidates` ordered by preference.
Verdict direct_eliminate(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, Edge pq,
                         std::span<const Vertex> candidates, const DirectConfig& cfg = {});

/// Candidates for pq: vertices nearest the midpoint of pq, excluding p and q.
std::vector<Vertex> midpoint_candidates(const Instance& inst, const NeighborIndex& index, Edge pq, std::size_t k);

/// Re-evaluates a stored close_point or main_direct verdict.
bool replay(const Instance& inst, const SparseEdgeSet& edges, const NeighborIndex& index, const Verdict& verdict,
            const DirectConfig& cfg = {});

}  // namespace sparsify
