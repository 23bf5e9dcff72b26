#pragma once

#include <map>
#include <string>
#include <vector>

#include "sparsify/backtrack.hpp"
#include "sparsify/certify.hpp"
#include "sparsify/edge_set.hpp"
#include "sparsify/eliminate.hpp"
#include "sparsify/geometry.hpp"
#include "sparsify/instance.hpp"
#include "sparsify/kd_tree.hpp"

#include <json.hpp>

namespace sparsify {

struct PipelineConfig {
  bool step1 = true;
  bool step2 = true;
  bool step3 = true;
  /// Step 1 examines this many vertices nearest the midpoint of each pair, certified or not.
  std::size_t max_candidates = 10;
  DirectConfig direct;
  SearchConfig search;
  std::size_t step2_rounds = 50;
  std::size_t step3_rounds = 3;
  std::size_t threads = 1;
  double margin = kDefaultMargin;
};

/// Instance plus the derived geometry every step needs.
struct Workspace {
  explicit Workspace(const Instance& instance);

  const Instance& instance;
  NeighborIndex index;
  DeltaRadii deltas;
};

struct StepStats {
  bool ran = false;
  std::size_t edges = 0;
  std::size_t rounds = 0;
  double seconds = 0.0;
};

struct RunStats {
  std::string name;
  std::size_t n = 0;
  std::size_t m_input = 0;
  StepStats step1;
  StepStats step2;
  StepStats step3;
  std::map<std::string, std::size_t> methods;
  bool min_length_one = false;
  std::size_t final_edges = 0;

  double ratio() const { return n == 0 ? 0.0 : static_cast<double>(final_edges) / static_cast<double>(n); }
  nlohmann::json to_json() const;
};

/// Removed edges with their certificates, in the order they were decided.
struct StepLog {
  std::vector<Verdict> removed;
  std::size_t rounds = 0;
};

/// Decides one pair of the complete graph with the fast main-theorem test.
Verdict fast_verdict(const Workspace& ws, Edge pq, const PipelineConfig& cfg);

SparseEdgeSet step1_fast(const Workspace& ws, const PipelineConfig& cfg, StepLog* log = nullptr);
SparseEdgeSet step2_direct(const Workspace& ws, const SparseEdgeSet& edges, const PipelineConfig& cfg,
                           StepLog* log = nullptr);
SparseEdgeSet step3_backtrack(const Workspace& ws, const SparseEdgeSet& edges, const PipelineConfig& cfg,
                              StepLog* log = nullptr);

struct RunResult {
  SparseEdgeSet edges;
  RunStats stats;
};

RunResult run(const Instance& instance, const PipelineConfig& cfg);

/// Re-derives a stored verdict against the edge set it was decided on.
bool replay_verdict(const Workspace& ws, const SparseEdgeSet& snapshot, const Verdict& verdict,
                    const PipelineConfig& cfg);

}  // namespace sparsify
