#include "sparsify/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace sparsify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Runs fn(i, worker) for i in [0, count). Work is handed out in chunks, so
/// results must be written to per-index slots to stay deterministic.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, std::size_t chunk, Fn&& fn) {
  if (threads <= 1 || count <= chunk) {
    for (std::size_t i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        while (true) {
          const std::size_t start = next.fetch_add(chunk);
          if (start >= count) break;
          const std::size_t stop = std::min(count, start + chunk);
          for (std::size_t i = start; i < stop; ++i) fn(i, w);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::size_t worker_count(const PipelineConfig& cfg) { return std::max<std::size_t>(1, cfg.threads); }

}  // namespace

Workspace::Workspace(const Instance& inst)
    : instance(inst), index(inst.points()), deltas(compute_deltas(inst, index)) {}

nlohmann::json RunStats::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["n"] = n;
  j["m_input"] = m_input;
  auto put = [&](const char* edges_key, const char* seconds_key, const StepStats& s) {
    if (s.ran) {
      j[edges_key] = s.edges;
      j[seconds_key] = s.seconds;
    } else {
      j[edges_key] = nullptr;
      j[seconds_key] = nullptr;
    }
  };
  put("step1_edges", "step1_seconds", step1);
  put("step2_edges", "step2_seconds", step2);
  put("step3_edges", "step3_seconds", step3);
  j["step2_rounds"] = step2.rounds;
  j["step3_rounds"] = step3.rounds;
  j["ratio"] = ratio();
  j["final_edges"] = final_edges;
  j["methods"] = methods;
  j["min_length_one"] = min_length_one;
  return j;
}

Verdict fast_verdict(const Workspace& ws, Edge pq, const PipelineConfig& cfg) {
  const Instance& inst = ws.instance;
  Verdict verdict{pq};
  std::vector<PotentialPoint> certified;
  certified.reserve(cfg.max_candidates);
  for (Vertex r : midpoint_candidates(inst, ws.index, pq, cfg.max_candidates)) {
    const Certificate cert = certify_strong(inst, ws.deltas, pq, r, cfg.margin);
    if (!cert) continue;
    for (const PotentialPoint& s : certified) {
      if (main_theorem_check(inst, pq, *cert.point, s, cfg.margin)) {
        verdict.useless = true;
        verdict.method = Method::main_fast;
        verdict.r = r;
        verdict.s = s.vertex;
        return verdict;
      }
    }
    certified.push_back(*cert.point);
  }
  return verdict;
}

SparseEdgeSet step1_fast(const Workspace& ws, const PipelineConfig& cfg, StepLog* log) {
  const std::size_t n = ws.instance.size();
  // One row per p holds the surviving q > p; rows are filled independently.
  std::vector<std::vector<Vertex>> kept(n);
  std::vector<std::vector<Verdict>> removed(log != nullptr ? n : 0);
  parallel_for(n, worker_count(cfg), 1, [&](std::size_t p, std::size_t) {
    for (Vertex q = static_cast<Vertex>(p) + 1; q < n; ++q) {
      const Verdict v = fast_verdict(ws, Edge(static_cast<Vertex>(p), q), cfg);
      if (!v.useless) kept[p].push_back(q);
      else if (log != nullptr) removed[p].push_back(v);
    }
  });
  std::vector<Edge> edges;
  for (Vertex p = 0; p < n; ++p)
    for (Vertex q : kept[p]) edges.emplace_back(p, q);
  if (log != nullptr) {
    log->rounds = 1;
    for (auto& row : removed) log->removed.insert(log->removed.end(), row.begin(), row.end());
  }
  return SparseEdgeSet::from_edges(n, edges);
}

namespace {

/// Snapshot rounds: every verdict of a round is computed against the same
/// edge set, removals are applied together afterwards.
template <class Decide>
SparseEdgeSet snapshot_rounds(const SparseEdgeSet& input, std::size_t max_rounds, std::size_t threads,
                              StepLog* log, Decide&& decide) {
  SparseEdgeSet current = input;
  std::size_t rounds = 0;
  while (rounds < max_rounds) {
    const auto list = current.edges();
    std::vector<Verdict> verdicts(list.size());
    parallel_for(list.size(), threads, 16,
                 [&](std::size_t i, std::size_t worker) { verdicts[i] = decide(current, list[i], worker); });
    ++rounds;
    std::vector<Edge> gone;
    for (const Verdict& v : verdicts) {
      if (!v.useless) continue;
      gone.push_back(v.edge);
      if (log != nullptr) log->removed.push_back(v);
    }
    if (gone.empty()) break;
    current = current.without(gone);
  }
  if (log != nullptr) log->rounds = rounds;
  return current;
}

}  // namespace

SparseEdgeSet step2_direct(const Workspace& ws, const SparseEdgeSet& edges, const PipelineConfig& cfg,
                           StepLog* log) {
  return snapshot_rounds(edges, cfg.step2_rounds, worker_count(cfg), log,
                         [&](const SparseEdgeSet& snapshot, Edge pq, std::size_t) {
                           const auto cands = midpoint_candidates(ws.instance, ws.index, pq, cfg.direct.candidates);
                           return direct_eliminate(ws.instance, snapshot, ws.index, pq, cands, cfg.direct);
                         });
}

SparseEdgeSet step3_backtrack(const Workspace& ws, const SparseEdgeSet& edges, const PipelineConfig& cfg,
                              StepLog* log) {
  const std::size_t threads = worker_count(cfg);
  SparseEdgeSet current = edges;
  std::size_t rounds = 0;
  StepLog local;
  while (rounds < cfg.step3_rounds) {
    // Searchers cache results that depend on the edge set, so they are rebuilt per round.
    std::vector<Backtracker> searchers;
    searchers.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) searchers.emplace_back(ws.instance, current, ws.index, cfg.search);
    StepLog round_log;
    const SparseEdgeSet next =
        snapshot_rounds(current, 1, threads, &round_log, [&](const SparseEdgeSet&, Edge pq, std::size_t worker) {
          Verdict v{pq};
          if (searchers[worker].refute(pq) == RefuteResult::useless) {
            v.useless = true;
            v.method = Method::backtrack;
          }
          return v;
        });
    ++rounds;
    local.removed.insert(local.removed.end(), round_log.removed.begin(), round_log.removed.end());
    if (round_log.removed.empty()) break;
    current = next;
  }
  if (log != nullptr) {
    log->rounds = rounds;
    log->removed = std::move(local.removed);
  }
  return current;
}

RunResult run(const Instance& instance, const PipelineConfig& cfg) {
  RunResult result;
  RunStats& stats = result.stats;
  stats.name = instance.name();
  stats.n = instance.size();
  stats.m_input = instance.size() * (instance.size() - 1) / 2;

  const Workspace ws(instance);
  stats.min_length_one = ws.deltas.min_length() <= 1;

  auto record = [&](StepStats& s, const SparseEdgeSet& edges, const StepLog& log, Clock::time_point start) {
    s.ran = true;
    s.edges = edges.edge_count();
    s.rounds = log.rounds;
    s.seconds = seconds_since(start);
    for (const Verdict& v : log.removed) ++stats.methods[std::string(to_string(v.method))];
  };

  SparseEdgeSet edges;
  if (cfg.step1) {
    const auto start = Clock::now();
    StepLog log;
    edges = step1_fast(ws, cfg, &log);
    record(stats.step1, edges, log, start);
  } else {
    edges = SparseEdgeSet::complete(instance.size());
  }
  if (cfg.step2) {
    const auto start = Clock::now();
    StepLog log;
    edges = step2_direct(ws, edges, cfg, &log);
    record(stats.step2, edges, log, start);
  }
  if (cfg.step3) {
    const auto start = Clock::now();
    StepLog log;
    edges = step3_backtrack(ws, edges, cfg, &log);
    record(stats.step3, edges, log, start);
  }
  stats.final_edges = edges.edge_count();
  result.edges = std::move(edges);
  return result;
}

bool replay_verdict(const Workspace& ws, const SparseEdgeSet& snapshot, const Verdict& verdict,
                    const PipelineConfig& cfg) {
  if (!verdict.useless) return false;
  const Instance& inst = ws.instance;
  switch (verdict.method) {
    case Method::main_fast: {
      const auto r = certify_strong(inst, ws.deltas, verdict.edge, verdict.r, cfg.margin);
      const auto s = certify_strong(inst, ws.deltas, verdict.edge, verdict.s, cfg.margin);
      return r && s && main_theorem_check(inst, verdict.edge, *r.point, *s.point, cfg.margin);
    }
    case Method::close_point:
    case Method::main_direct: return replay(inst, snapshot, ws.index, verdict, cfg.direct);
    case Method::backtrack:
      return refute_edge(inst, snapshot, ws.index, verdict.edge, cfg.search) == RefuteResult::useless;
    case Method::none: return false;
  }
  return false;
}

}  // namespace sparsify
