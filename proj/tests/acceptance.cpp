// Acceptance suite: one status line per criterion.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "sparsify/certify.hpp"
#include "sparsify/compat.hpp"
#include "sparsify/oracle.hpp"
#include "sparsify/pipeline.hpp"
#include "sparsify/tsplib_io.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace sparsify;

namespace {

int failures = 0;

void report(int id, const char* status, const std::string& detail) {
  std::printf("criterion %d: %-7s %s\n", id, status, detail.c_str());
  std::fflush(stdout);
  if (std::string(status) == "FAIL") ++failures;
}

void report(int id, bool ok, const std::string& detail) { report(id, ok ? "PASS" : "FAIL", detail); }

std::optional<Instance> load_if_present(const fs::path& dir, const std::string& name) {
  const fs::path file = dir / (name + ".tsp");
  if (!fs::exists(file)) return std::nullopt;
  return load_instance(file.string());
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Criteria 1 and 2 share the random corpus.
void soundness_and_preservation(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size(6, 10);
  PipelineConfig cfg;
  cfg.search.max_depth = 4;
  std::size_t violations = 0;
  std::size_t mismatches = 0;
  std::size_t eliminated = 0;
  std::size_t total = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    const Instance inst = testing::random_instance(rng, size(rng));
    const auto result = run(inst, cfg);
    const auto used = oracle::optimum_tour_edges(inst);
    for (const Edge& e : used.edges())
      if (!result.edges.contains(e.u, e.v)) ++violations;
    total += inst.size() * (inst.size() - 1) / 2;
    eliminated += inst.size() * (inst.size() - 1) / 2 - result.edges.edge_count();
    if (oracle::held_karp_value(inst, &result.edges) != oracle::held_karp_value(inst)) ++mismatches;
  }
  const double secs = seconds_since(start);
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu instances, %zu optimum-tour edges eliminated (of %zu/%zu eliminated), %.1fs",
                count, violations, eliminated, total, secs);
  report(1, violations == 0, buf);
  std::snprintf(buf, sizeof buf, "%zu instances, %zu optimum-length mismatches", count, mismatches);
  report(2, mismatches == 0, buf);
}

struct Reduction {
  std::size_t n = 0;
  std::size_t step1 = 0;
  double step1_seconds = 0;
  std::size_t step2 = 0;
  std::size_t step3 = 0;
  double ratio = 0;
  bool chain = true;
  SparseEdgeSet final_edges;
  nlohmann::json stats;
};

Reduction reduce(const Instance& inst, std::size_t threads, bool with_step3) {
  PipelineConfig cfg;
  cfg.threads = threads;
  cfg.search.max_depth = 10;
  const Workspace ws(inst);
  Reduction out;
  out.n = inst.size();
  const auto t1 = std::chrono::steady_clock::now();
  const auto e1 = step1_fast(ws, cfg);
  out.step1_seconds = seconds_since(t1);
  const auto e2 = step2_direct(ws, e1, cfg);
  out.step1 = e1.edge_count();
  out.step2 = e2.edge_count();
  out.chain = e2.is_subset_of(e1);
  if (with_step3) {
    const auto e3 = step3_backtrack(ws, e2, cfg);
    out.step3 = e3.edge_count();
    out.chain = out.chain && e3.is_subset_of(e2);
    out.final_edges = e3;
  } else {
    out.final_edges = e2;
  }
  out.ratio = static_cast<double>(out.final_edges.edge_count()) / static_cast<double>(out.n);
  return out;
}

std::string describe(const Reduction& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "n=%zu step1=%zu (%.2fs) step2=%zu step3=%zu ratio=%.2f", r.n, r.step1,
                r.step1_seconds, r.step2, r.step3, r.ratio);
  return buf;
}

void paper_scale(const fs::path& data, const std::optional<Reduction>& proxy) {
  if (auto inst = load_if_present(data, "pr1002")) {
    const Reduction r = reduce(*inst, 1, true);
    const bool ok = r.step1 <= 100000 && r.step1_seconds <= 60.0 && r.step2 <= 12000 && r.ratio <= 6.0 && r.chain;
    report(3, ok, "pr1002 " + describe(r));
  } else {
    report(3, "BLOCKED", "data/pr1002.tsp not present" +
                             (proxy ? "; pcb442 at the same per-vertex limits: " + describe(*proxy) : std::string()));
  }

  std::string detail;
  bool all_present = true;
  bool ok = true;
  for (const char* name : {"pr1002", "u1060", "nrw1379"}) {
    auto inst = load_if_present(data, name);
    if (!inst) {
      all_present = false;
      detail += std::string(name) + " missing; ";
      continue;
    }
    const Reduction r = reduce(*inst, 1, false);
    ok = ok && r.step2 <= 30 * r.n;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s step1+2=%zu (%.1f n); ", name, r.step2,
                  static_cast<double>(r.step2) / static_cast<double>(r.n));
    detail += buf;
  }
  if (proxy) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "pcb442 step1+2=%zu (%.1f n)", proxy->step2,
                  static_cast<double>(proxy->step2) / static_cast<double>(proxy->n));
    detail += buf;
  }
  report(4, all_present ? (ok ? "PASS" : "FAIL") : "BLOCKED", detail);
}

// Criterion 5: certified bounds never exceed the enumerated minima.
void bound_dominance(const Instance& inst, const std::string& label, std::size_t wanted, std::uint64_t seed) {
  const NeighborIndex index(inst.points());
  const DeltaRadii deltas = compute_deltas(inst, index);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(inst.size() - 1));
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t attempts = 0;
  while (checked < wanted && attempts < 50 * wanted) {
    const Vertex a = pick(rng);
    const Vertex b = pick(rng);
    if (a == b) continue;
    const Edge pq(a, b);
    const Point& pa = inst.point(pq.u);
    const Point& pb = inst.point(pq.v);
    for (Vertex r : index.nearest({0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)}, 10, pq.u, pq.v)) {
      ++attempts;
      const auto cert = certify_strong(inst, deltas, pq, r);
      if (!cert) continue;
      double exact_p = kInfinity;
      double exact_q = kInfinity;
      for (Vertex x = 0; x < inst.size(); ++x) {
        if (x == r || !compatible(inst, pq.u, pq.v, r, x)) continue;
        const auto where = in_cone(inst, deltas, pq, r, x);
        const double gain_p = static_cast<double>(inst.dist(r, x) - inst.dist(pq.u, x));
        const double gain_q = static_cast<double>(inst.dist(r, x) - inst.dist(pq.v, x));
        if (where == ConeMembership::p_only || where == ConeMembership::both) exact_p = std::min(exact_p, gain_p);
        if (where == ConeMembership::q_only || where == ConeMembership::both) exact_q = std::min(exact_q, gain_q);
      }
      if (cert.point->bound_p > exact_p || cert.point->bound_q > exact_q) ++violations;
      ++checked;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %zu certified (pq, r) triples, %zu bounds above the enumerated minimum",
                label.c_str(), checked, violations);
  report(5, violations == 0 && checked >= wanted, buf);
}

// Criterion 6: minimality DP against brute force.
void dp_versus_brute(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::size_t disagreements = 0;
  std::size_t minimal = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const Instance inst = testing::random_instance(rng, 14, 100);
    std::vector<Vertex> verts(inst.size());
    std::iota(verts.begin(), verts.end(), Vertex{0});
    std::shuffle(verts.begin(), verts.end(), rng);
    const std::size_t paths = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const std::size_t interior = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
    // Split interior vertices among the paths at random cut points.
    std::vector<std::size_t> share(paths, 0);
    for (std::size_t k = 0; k < interior; ++k) ++share[std::uniform_int_distribution<std::size_t>(0, paths - 1)(rng)];
    std::size_t next = 0;
    std::vector<std::vector<Vertex>> seqs;
    for (std::size_t p = 0; p < paths; ++p) {
      std::vector<Vertex> seq;
      for (std::size_t k = 0; k < share[p] + 2; ++k) seq.push_back(verts[next++]);
      // Half the time order interior vertices greedily so that minimal systems occur often.
      if (i % 2 == 0 && seq.size() > 3) {
        for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
          std::size_t best = k;
          for (std::size_t j = k + 1; j + 1 < seq.size(); ++j)
            if (inst.dist(seq[k - 1], seq[j]) < inst.dist(seq[k - 1], seq[best])) best = j;
          std::swap(seq[k], seq[best]);
        }
      }
      seqs.push_back(seq);
    }
    PathSystem state(inst, Edge(seqs[0][0], seqs[0][1]));
    for (std::size_t p = 0; p < seqs.size(); ++p)
      for (std::size_t k = (p == 0 ? 1 : 0); k + 1 < seqs[p].size(); ++k) state.add_edge(inst, seqs[p][k], seqs[p][k + 1]);
    std::vector<oracle::EndpointPair> pairs;
    std::vector<Vertex> inner;
    for (const auto& seq : seqs) {
      pairs.push_back({seq.front(), seq.back()});
      inner.insert(inner.end(), seq.begin() + 1, seq.end() - 1);
    }
    const bool brute = oracle::brute_min_path_system(inst, pairs, inner) >= state.length();
    const bool dp = is_locally_minimal(inst, state);
    minimal += brute;
    if (brute != dp) ++disagreements;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu random path systems (%zu minimal), %zu disagreements", count, minimal,
                disagreements);
  report(6, disagreements == 0, buf);
}

void determinism(const Instance& inst, const std::string& label, const Reduction& single) {
  bool same = true;
  std::string detail = label + ": threads 1";
  for (std::size_t threads : {4, 8}) {
    const Reduction r = reduce(inst, threads, true);
    same = same && r.final_edges == single.final_edges && r.step1 == single.step1 && r.step2 == single.step2 &&
           r.step3 == single.step3;
    detail += "/" + std::to_string(threads);
  }
  detail += same ? " give identical edge sets and counts" : " differ";
  report(7, same, detail);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string data_dir = "data";
  std::size_t corpus = 1000;
  app.add_option("--data", data_dir, "Directory with TSPLIB instances");
  app.add_option("--corpus", corpus, "Random instances for criteria 1 and 2");
  CLI11_PARSE(app, argc, argv);
  const fs::path data(data_dir);

  soundness_and_preservation(corpus, 20260101);

  auto pr1002 = load_if_present(data, "pr1002");
  auto pcb442 = load_if_present(data, "pcb442");
  std::optional<Reduction> proxy;
  if (!pr1002 && pcb442) proxy = reduce(*pcb442, 1, true);
  paper_scale(data, proxy);

  if (pr1002) bound_dominance(*pr1002, "pr1002", 100000, 7);
  else if (pcb442) bound_dominance(*pcb442, "pcb442 (pr1002 not present)", 100000, 7);
  else report(5, "BLOCKED", "no instance in " + data_dir);

  dp_versus_brute(500, 11);

  if (pr1002) determinism(*pr1002, "pr1002", reduce(*pr1002, 1, true));
  else if (pcb442) determinism(*pcb442, "pcb442 (pr1002 not present)", *proxy);
  else report(7, "BLOCKED", "no instance in " + data_dir);

  std::printf("criterion 8: N/A     multi-day rows are out of scope at desk scale\n");
  return failures == 0 ? 0 : 1;
}
