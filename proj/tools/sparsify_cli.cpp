#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sparsify/oracle.hpp"
#include "sparsify/pipeline.hpp"
#include "sparsify/tsplib_io.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitVerify = 3;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void parse_steps(const std::string& spec, sparsify::PipelineConfig& cfg) {
  cfg.step1 = cfg.step2 = cfg.step3 = false;
  std::stringstream in(spec);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "1") cfg.step1 = true;
    else if (item == "2") cfg.step2 = true;
    else if (item == "3") cfg.step3 = true;
    else throw CLI::ValidationError("--steps", "expected a comma list drawn from 1,2,3");
  }
}

int cmd_eliminate(const std::string& tsp, const std::string& steps, sparsify::PipelineConfig cfg,
                  const std::string& out_path, const std::string& stats_path) {
  parse_steps(steps, cfg);
  const auto inst = sparsify::load_instance(tsp);
  const auto result = sparsify::run(inst, cfg);
  const std::string edges_text = sparsify::write_edge_set(inst, result.edges);
  if (out_path.empty()) std::cout << edges_text;
  else write_text(out_path, edges_text);
  const std::string stats_text = result.stats.to_json().dump(2) + "\n";
  if (!stats_path.empty()) write_text(stats_path, stats_text);
  else if (!out_path.empty()) std::cout << stats_text;
  return 0;
}

int cmd_verify(const std::string& tsp, const std::string& edges_path, std::size_t max_n) {
  const auto inst = sparsify::load_instance(tsp);
  const auto edges = sparsify::load_edge_set(edges_path);
  if (edges.vertex_count() != inst.size()) {
    std::cerr << "edge set dimension " << edges.vertex_count() << " does not match instance (" << inst.size() << ")\n";
    return kExitVerify;
  }
  if (inst.size() > max_n) {
    std::cout << "skipped: n = " << inst.size() << " exceeds --max-n " << max_n << "\n";
    return 0;
  }
  const auto full = sparsify::oracle::held_karp_value(inst);
  const auto sparse = sparsify::oracle::held_karp_value(inst, &edges);
  bool ok = full == sparse;
  std::cout << "optimum " << full << ", optimum on edge set " << sparse << "\n";
  if (inst.size() <= 12) {
    std::size_t missing = 0;
    for (const auto& tour : sparsify::oracle::enumerate_optimum_tours(inst))
      for (const auto& e : tour.edges())
        if (!edges.contains(e.u, e.v)) ++missing;
    std::cout << "optimum tour edges missing from edge set: " << missing << "\n";
    ok = ok && missing == 0;
  }
  std::cout << (ok ? "verified" : "FAILED") << "\n";
  return ok ? 0 : kExitVerify;
}

int cmd_stats(const std::string& tsp, const std::string& edges_path) {
  const auto inst = sparsify::load_instance(tsp);
  const auto edges = sparsify::load_edge_set(edges_path);
  if (edges.vertex_count() != inst.size()) {
    std::cerr << "edge set dimension does not match instance\n";
    return kExitParse;
  }
  std::size_t min_deg = edges.edge_count() == 0 ? 0 : inst.size();
  std::size_t max_deg = 0;
  for (sparsify::Vertex v = 0; v < inst.size(); ++v) {
    min_deg = std::min(min_deg, edges.degree(v));
    max_deg = std::max(max_deg, edges.degree(v));
  }
  nlohmann::json j;
  j["name"] = inst.name();
  j["n"] = inst.size();
  j["edges"] = edges.edge_count();
  j["ratio"] = static_cast<double>(edges.edge_count()) / static_cast<double>(inst.size());
  j["min_degree"] = min_deg;
  j["max_degree"] = max_deg;
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Provably useless edge elimination for symmetric 2-D TSP instances"};
  app.require_subcommand(1);

  sparsify::PipelineConfig cfg;
  std::string tsp;
  std::string steps = "1,2,3";
  std::string out_path;
  std::string stats_path;
  std::string edges_path;
  std::size_t max_n = 12;

  auto* elim = app.add_subcommand("eliminate", "Run the elimination steps and write the surviving edges");
  elim->add_option("instance", tsp, "TSPLIB file")->required()->check(CLI::ExistingFile);
  elim->add_option("--steps", steps, "Steps to run, e.g. 1,2,3");
  elim->add_option("--depth", cfg.search.max_depth, "Backtrack extension depth")->check(CLI::PositiveNumber);
  elim->add_option("--candidates", cfg.max_candidates, "Midpoint candidates per edge in step 1")
      ->check(CLI::PositiveNumber);
  elim->add_option("--budget", cfg.search.node_budget, "Backtrack search nodes per edge")->check(CLI::PositiveNumber);
  elim->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  elim->add_option("--margin", cfg.margin, "Strictness margin for floating-point tests")
      ->check(CLI::NonNegativeNumber);
  elim->add_option("--out", out_path, "Edge set output (default stdout)");
  elim->add_option("--stats", stats_path, "Stats JSON output");

  auto* verify = app.add_subcommand("verify", "Check an edge set against exact optima");
  verify->add_option("instance", tsp, "TSPLIB file")->required()->check(CLI::ExistingFile);
  verify->add_option("--edges", edges_path, "Edge set file")->required()->check(CLI::ExistingFile);
  verify->add_option("--max-n", max_n, "Largest n to verify exactly (at most 18)")->check(CLI::Range(4, 18));

  auto* stats = app.add_subcommand("stats", "Summarize an edge set");
  stats->add_option("instance", tsp, "TSPLIB file")->required()->check(CLI::ExistingFile);
  stats->add_option("--edges", edges_path, "Edge set file")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (elim->parsed()) return cmd_eliminate(tsp, steps, cfg, out_path, stats_path);
    if (verify->parsed()) return cmd_verify(tsp, edges_path, max_n);
    if (stats->parsed()) return cmd_stats(tsp, edges_path);
  } catch (const sparsify::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const sparsify::InvalidInstance& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitParse;
  } catch (const sparsify::DuplicatePoint& e) {
    std::cerr << "invalid instance: " << e.what() << "\n";
    return kExitParse;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
