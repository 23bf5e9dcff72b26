#include "sparsify/tsplib_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace sparsify {
namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\f\v";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

/// Splits "KEY : VALUE" / "KEY: VALUE" / bare "KEY".
std::pair<std::string_view, std::string_view> split_key(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return {trim(line), {}};
  return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

Instance parse_instance(std::string_view text) {
  const auto lines = split_lines(text);
  std::string name;
  std::optional<std::size_t> dimension;
  std::optional<DistanceMode> mode;
  std::vector<Point> points;
  std::vector<bool> seen;
  bool coords_found = false;

  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto [key, value] = split_key(line);
    if (key == "EOF") break;
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "TYPE") {
      if (value != "TSP") throw ParseError(lineno, "unsupported problem type '" + std::string(value) + "'");
    } else if (key == "DIMENSION") {
      auto d = parse_number<long long>(value);
      if (!d) throw ParseError(lineno, "malformed DIMENSION '" + std::string(value) + "'");
      if (*d < 4) throw ParseError(lineno, "DIMENSION must be at least 4");
      dimension = static_cast<std::size_t>(*d);
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value == "EUC_2D") {
        mode = DistanceMode::euc_2d;
      } else if (value == "CEIL_2D") {
        mode = DistanceMode::ceil_2d;
      } else {
        throw ParseError(lineno, "unsupported distance mode '" + std::string(value) + "'");
      }
    } else if (key == "NODE_COORD_SECTION") {
      if (!dimension) throw ParseError(lineno, "NODE_COORD_SECTION before DIMENSION");
      if (!mode) throw ParseError(lineno, "NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
      coords_found = true;
      points.assign(*dimension, Point{});
      seen.assign(*dimension, false);
      std::size_t rows = 0;
      while (rows < *dimension) {
        ++i;
        if (i >= lines.size()) throw ParseError(0, "unexpected end of file in NODE_COORD_SECTION");
        const std::size_t row_line = i + 1;
        const auto row = trim(lines[i]);
        if (row.empty()) continue;
        const auto fields = split_fields(row);
        if (fields.size() != 3) throw ParseError(row_line, "malformed coordinate line");
        const auto index = parse_number<long long>(fields[0]);
        const auto x = parse_number<double>(fields[1]);
        const auto y = parse_number<double>(fields[2]);
        if (!index || !x || !y) throw ParseError(row_line, "malformed coordinate line");
        if (*index < 1 || static_cast<std::size_t>(*index) > *dimension) {
          throw ParseError(row_line, "vertex index out of range");
        }
        if (!std::isfinite(*x) || !std::isfinite(*y)) throw ParseError(row_line, "non-finite coordinate");
        const auto slot = static_cast<std::size_t>(*index - 1);
        if (seen[slot]) throw ParseError(row_line, "duplicate vertex index");
        seen[slot] = true;
        points[slot] = Point{*x, *y};
        ++rows;
      }
    } else if (key == "COMMENT" || key == "DISPLAY_DATA_TYPE") {
      continue;
    } else if (key.ends_with("_SECTION")) {
      throw ParseError(lineno, "unsupported section '" + std::string(key) + "'");
    }
  }
  if (!dimension) throw ParseError(0, "missing DIMENSION");
  if (!mode) throw ParseError(0, "missing EDGE_WEIGHT_TYPE");
  if (!coords_found) throw ParseError(0, "missing NODE_COORD_SECTION");
  return Instance(name, *mode, std::move(points));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Instance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

std::string write_edge_set(const Instance& instance, const SparseEdgeSet& edges) {
  std::string out;
  out += "NAME: " + instance.name() + "\n";
  out += "DIMENSION: " + std::to_string(instance.size()) + "\n";
  out += "EDGES: " + std::to_string(edges.edge_count()) + "\n";
  for (const Edge& e : edges.edges()) {
    out += std::to_string(e.u + 1);
    out += ' ';
    out += std::to_string(e.v + 1);
    out += ' ';
    out += std::to_string(instance.dist(e.u, e.v));
    out += '\n';
  }
  return out;
}

SparseEdgeSet parse_edge_set(std::string_view text) {
  const auto lines = split_lines(text);
  std::optional<std::size_t> dimension;
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.find(':') != std::string_view::npos) {
      const auto [key, value] = split_key(line);
      if (key == "DIMENSION") {
        auto d = parse_number<long long>(value);
        if (!d || *d < 1) throw ParseError(lineno, "malformed DIMENSION");
        dimension = static_cast<std::size_t>(*d);
      } else if (key == "EDGES") {
        auto m = parse_number<long long>(value);
        if (!m || *m < 0) throw ParseError(lineno, "malformed EDGES");
        declared = static_cast<std::size_t>(*m);
      } else if (key != "NAME") {
        throw ParseError(lineno, "unknown header '" + std::string(key) + "'");
      }
      continue;
    }
    if (!dimension) throw ParseError(lineno, "edge line before DIMENSION");
    const auto fields = split_fields(line);
    if (fields.size() != 3) throw ParseError(lineno, "malformed edge line");
    const auto u = parse_number<long long>(fields[0]);
    const auto v = parse_number<long long>(fields[1]);
    const auto w = parse_number<long long>(fields[2]);
    if (!u || !v || !w) throw ParseError(lineno, "malformed edge line");
    const auto n = static_cast<long long>(*dimension);
    if (*u < 1 || *u > n || *v < 1 || *v > n) throw ParseError(lineno, "vertex index out of range");
    if (*u == *v) throw ParseError(lineno, "self-loop");
    edges.emplace_back(static_cast<Vertex>(*u - 1), static_cast<Vertex>(*v - 1));
    edge_lines.push_back(lineno);
  }
  if (!dimension) throw ParseError(0, "missing DIMENSION");
  auto set = SparseEdgeSet::from_edges(*dimension, edges);
  if (set.edge_count() != edges.size()) {
    std::vector<std::pair<Edge, std::size_t>> sorted;
    for (std::size_t k = 0; k < edges.size(); ++k) sorted.emplace_back(edges[k], edge_lines[k]);
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k)
      if (sorted[k].first == sorted[k - 1].first) throw ParseError(sorted[k].second, "duplicate edge");
  }
  if (declared && *declared != set.edge_count()) {
    throw ParseError(0, "EDGES header says " + std::to_string(*declared) + " but " +
                            std::to_string(set.edge_count()) + " edges were listed");
  }
  return set;
}

SparseEdgeSet load_edge_set(const std::string& path) { return parse_edge_set(read_file(path)); }

}  // namespace sparsify
