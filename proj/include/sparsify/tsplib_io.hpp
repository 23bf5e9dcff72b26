#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sparsify/edge_set.hpp"
#include "sparsify/instance.hpp"

namespace sparsify {

/// Input error carrying the 1-based line it was detected on (0 if not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses the TSPLIB subset NAME/TYPE/DIMENSION/EDGE_WEIGHT_TYPE/NODE_COORD_SECTION/EOF.
/// Only EUC_2D and CEIL_2D are accepted.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Edge-set text format:
///
///   NAME: <name>
///   DIMENSION: <n>
///   EDGES: <m>
///   u v w        (one per edge, 1-based, u < v, w = l(uv), sorted)
std::string write_edge_set(const Instance& instance, const SparseEdgeSet& edges);
SparseEdgeSet parse_edge_set(std::string_view text);
SparseEdgeSet load_edge_set(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace sparsify
