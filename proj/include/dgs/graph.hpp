#pragma once

// Simple undirected graphs: representation, text formats, random
// generation, small-n isomorphism and Godsil-McKay switching.

#include "dgs/scalar.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dgs {

/// Malformed graph input. `offset` is a byte offset for graph6 records;
/// `row`/`col` locate the offending token in adjacency text (0-based,
/// -1 when not applicable).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::ptrdiff_t offset, int row = -1, int col = -1)
      : std::runtime_error(what), offset_(offset), row_(row), col_(col) {}

  std::ptrdiff_t offset() const noexcept { return offset_; }
  int row() const noexcept { return row_; }
  int col() const noexcept { return col_; }

 private:
  std::ptrdiff_t offset_;
  int row_;
  int col_;
};

/// Immutable simple graph on vertices {0, ..., n-1}.
class Graph {
 public:
  /// Builds from a row-major n*n 0/1 adjacency array. Throws
  /// std::invalid_argument if n < 1, the array has the wrong size, the
  /// relation is asymmetric, or a loop is present.
  Graph(int n, std::vector<std::uint8_t> adjacency);

  static Graph empty(int n);
  static Graph complete(int n);
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);

  int order() const noexcept { return n_; }
  bool adjacent(int i, int j) const { return adj_[static_cast<std::size_t>(i) * n_ + j] != 0; }
  int degree(int v) const;
  std::size_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;

  template <typename Scalar = int>
  Matrix<Scalar> adjacency_matrix() const {
    Matrix<Scalar> a(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) a(i, j) = Scalar(adjacent(i, j) ? 1 : 0);
    return a;
  }

  /// Returns the graph with vertex v relabelled perm[v].
  Graph relabel(std::span<const int> perm) const;

  const std::vector<std::uint8_t>& raw() const noexcept { return adj_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_;
  std::vector<std::uint8_t> adj_;
};

// Text formats ----------------------------------------------------------

/// Decodes one graph6 record (an optional ">>graph6<<" header and
/// trailing whitespace are accepted).
Graph parse_graph6(std::string_view text);
std::string encode_graph6(const Graph& g);

/// Rows of 0/1 tokens separated by whitespace and/or commas. Brackets,
/// braces, semicolons and trailing backslashes are treated as separators;
/// lines starting with '#' are skipped.
Graph parse_adjacency_text(std::string_view text);

// Transformations ---------------------------------------------------------

Graph complement(const Graph& g);

/// G(n, 1/2) sample. Unordered pairs (i, j), i < j, are visited in
/// lexicographic order; pair t is an edge iff bit (t mod 64) of
/// SplitMix64Stream(seed).at(t / 64) is set.
Graph random_gnp_half(int n, std::uint64_t seed);

// Isomorphism -------------------------------------------------------------

/// Exhaustive search with degree / neighbour-degree refinement. Intended
/// for n <= 12. Graphs of different order are simply non-isomorphic.
bool is_isomorphic(const Graph& g, const Graph& h);

/// Canonical representative of the isomorphism class of g (n <= 11):
/// the relabelling maximising the graph6 upper-triangle bit string among
/// all labellings compatible with the invariant-ordered vertex cells.
Graph canonical_form(const Graph& g);
std::uint64_t canonical_code(const Graph& g);

/// Upper-triangle bit string in graph6 column order, first pair in the
/// most significant position. Requires n <= 11.
std::uint64_t upper_triangle_code(const Graph& g);
Graph from_upper_triangle_code(int n, std::uint64_t code);

// Godsil-McKay switching ------------------------------------------------

/// Single-cell GM partition: cell C (sorted) plus the remaining vertices.
struct GmPartition {
  std::vector<int> cell;
  std::vector<int> outside;

  friend bool operator==(const GmPartition&, const GmPartition&) = default;
};

/// Checks |C| even and >= 4, C induces a regular graph, and every vertex
/// outside C has 0, |C|/2 or |C| neighbours in C.
bool is_valid_gm_partition(const Graph& g, const GmPartition& p);

/// Cell sizes searched when none are given: {4, 6}.
std::span<const int> default_gm_cell_sizes();

/// Every valid single-cell partition whose cell size is listed.
std::vector<GmPartition> find_gm_partitions(const Graph& g,
                                            std::span<const int> cell_sizes = default_gm_cell_sizes());

/// Vertices outside C with exactly |C|/2 neighbours in C get their
/// adjacency to C complemented. Throws std::invalid_argument for an
/// invalid partition.
Graph gm_switch(const Graph& g, const GmPartition& p);

}  // namespace dgs
