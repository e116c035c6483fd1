#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flagcert {

/// Error raised for violated preconditions and malformed input.
class FlagError : public std::runtime_error {
 public:
  enum class Kind {
    InvalidGraph,
    RootNotInSubset,
    TypeMismatch,
    SizeTooSmall,
    SizeBudget,
    DimensionMismatch,
    NotSymmetric,
    NotPsd,
    Parse,
    Version,
    Io,
  };

  FlagError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  [[nodiscard]] Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Bitmask over vertex indices; bit v set means vertex v is in the set.
using VertexSet = std::uint32_t;

/// Undirected loop-free graph on vertices 0..n-1 stored as adjacency bitset rows.
class Graph {
 public:
  /// Canonical forms pack C(n,2) bits into one 64-bit word, which caps n at 11.
  static constexpr int kMaxVertices = 11;

  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::initializer_list<std::pair<int, int>> edges);
  Graph(int n, std::span<const std::pair<int, int>> edges);

  [[nodiscard]] int order() const { return n_; }
  [[nodiscard]] int edge_count() const;
  [[nodiscard]] bool adjacent(int u, int v) const { return (rows_[u] >> v) & 1U; }
  [[nodiscard]] VertexSet neighbours(int v) const { return rows_[v]; }
  [[nodiscard]] VertexSet all_vertices() const { return (VertexSet{1} << n_) - 1; }

  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void set_edge(int u, int v, bool present);

  /// Subgraph induced by `vertices`; new vertex i is old vertex vertices[i].
  [[nodiscard]] Graph induced(std::span<const int> vertices) const;
  /// Subgraph induced by a vertex mask, compacted in increasing vertex order.
  [[nodiscard]] Graph induced(VertexSet vertices) const;

  /// Adds one vertex (index n) adjacent to exactly the vertices in `neighbourhood`.
  [[nodiscard]] Graph with_vertex(VertexSet neighbourhood) const;

  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;

  /// Upper-triangular adjacency bits, rows concatenated ("0110..." style).
  [[nodiscard]] std::string upper_triangle() const;
  static Graph from_upper_triangle(std::string_view bits, int n);

  friend bool operator==(const Graph& a, const Graph& b) = default;

 private:
  void check_pair(int u, int v) const;

  int n_ = 0;
  std::array<std::uint16_t, kMaxVertices> rows_{};
};

[[nodiscard]] Graph complement(const Graph& g);
[[nodiscard]] Graph complete_graph(int n);
[[nodiscard]] Graph empty_graph(int n);

/// A graph on the labelled vertex set {0..s-1}. Labels matter for equality.
struct TypeGraph {
  Graph graph;

  TypeGraph() = default;
  explicit TypeGraph(Graph g) : graph(std::move(g)) {}

  [[nodiscard]] int order() const { return graph.order(); }

  friend bool operator==(const TypeGraph& a, const TypeGraph& b) = default;
};

/// A graph together with an injective embedding of a type.
class Flag {
 public:
  Flag() = default;
  /// Validates that the roots are distinct and induce exactly `type`.
  Flag(Graph graph, std::vector<int> roots, TypeGraph type);
  /// Convenience: roots are 0..s-1 and the type is read off the graph.
  static Flag with_leading_roots(Graph graph, int s);
  /// A 0-flag, i.e. just a graph.
  static Flag unlabelled(Graph graph);

  [[nodiscard]] const Graph& graph() const { return graph_; }
  [[nodiscard]] const std::vector<int>& roots() const { return roots_; }
  [[nodiscard]] const TypeGraph& type() const { return type_; }
  [[nodiscard]] int order() const { return graph_.order(); }
  [[nodiscard]] int type_order() const { return type_.order(); }
  [[nodiscard]] VertexSet root_set() const;
  [[nodiscard]] VertexSet free_vertices() const { return graph_.all_vertices() & ~root_set(); }

 private:
  Graph graph_;
  std::vector<int> roots_;
  TypeGraph type_;
};

/// The flag F|_U: the subgraph induced by U with roots carried along.
[[nodiscard]] Flag induced_subflag(const Flag& flag, VertexSet subset);

/// Flag with every edge toggled; the type is complemented accordingly.
[[nodiscard]] Flag complement(const Flag& flag);

[[nodiscard]] inline int popcount(VertexSet s) { return std::popcount(s); }

}  // namespace flagcert
