#include "flagcert/graph.hpp"

#include <algorithm>

namespace flagcert {

Graph::Graph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) {
    throw FlagError(FlagError::Kind::InvalidGraph,
                    "graph order " + std::to_string(n) + " outside 0.." + std::to_string(kMaxVertices));
  }
}

Graph::Graph(int n, std::initializer_list<std::pair<int, int>> edges)
    : Graph(n, std::span<const std::pair<int, int>>(edges.begin(), edges.size())) {}

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) : Graph(n) {
  for (const auto& [u, v] : edges) {
    add_edge(u, v);
  }
}

void Graph::check_pair(int u, int v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw FlagError(FlagError::Kind::InvalidGraph, "vertex out of range in pair (" + std::to_string(u) + "," +
                                                       std::to_string(v) + ") for order " + std::to_string(n_));
  }
  if (u == v) {
    throw FlagError(FlagError::Kind::InvalidGraph, "loop at vertex " + std::to_string(u));
  }
}

int Graph::edge_count() const {
  int twice = 0;
  for (int v = 0; v < n_; ++v) {
    twice += std::popcount(rows_[v]);
  }
  return twice / 2;
}

void Graph::add_edge(int u, int v) { set_edge(u, v, true); }

void Graph::remove_edge(int u, int v) { set_edge(u, v, false); }

void Graph::set_edge(int u, int v, bool present) {
  check_pair(u, v);
  if (present) {
    rows_[u] |= std::uint16_t(1U << v);
    rows_[v] |= std::uint16_t(1U << u);
  } else {
    rows_[u] &= std::uint16_t(~(1U << v));
    rows_[v] &= std::uint16_t(~(1U << u));
  }
}

Graph Graph::induced(std::span<const int> vertices) const {
  Graph g(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) {
        g.rows_[i] |= std::uint16_t(1U << j);
        g.rows_[j] |= std::uint16_t(1U << i);
      }
    }
  }
  return g;
}

Graph Graph::induced(VertexSet vertices) const {
  std::array<int, kMaxVertices> list{};
  int k = 0;
  for (int v = 0; v < n_; ++v) {
    if ((vertices >> v) & 1U) {
      list[k++] = v;
    }
  }
  return induced(std::span<const int>(list.data(), k));
}

Graph Graph::with_vertex(VertexSet neighbourhood) const {
  Graph g(n_ + 1);
  g.rows_ = rows_;
  for (int v = 0; v < n_; ++v) {
    if ((neighbourhood >> v) & 1U) {
      g.rows_[v] |= std::uint16_t(1U << n_);
      g.rows_[n_] |= std::uint16_t(1U << v);
    }
  }
  return g;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      if (adjacent(u, v)) {
        out.emplace_back(u, v);
      }
    }
  }
  return out;
}

std::string Graph::upper_triangle() const {
  std::string bits;
  bits.reserve(static_cast<std::size_t>(n_ * (n_ - 1) / 2));
  for (int u = 0; u < n_; ++u) {
    for (int v = u + 1; v < n_; ++v) {
      bits.push_back(adjacent(u, v) ? '1' : '0');
    }
  }
  return bits;
}

Graph Graph::from_upper_triangle(std::string_view bits, int n) {
  if (n < 0 || static_cast<std::size_t>(n * (n - 1) / 2) != bits.size()) {
    throw FlagError(FlagError::Kind::Parse, "bitstring of length " + std::to_string(bits.size()) +
                                                " does not describe a graph on " + std::to_string(n) + " vertices");
  }
  Graph g(n);
  std::size_t pos = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++pos) {
      if (bits[pos] == '1') {
        g.add_edge(u, v);
      } else if (bits[pos] != '0') {
        throw FlagError(FlagError::Kind::Parse, "unexpected character in adjacency bitstring");
      }
    }
  }
  return g;
}

Graph complement(const Graph& g) {
  Graph c(g.order());
  for (int u = 0; u < g.order(); ++u) {
    for (int v = u + 1; v < g.order(); ++v) {
      if (!g.adjacent(u, v)) {
        c.add_edge(u, v);
      }
    }
  }
  return c;
}

Graph complete_graph(int n) { return complement(Graph(n)); }

Graph empty_graph(int n) { return Graph(n); }

Flag::Flag(Graph graph, std::vector<int> roots, TypeGraph type)
    : graph_(std::move(graph)), roots_(std::move(roots)), type_(std::move(type)) {
  const int s = type_.order();
  if (static_cast<int>(roots_.size()) != s) {
    throw FlagError(FlagError::Kind::InvalidGraph, "flag has " + std::to_string(roots_.size()) +
                                                       " roots but its type has order " + std::to_string(s));
  }
  VertexSet seen = 0;
  for (int r : roots_) {
    if (r < 0 || r >= graph_.order()) {
      throw FlagError(FlagError::Kind::InvalidGraph, "root " + std::to_string(r) + " out of range");
    }
    if ((seen >> r) & 1U) {
      throw FlagError(FlagError::Kind::InvalidGraph, "root " + std::to_string(r) + " repeated");
    }
    seen |= VertexSet{1} << r;
  }
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      if (graph_.adjacent(roots_[i], roots_[j]) != type_.graph.adjacent(i, j)) {
        throw FlagError(FlagError::Kind::TypeMismatch,
                        "roots " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " do not induce the type");
      }
    }
  }
}

Flag Flag::with_leading_roots(Graph graph, int s) {
  std::vector<int> roots(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) {
    roots[static_cast<std::size_t>(i)] = i;
  }
  TypeGraph type(graph.induced(std::span<const int>(roots)));
  return Flag(std::move(graph), std::move(roots), std::move(type));
}

Flag Flag::unlabelled(Graph graph) { return Flag(std::move(graph), {}, TypeGraph(Graph(0))); }

VertexSet Flag::root_set() const {
  VertexSet s = 0;
  for (int r : roots_) {
    s |= VertexSet{1} << r;
  }
  return s;
}

Flag induced_subflag(const Flag& flag, VertexSet subset) {
  subset &= flag.graph().all_vertices();
  if ((flag.root_set() & ~subset) != 0) {
    throw FlagError(FlagError::Kind::RootNotInSubset, "induced_subflag: a root lies outside the vertex subset");
  }
  std::array<int, Graph::kMaxVertices> new_index{};
  int k = 0;
  for (int v = 0; v < flag.order(); ++v) {
    if ((subset >> v) & 1U) {
      new_index[static_cast<std::size_t>(v)] = k++;
    }
  }
  std::vector<int> roots;
  roots.reserve(flag.roots().size());
  for (int r : flag.roots()) {
    roots.push_back(new_index[static_cast<std::size_t>(r)]);
  }
  return Flag(flag.graph().induced(subset), std::move(roots), flag.type());
}

Flag complement(const Flag& flag) {
  return Flag(complement(flag.graph()), flag.roots(), TypeGraph(complement(flag.type().graph)));
}

}  // namespace flagcert
