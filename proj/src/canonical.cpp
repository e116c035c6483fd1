#include "flagcert/canonical.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace flagcert {

namespace {

constexpr int kMax = Graph::kMaxVertices;
// Automorphisms beyond this many add little pruning for graphs this small.
constexpr std::size_t kMaxStoredAutomorphisms = 48;

using VertexMap = std::array<std::int8_t, kMax>;

struct Partition {
  std::array<VertexSet, kMax> cells{};
  int size = 0;

  [[nodiscard]] bool discrete(int n) const { return size == n; }
};

class Canonicaliser {
 public:
  Canonicaliser(const Graph& graph, std::span<const int> roots) : graph_(graph), n_(graph.order()) {
    Partition p;
    VertexSet rest = graph.all_vertices();
    for (int r : roots) {
      p.cells[p.size++] = VertexSet{1} << r;
      rest &= ~(VertexSet{1} << r);
    }
    if (rest != 0) {
      p.cells[p.size++] = rest;
    }
    root_ = p;
  }

  CanonicalLabeling run(int type_order) {
    std::array<int, kMax> path{};
    search(root_, path, 0);
    CanonicalLabeling out;
    out.form.order = n_;
    out.form.type_order = type_order;
    out.form.bits = best_bits_;
    out.labeling.assign(best_order_.begin(), best_order_.begin() + n_);
    return out;
  }

 private:
  // Splits cells by neighbour counts into every other cell until stable.
  void refine(Partition& p) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int ci = 0; ci < p.size && !changed; ++ci) {
        const VertexSet cell = p.cells[ci];
        if (popcount(cell) == 1) {
          continue;
        }
        std::array<std::pair<std::uint64_t, int>, kMax> sig{};
        int k = 0;
        for (VertexSet rest = cell; rest != 0; rest &= rest - 1) {
          const int v = std::countr_zero(rest);
          std::uint64_t code = 0;
          const VertexSet nb = graph_.neighbours(v);
          for (int cj = 0; cj < p.size; ++cj) {
            code = (code << 4) | static_cast<std::uint64_t>(popcount(nb & p.cells[cj]));
          }
          sig[k++] = {code, v};
        }
        // Larger neighbour counts first, so that for instance the endpoints
        // of a lone edge become vertices 0 and 1.
        std::sort(sig.begin(), sig.begin() + k, std::greater<>());
        if (sig[0].first == sig[k - 1].first) {
          continue;
        }
        std::array<VertexSet, kMax> pieces{};
        int m = 0;
        for (int i = 0; i < k; ++i) {
          if (i > 0 && sig[i].first != sig[i - 1].first) {
            ++m;
          }
          pieces[m] |= VertexSet{1} << sig[i].second;
        }
        ++m;
        std::copy_backward(p.cells.begin() + ci + 1, p.cells.begin() + p.size, p.cells.begin() + p.size + m - 1);
        std::copy(pieces.begin(), pieces.begin() + m, p.cells.begin() + ci);
        p.size += m - 1;
        changed = true;
      }
    }
  }

  void leaf(const Partition& p) {
    std::array<int, kMax> order{};
    for (int i = 0; i < n_; ++i) {
      order[i] = std::countr_zero(p.cells[i]);
    }
    std::uint64_t bits = 0;
    for (int i = 0; i < n_; ++i) {
      const VertexSet nb = graph_.neighbours(order[i]);
      for (int j = i + 1; j < n_; ++j) {
        bits = (bits << 1) | ((nb >> order[j]) & 1U);
      }
    }
    if (!have_best_ || bits > best_bits_) {
      have_best_ = true;
      best_bits_ = bits;
      best_order_ = order;
    } else if (bits == best_bits_ && automorphisms_.size() < kMaxStoredAutomorphisms) {
      VertexMap gamma{};
      for (int i = 0; i < n_; ++i) {
        gamma[order[i]] = static_cast<std::int8_t>(best_order_[i]);
      }
      automorphisms_.push_back(gamma);
    }
  }

  // Orbit representative of v under stored automorphisms fixing the path.
  int orbit_root(std::span<const int> fixed, int v) const {
    std::array<int, kMax> parent{};
    std::iota(parent.begin(), parent.begin() + n_, 0);
    auto find = [&](int x) {
      while (parent[x] != x) {
        x = parent[x] = parent[parent[x]];
      }
      return x;
    };
    for (const VertexMap& gamma : automorphisms_) {
      const bool fixes = std::all_of(fixed.begin(), fixed.end(), [&](int f) { return gamma[f] == f; });
      if (!fixes) {
        continue;
      }
      for (int x = 0; x < n_; ++x) {
        const int a = find(x);
        const int b = find(gamma[x]);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    return find(v);
  }

  void search(Partition p, std::array<int, kMax>& path, int depth) {
    refine(p);
    if (p.discrete(n_)) {
      leaf(p);
      return;
    }
    int target = 0;
    while (popcount(p.cells[target]) == 1) {
      ++target;
    }
    const VertexSet cell = p.cells[target];
    VertexSet explored = 0;
    for (VertexSet rest = cell; rest != 0; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (explored != 0) {
        const std::span<const int> fixed(path.data(), static_cast<std::size_t>(depth));
        const int root = orbit_root(fixed, v);
        bool seen = false;
        for (VertexSet e = explored; e != 0 && !seen; e &= e - 1) {
          seen = orbit_root(fixed, std::countr_zero(e)) == root;
        }
        if (seen) {
          continue;
        }
      }
      explored |= VertexSet{1} << v;
      Partition child;
      child.size = p.size + 1;
      std::copy(p.cells.begin(), p.cells.begin() + target, child.cells.begin());
      child.cells[target] = VertexSet{1} << v;
      child.cells[target + 1] = cell & ~(VertexSet{1} << v);
      std::copy(p.cells.begin() + target + 1, p.cells.begin() + p.size, child.cells.begin() + target + 2);
      path[depth] = v;
      search(child, path, depth + 1);
    }
  }

  const Graph& graph_;
  int n_;
  Partition root_;
  bool have_best_ = false;
  std::uint64_t best_bits_ = 0;
  std::array<int, kMax> best_order_{};
  std::vector<VertexMap> automorphisms_;
};

}  // namespace

std::string CanonicalForm::to_string() const {
  const int length = order * (order - 1) / 2;
  std::string out(static_cast<std::size_t>(length), '0');
  for (int i = 0; i < length; ++i) {
    if ((bits >> (length - 1 - i)) & 1U) {
      out[static_cast<std::size_t>(i)] = '1';
    }
  }
  return out;
}

CanonicalLabeling canonical_labeling(const Graph& graph, std::span<const int> roots) {
  if (graph.order() == 0) {
    return {};
  }
  return Canonicaliser(graph, roots).run(static_cast<int>(roots.size()));
}

CanonicalForm canonical_form(const Graph& graph, std::span<const int> roots) {
  return canonical_labeling(graph, roots).form;
}

CanonicalForm canonical_form(const Flag& flag) { return canonical_form(flag.graph(), flag.roots()); }

Flag canonical_flag(const Flag& flag) {
  const CanonicalLabeling lab = canonical_labeling(flag.graph(), flag.roots());
  std::vector<int> roots(flag.roots().size());
  std::iota(roots.begin(), roots.end(), 0);
  return Flag(flag.graph().induced(std::span<const int>(lab.labeling)), std::move(roots), flag.type());
}

bool is_isomorphic(const Flag& a, const Flag& b) {
  if (!(a.type() == b.type())) {
    throw FlagError(FlagError::Kind::TypeMismatch, "is_isomorphic: flags have different types");
  }
  if (a.order() != b.order()) {
    return false;
  }
  return canonical_form(a) == canonical_form(b);
}

std::uint64_t pack_upper_triangle(const Graph& graph) {
  std::uint64_t bits = 0;
  for (int i = 0; i < graph.order(); ++i) {
    for (int j = i + 1; j < graph.order(); ++j) {
      bits = (bits << 1) | (graph.adjacent(i, j) ? 1U : 0U);
    }
  }
  return bits;
}

}  // namespace flagcert
