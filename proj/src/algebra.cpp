#include "flagcert/algebra.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

namespace flagcert {

namespace {

constexpr int kMax = Graph::kMaxVertices;

// Graph induced by the roots (in root order) followed by `extra` ascending,
// so that the roots of the result are 0..s-1.
Graph rooted_induced(const Graph& g, std::span<const int> roots, VertexSet extra) {
  std::array<int, kMax> order{};
  int k = 0;
  for (int r : roots) {
    order[k++] = r;
  }
  for (VertexSet rest = extra; rest != 0; rest &= rest - 1) {
    order[k++] = std::countr_zero(rest);
  }
  return g.induced(std::span<const int>(order.data(), static_cast<std::size_t>(k)));
}

std::span<const int> leading_roots(int s) {
  static constexpr std::array<int, kMax> kIota = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  return {kIota.data(), static_cast<std::size_t>(s)};
}

// Calls visit(subset) for every k-element subset of `pool`.
template <class Visit>
void for_each_subset(VertexSet pool, int k, Visit&& visit) {
  if (k == 0) {
    visit(VertexSet{0});
    return;
  }
  for (VertexSet sub = pool; sub != 0; sub = (sub - 1) & pool) {
    if (popcount(sub) == k) {
      visit(sub);
    }
  }
}

struct SunflowerCounter {
  const Graph& graph;
  std::span<const int> roots;
  std::span<const CanonicalForm> targets;
  std::span<const int> petal_sizes;
  std::uint64_t hits = 0;

  void run(std::size_t petal, VertexSet available) {
    if (petal == targets.size()) {
      ++hits;
      return;
    }
    for_each_subset(available, petal_sizes[petal], [&](VertexSet sub) {
      const Graph g = rooted_induced(graph, roots, sub);
      if (canonical_form(g, leading_roots(static_cast<int>(roots.size()))) == targets[petal]) {
        run(petal + 1, available & ~sub);
      }
    });
  }
};

}  // namespace

Rational joint_density(std::span<const Flag> petals, const Flag& large) {
  if (petals.empty()) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "joint_density needs at least one petal");
  }
  const int s = large.type_order();
  std::vector<CanonicalForm> targets;
  std::vector<int> sizes;
  int budget = 0;
  for (const Flag& p : petals) {
    if (!(p.type() == large.type())) {
      throw FlagError(FlagError::Kind::TypeMismatch, "density: flags have different types");
    }
    targets.push_back(canonical_form(p));
    sizes.push_back(p.order() - s);
    budget += p.order() - s;
  }
  const VertexSet free = large.free_vertices();
  const int available = popcount(free);
  if (budget > available) {
    throw FlagError(FlagError::Kind::SizeBudget, "petals need " + std::to_string(budget) + " non-root vertices but only " +
                                                     std::to_string(available) + " are available");
  }

  SunflowerCounter counter{large.graph(), large.roots(), targets, sizes};
  counter.run(0, free);

  // |B| = available! / (k_1! ... k_n! (available - sum k)!)
  mpz_class total = 1;
  int remaining = available;
  for (int k : sizes) {
    total *= binomial(remaining, k);
    remaining -= k;
  }
  return make_rational(mpz_class(static_cast<unsigned long>(counter.hits)), total);
}

Rational density(const Flag& small, const Flag& large) {
  if (small.order() > large.order()) {
    throw FlagError(FlagError::Kind::SizeBudget, "density: the small flag has more vertices than the large one");
  }
  return joint_density(std::span<const Flag>(&small, 1), large);
}

FlagVector expand(const Flag& flag, const FlagBasisPtr& basis) {
  FlagVector out{basis, {}};
  out.coeffs.reserve(basis->count());
  for (const Flag& f : basis->flags()) {
    out.coeffs.push_back(density(flag, f));
  }
  return out;
}

ProductTable::ProductTable(FlagBasisPtr small, FlagBasisPtr large, std::vector<ProductEntry> entries,
                           std::uint32_t denominator)
    : small_(std::move(small)), large_(std::move(large)), entries_(std::move(entries)), denominator_(denominator) {
  offsets_.assign(large_->count() + 1, 0);
  for (const ProductEntry& e : entries_) {
    ++offsets_[e.target + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

std::span<const ProductEntry> ProductTable::row(std::size_t target) const {
  return {entries_.data() + offsets_[target], offsets_[target + 1] - offsets_[target]};
}

Rational ProductTable::at(std::size_t target, std::size_t left, std::size_t right) const {
  for (const ProductEntry& e : row(target)) {
    if (e.left == left && e.right == right) {
      return value(e);
    }
  }
  return 0;
}

ProductTable product_table(const TypeGraph& type, int small_size) {
  const int s = type.order();
  if (small_size <= s) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "product_table: small flag size must exceed the type order");
  }
  return product_table(enumerate_flags(type, small_size), enumerate_flags(type, 2 * small_size - s));
}

ProductTable product_table(FlagBasisPtr small, FlagBasisPtr large) {
  const int s = small->type_order();
  const int k = small->size() - s;
  if (!(small->type() == large->type()) || large->size() != 2 * small->size() - s) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "product_table: bases do not form a product pair");
  }
  const auto roots = leading_roots(s);
  std::vector<ProductEntry> entries;
  for (std::size_t j = 0; j < large->count(); ++j) {
    const Graph& g = (*large)[j].graph();
    const VertexSet free = g.all_vertices() & ~((VertexSet{1} << s) - 1);
    // Petal index by subset; both petals of a sunflower partition `free`.
    std::map<VertexSet, std::uint32_t> petal_index;
    for_each_subset(free, k, [&](VertexSet sub) {
      petal_index.emplace(sub, static_cast<std::uint32_t>(small->index_of(rooted_induced(g, roots, sub), roots)));
    });
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> counts;
    for (const auto& [sub, left] : petal_index) {
      ++counts[{left, petal_index.at(free & ~sub)}];
    }
    for (const auto& [pair, count] : counts) {
      entries.push_back({static_cast<std::uint32_t>(j), pair.first, pair.second, count});
    }
  }
  const auto denominator = static_cast<std::uint32_t>(binomial(2 * k, k).get_ui());
  return ProductTable(std::move(small), std::move(large), std::move(entries), denominator);
}

AveragingMap::AveragingMap(FlagBasisPtr sigma_basis, FlagBasisPtr zero_basis, std::vector<AveragingRow> rows,
                           std::uint32_t denominator)
    : sigma_(std::move(sigma_basis)), zero_(std::move(zero_basis)), rows_(std::move(rows)), denominator_(denominator) {}

AveragingMap averaging_map(const TypeGraph& type, int size) {
  if (type.order() == 0) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "averaging_map: the empty type averages trivially");
  }
  return averaging_map(enumerate_flags(type, size), enumerate_flags(TypeGraph(Graph(0)), size));
}

AveragingMap averaging_map(FlagBasisPtr sigma_basis, FlagBasisPtr zero_basis) {
  const TypeGraph& type = sigma_basis->type();
  const int s = type.order();
  const int n = sigma_basis->size();
  if (s == 0) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "averaging_map: the empty type averages trivially");
  }
  if (zero_basis->type_order() != 0 || zero_basis->size() != n) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "averaging_map: zero basis has the wrong order");
  }
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<AveragingRow> rows(sigma_basis->count(), AveragingRow{kUnset, 0});
  std::uint32_t injections = 1;
  for (int i = 0; i < s; ++i) {
    injections *= static_cast<std::uint32_t>(n - i);
  }

  std::vector<int> psi(static_cast<std::size_t>(s));
  for (std::size_t k = 0; k < zero_basis->count(); ++k) {
    const Graph& g = (*zero_basis)[k].graph();
    // Depth-first over injections, pruning as soon as a root pair disagrees
    // with the labelled type.
    auto place = [&](auto&& self, int depth, VertexSet used) -> void {
      if (depth == s) {
        const std::size_t j = sigma_basis->index_of(g, psi);
        AveragingRow& row = rows[j];
        if (row.zero_index != kUnset && row.zero_index != k) {
          throw FlagError(FlagError::Kind::InvalidGraph, "averaging_map: flag maps to two different 0-flags");
        }
        row.zero_index = static_cast<std::uint32_t>(k);
        ++row.count;
        return;
      }
      for (int v = 0; v < n; ++v) {
        if ((used >> v) & 1U) {
          continue;
        }
        bool matches = true;
        for (int i = 0; i < depth && matches; ++i) {
          matches = g.adjacent(psi[static_cast<std::size_t>(i)], v) == type.graph.adjacent(i, depth);
        }
        if (matches) {
          psi[static_cast<std::size_t>(depth)] = v;
          self(self, depth + 1, used | (VertexSet{1} << v));
        }
      }
    };
    place(place, 0, 0);
  }
  for (const AveragingRow& row : rows) {
    if (row.zero_index == kUnset) {
      throw FlagError(FlagError::Kind::InvalidGraph, "averaging_map: a sigma-flag was never reached");
    }
  }
  return AveragingMap(std::move(sigma_basis), std::move(zero_basis), std::move(rows), injections);
}

std::vector<AveragedEntry> averaged_products(const ProductTable& table, const AveragingMap& avg) {
  if (avg.sigma_basis()->count() != table.large_basis()->count() || avg.flag_size() != table.large_size() ||
      !(avg.type() == table.type())) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "averaged_products: table and averaging map disagree");
  }
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::uint64_t> acc;
  for (const ProductEntry& e : table.entries()) {
    const AveragingRow& row = avg.rows()[e.target];
    acc[{row.zero_index, e.left, e.right}] += std::uint64_t{row.count} * e.count;
  }
  std::vector<AveragedEntry> out;
  out.reserve(acc.size());
  for (const auto& [key, count] : acc) {
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  }
  return out;
}

FlagVector quadratic_form_image(const ProductTable& table, const AveragingMap& avg, const RationalMatrix& m,
                                const FlagBasisPtr& zero_basis) {
  const std::size_t dim = table.small_basis()->count();
  if (m.rows() != dim || m.cols() != dim) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "quadratic_form_image: matrix is " + std::to_string(m.rows()) +
                                                            "x" + std::to_string(m.cols()) + ", basis has " +
                                                            std::to_string(dim) + " flags");
  }
  if (zero_basis->count() != avg.zero_basis()->count() || zero_basis->size() != table.large_size()) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "quadratic_form_image: zero basis does not match");
  }
  FlagVector out{zero_basis, std::vector<Rational>(zero_basis->count())};
  for (std::size_t j = 0; j < table.large_basis()->count(); ++j) {
    Rational inner = 0;
    for (const ProductEntry& e : table.row(j)) {
      inner += m(e.left, e.right) * e.count;
    }
    const AveragingRow& row = avg.rows()[j];
    out.coeffs[row.zero_index] += inner * row.count;
  }
  const Rational scale = make_rational(1, static_cast<long>(table.denominator()) * avg.denominator());
  for (Rational& c : out.coeffs) {
    c *= scale;
  }
  return out;
}

FlagVector objective_vector(int t, const FlagBasisPtr& zero_basis) {
  if (zero_basis->type_order() != 0) {
    throw FlagError(FlagError::Kind::TypeMismatch, "objective_vector: needs a basis of 0-flags");
  }
  if (t < 1 || zero_basis->size() < t) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "objective_vector: basis order " +
                                                       std::to_string(zero_basis->size()) + " is below t = " +
                                                       std::to_string(t));
  }
  const Flag clique = Flag::unlabelled(complete_graph(t));
  const Flag anticlique = Flag::unlabelled(empty_graph(t));
  FlagVector out{zero_basis, {}};
  out.coeffs.reserve(zero_basis->count());
  for (const Flag& f : zero_basis->flags()) {
    out.coeffs.push_back(density(clique, f) + density(anticlique, f));
  }
  return out;
}

}  // namespace flagcert
