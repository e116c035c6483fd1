#include "flagcert/enumerate.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace flagcert {

FlagBasis::FlagBasis(TypeGraph type, int size, std::vector<Flag> flags, std::vector<CanonicalForm> forms)
    : type_(std::move(type)), size_(size), flags_(std::move(flags)), forms_(std::move(forms)) {
  index_.reserve(forms_.size());
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    index_.emplace(forms_[i], i);
  }
}

std::optional<std::size_t> FlagBasis::find(const CanonicalForm& form) const {
  const auto it = index_.find(form);
  if (it == index_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t FlagBasis::index_of(const Graph& graph, std::span<const int> roots) const {
  const auto found = find(canonical_form(graph, roots));
  if (!found) {
    throw FlagError(FlagError::Kind::TypeMismatch, "flag is not a member of the basis");
  }
  return *found;
}

std::size_t FlagBasis::index_of(const Flag& flag) const {
  if (!(flag.type() == type_)) {
    throw FlagError(FlagError::Kind::TypeMismatch, "flag type differs from basis type");
  }
  return index_of(flag.graph(), flag.roots());
}

std::vector<TypeGraph> enumerate_types(int s) {
  if (s < 0) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "type order must be non-negative");
  }
  const FlagBasisPtr graphs = enumerate_flags(TypeGraph(Graph(0)), s);
  std::vector<TypeGraph> types;
  types.reserve(graphs->count());
  for (const Flag& f : graphs->flags()) {
    types.emplace_back(f.graph());
  }
  return types;
}

FlagBasisPtr enumerate_flags(const TypeGraph& type, int size) {
  const int s = type.order();
  if (size < s) {
    throw FlagError(FlagError::Kind::SizeTooSmall,
                    "flag size " + std::to_string(size) + " is smaller than the type order " + std::to_string(s));
  }
  if (size > kMaxEnumerationOrder) {
    throw FlagError(FlagError::Kind::SizeBudget, "flag size " + std::to_string(size) + " exceeds the supported maximum " +
                                                     std::to_string(kMaxEnumerationOrder));
  }
  std::vector<int> roots(static_cast<std::size_t>(s));
  std::iota(roots.begin(), roots.end(), 0);

  std::vector<Graph> layer{type.graph};
  for (int n = s; n < size; ++n) {
    std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
    std::vector<Graph> next;
    for (const Graph& parent : layer) {
      for (VertexSet nb = 0; nb < (VertexSet{1} << n); ++nb) {
        const Graph child = parent.with_vertex(nb);
        const CanonicalLabeling lab = canonical_labeling(child, roots);
        if (seen.insert(lab.form).second) {
          next.push_back(child.induced(std::span<const int>(lab.labeling)));
        }
      }
    }
    layer = std::move(next);
  }

  std::vector<std::pair<CanonicalForm, Graph>> keyed;
  keyed.reserve(layer.size());
  for (Graph& g : layer) {
    const CanonicalLabeling lab = canonical_labeling(g, roots);
    keyed.emplace_back(lab.form, g.induced(std::span<const int>(lab.labeling)));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Flag> flags;
  std::vector<CanonicalForm> forms;
  flags.reserve(keyed.size());
  forms.reserve(keyed.size());
  for (auto& [form, g] : keyed) {
    flags.emplace_back(std::move(g), roots, type);
    forms.push_back(form);
  }
  return std::make_shared<const FlagBasis>(type, size, std::move(flags), std::move(forms));
}

}  // namespace flagcert
