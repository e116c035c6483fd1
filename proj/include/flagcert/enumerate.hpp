#pragma once

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "flagcert/canonical.hpp"
#include "flagcert/graph.hpp"

namespace flagcert {

/// Largest flag order the enumerator accepts.
inline constexpr int kMaxEnumerationOrder = 9;

/// All l-vertex sigma-flags up to isomorphism, sorted by canonical bitstring.
/// Every stored flag is its own canonical representative (roots are 0..s-1).
class FlagBasis {
 public:
  FlagBasis(TypeGraph type, int size, std::vector<Flag> flags, std::vector<CanonicalForm> forms);

  [[nodiscard]] const TypeGraph& type() const { return type_; }
  [[nodiscard]] int type_order() const { return type_.order(); }
  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] std::size_t count() const { return flags_.size(); }
  [[nodiscard]] const std::vector<Flag>& flags() const { return flags_; }
  [[nodiscard]] const Flag& operator[](std::size_t i) const { return flags_[i]; }
  [[nodiscard]] const CanonicalForm& form(std::size_t i) const { return forms_[i]; }

  /// Index of the basis flag with this canonical form.
  [[nodiscard]] std::optional<std::size_t> find(const CanonicalForm& form) const;
  /// Index of the basis flag isomorphic to (graph, roots); throws if absent.
  [[nodiscard]] std::size_t index_of(const Graph& graph, std::span<const int> roots) const;
  [[nodiscard]] std::size_t index_of(const Flag& flag) const;

 private:
  TypeGraph type_;
  int size_;
  std::vector<Flag> flags_;
  std::vector<CanonicalForm> forms_;
  std::unordered_map<CanonicalForm, std::size_t, CanonicalFormHash> index_;
};

using FlagBasisPtr = std::shared_ptr<const FlagBasis>;

/// One representative per isomorphism class of graphs on s vertices, in
/// canonical order, each labelled by its canonical labelling.
[[nodiscard]] std::vector<TypeGraph> enumerate_types(int s);

/// Grows the basis one vertex at a time from the type itself.
[[nodiscard]] FlagBasisPtr enumerate_flags(const TypeGraph& type, int size);

}  // namespace flagcert
