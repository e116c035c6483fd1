#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "flagcert/graph.hpp"

namespace flagcert {

/// Upper-triangular adjacency bits of the canonically relabelled flag (roots
/// first, in root order). The first bit of the string is the most
/// significant used bit of `bits`, so for equal order the numeric order of
/// `bits` is the lexicographic order of the bitstring.
struct CanonicalForm {
  int order = 0;
  int type_order = 0;
  std::uint64_t bits = 0;

  [[nodiscard]] std::string to_string() const;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

struct CanonicalLabeling {
  CanonicalForm form;
  /// labeling[i] is the original vertex placed at canonical position i;
  /// the first s positions are the roots in order.
  std::vector<int> labeling;
};

/// Canonical labeling of (graph, roots): roots individualised in order, then
/// equitable refinement and backtracking over the remaining cells, keeping
/// the lexicographically largest bitstring.
[[nodiscard]] CanonicalLabeling canonical_labeling(const Graph& graph, std::span<const int> roots);

[[nodiscard]] CanonicalForm canonical_form(const Graph& graph, std::span<const int> roots);
[[nodiscard]] CanonicalForm canonical_form(const Flag& flag);

/// The canonical representative: relabelled so that roots are 0..s-1.
[[nodiscard]] Flag canonical_flag(const Flag& flag);

/// Throws FlagError(TypeMismatch) when the types differ as labelled graphs.
[[nodiscard]] bool is_isomorphic(const Flag& a, const Flag& b);

/// Bitstring packing used by canonical forms: pairs (i,j), i<j, row-major.
[[nodiscard]] std::uint64_t pack_upper_triangle(const Graph& graph);

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const noexcept {
    return std::hash<std::uint64_t>{}(f.bits ^ (std::uint64_t(f.order) << 58) ^
                                      (std::uint64_t(f.type_order) << 54));
  }
};

}  // namespace flagcert
