#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "flagcert/enumerate.hpp"
#include "flagcert/rational.hpp"

namespace flagcert {

/// Rational coefficients over a flag basis.
struct FlagVector {
  FlagBasisPtr basis;
  std::vector<Rational> coeffs;
};

/// p(small; large): the fraction of vertex sets U containing the roots with
/// |U| = v(small) and large|_U isomorphic to small.
[[nodiscard]] Rational density(const Flag& small, const Flag& large);

/// p(F_1, ..., F_n; F) over ordered sunflowers whose petals meet exactly in
/// the root set. `density` is the n = 1 case of this function.
[[nodiscard]] Rational joint_density(std::span<const Flag> petals, const Flag& large);

/// Coefficients density(flag, F) for every F in the basis.
[[nodiscard]] FlagVector expand(const Flag& flag, const FlagBasisPtr& basis);

struct ProductEntry {
  std::uint32_t target;
  std::uint32_t left;
  std::uint32_t right;
  /// Numerator over ProductTable::denominator().
  std::uint32_t count;
};

/// Sparse coefficients p(F_left, F_right; F_target) for small flags of order
/// l1 and targets of order l2 = 2*l1 - s. Entries are nonzero only, sorted by
/// (target, left, right), and stored for both orders of (left, right).
class ProductTable {
 public:
  ProductTable(FlagBasisPtr small, FlagBasisPtr large, std::vector<ProductEntry> entries, std::uint32_t denominator);

  [[nodiscard]] const TypeGraph& type() const { return small_->type(); }
  [[nodiscard]] int small_size() const { return small_->size(); }
  [[nodiscard]] int large_size() const { return large_->size(); }
  [[nodiscard]] const FlagBasisPtr& small_basis() const { return small_; }
  [[nodiscard]] const FlagBasisPtr& large_basis() const { return large_; }
  [[nodiscard]] std::uint32_t denominator() const { return denominator_; }
  [[nodiscard]] const std::vector<ProductEntry>& entries() const { return entries_; }
  [[nodiscard]] std::span<const ProductEntry> row(std::size_t target) const;

  [[nodiscard]] Rational value(const ProductEntry& e) const { return make_rational(e.count, denominator_); }
  [[nodiscard]] Rational at(std::size_t target, std::size_t left, std::size_t right) const;

 private:
  FlagBasisPtr small_;
  FlagBasisPtr large_;
  std::vector<ProductEntry> entries_;
  std::vector<std::size_t> offsets_;
  std::uint32_t denominator_;
};

[[nodiscard]] ProductTable product_table(const TypeGraph& type, int small_size);
[[nodiscard]] ProductTable product_table(FlagBasisPtr small, FlagBasisPtr large);

struct AveragingRow {
  std::uint32_t zero_index;
  /// Numerator of q over AveragingMap::denominator().
  std::uint32_t count;
};

/// q_sigma for every sigma-flag of one order, with the 0-flag it averages to.
class AveragingMap {
 public:
  AveragingMap(FlagBasisPtr sigma_basis, FlagBasisPtr zero_basis, std::vector<AveragingRow> rows,
               std::uint32_t denominator);

  [[nodiscard]] const TypeGraph& type() const { return sigma_->type(); }
  [[nodiscard]] int flag_size() const { return sigma_->size(); }
  [[nodiscard]] const FlagBasisPtr& sigma_basis() const { return sigma_; }
  [[nodiscard]] const FlagBasisPtr& zero_basis() const { return zero_; }
  [[nodiscard]] const std::vector<AveragingRow>& rows() const { return rows_; }
  /// |Psi|: the number of injections of the type into an l-vertex graph.
  [[nodiscard]] std::uint32_t denominator() const { return denominator_; }
  [[nodiscard]] Rational q(std::size_t sigma_index) const {
    return make_rational(rows_[sigma_index].count, denominator_);
  }

 private:
  FlagBasisPtr sigma_;
  FlagBasisPtr zero_;
  std::vector<AveragingRow> rows_;
  std::uint32_t denominator_;
};

[[nodiscard]] AveragingMap averaging_map(const TypeGraph& type, int size);
[[nodiscard]] AveragingMap averaging_map(FlagBasisPtr sigma_basis, FlagBasisPtr zero_basis);

/// Coefficient of 0-flag `zero` in [[F_left * F_right]]_sigma, as a numerator
/// over table.denominator() * avg.denominator().
struct AveragedEntry {
  std::uint32_t zero;
  std::uint32_t left;
  std::uint32_t right;
  std::uint64_t count;
};

/// Product coefficients pushed through the averaging map and summed per
/// 0-flag; sorted by (zero, left, right), both orders of (left, right) kept.
[[nodiscard]] std::vector<AveragedEntry> averaged_products(const ProductTable& table, const AveragingMap& avg);

/// Coefficients of [[x^T M x]]_sigma on the 0-flag basis of order l2.
[[nodiscard]] FlagVector quadratic_form_image(const ProductTable& table, const AveragingMap& avg,
                                              const RationalMatrix& m, const FlagBasisPtr& zero_basis);

/// w_k = p(K_t; F_k) + p(complement K_t; F_k).
[[nodiscard]] FlagVector objective_vector(int t, const FlagBasisPtr& zero_basis);

}  // namespace flagcert
