#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flagcert/certify.hpp"

namespace flagcert {

// Paper-compatible files use 1-based indices and store numerators only, the
// denominator being implied by the flag sizes. Native files carry a header
// line naming the format, version, index base (always 0) and denominator.

enum class FileFormat { Native, Paper };

/// Column a of an "sp" file: the averaged 0-flag (default) or the sigma-flag
/// before averaging.
enum class SpIndexing { ZeroFlag, SigmaFlag };

// Flag lists ("jbc"): a count line, then one upper-triangle bitstring per flag.
[[nodiscard]] std::string write_flag_list(const FlagBasis& basis, FileFormat format);
/// Graphs of order `order` in file order. Native files check their header.
[[nodiscard]] std::vector<Graph> read_flag_list(std::string_view text, int order, FileFormat format);

// Product coefficients ("si"): "a b c d" = numerator d of p(F_b, F_c; F_a).
[[nodiscard]] std::string write_products(const ProductTable& table, FileFormat format);
struct CoefficientRecord {
  std::uint32_t a;
  std::uint32_t b;
  std::uint32_t c;
  std::uint64_t numerator;
};
struct CoefficientFile {
  std::uint64_t denominator = 0;
  std::vector<CoefficientRecord> records;
};
/// Indices in the result are 0-based. `denominator` is used for paper files,
/// which do not store it.
[[nodiscard]] CoefficientFile read_coefficients(std::string_view text, FileFormat format,
                                                std::uint64_t denominator);

// Averaging factors ("qjb"): "i k d" = sigma-flag i averages to 0-flag k
// with numerator d of q_sigma.
[[nodiscard]] std::string write_averaging(const AveragingMap& avg, FileFormat format);
struct AveragingRecord {
  std::uint32_t sigma_index;
  std::uint32_t zero_index;
  std::uint64_t numerator;
};
struct AveragingFile {
  std::uint64_t denominator = 0;
  std::vector<AveragingRecord> records;
};
[[nodiscard]] AveragingFile read_averaging(std::string_view text, FileFormat format, std::uint64_t denominator);

// Averaged products ("sp"): "a b c d" with d a numerator over
// table.denominator() * avg.denominator().
[[nodiscard]] std::string write_averaged_products(const ProductTable& table, const AveragingMap& avg,
                                                  FileFormat format, SpIndexing indexing);

// Objective ("l47"): one numerator per 0-flag over C(l2, t).
[[nodiscard]] std::string write_objective(const FlagVector& objective, int t, FileFormat format);
[[nodiscard]] std::vector<Rational> read_objective(std::string_view text, int t, int large_size, FileFormat format);

// Matrices ("yz" CSV numerators plus a "yzn" file with the denominator).
[[nodiscard]] std::string write_matrix_csv(const RationalMatrix& m, const mpz_class& denominator);
[[nodiscard]] RationalMatrix read_matrix_csv(std::string_view text, const mpz_class& denominator);
[[nodiscard]] mpz_class read_denominator(std::string_view text);
/// Least common denominator of all entries.
[[nodiscard]] mpz_class common_denominator(const std::vector<RationalMatrix>& matrices);

// Native certificate ("flagcert v1").
[[nodiscard]] std::string write_certificate(const Certificate& cert);
/// Throws FlagError(Version) for an unknown header, FlagError(Parse) otherwise.
[[nodiscard]] Certificate read_certificate(std::string_view text);

/// Builds a certificate from flag lists and matrices given in someone else's
/// flag order: matrix rows are permuted into this library's canonical order.
/// The type of each list is read off the roots (the first s vertices).
[[nodiscard]] Certificate certificate_from_foreign_order(int t, int s, int small_size,
                                                         const std::vector<std::vector<Graph>>& flag_lists,
                                                         const std::vector<RationalMatrix>& matrices,
                                                         const Rational& claimed_bound);

}  // namespace flagcert
