#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "flagcert/sdp.hpp"

namespace flagcert {

/// Exact pivoted factorisation M = P^T L D L^T P with D >= 0.
struct PsdWitness {
  /// permutation[k] is the original index eliminated at step k.
  std::vector<std::size_t> permutation;
  std::vector<Rational> diagonal;
  /// Unit lower-triangular, indexed in pivot order.
  RationalMatrix lower;
};

/// A direction z with z^T M z = value < 0.
struct NegativeDirection {
  std::vector<Rational> z;
  Rational value;
};

using PsdResult = std::variant<PsdWitness, NegativeDirection>;

/// Throws FlagError(NotSymmetric) for non-symmetric input.
[[nodiscard]] PsdResult psd_certify(const RationalMatrix& m);

/// P^T L D L^T P, for checking a witness against its matrix.
[[nodiscard]] RationalMatrix reassemble(const PsdWitness& w);

[[nodiscard]] Rational quadratic_value(const RationalMatrix& m, std::span<const Rational> z);

/// round(x * denominator) / denominator per entry, symmetrised first.
[[nodiscard]] std::vector<RationalMatrix> round_matrices(const SolverSolution& sol, long denominator);

struct BoundResult {
  Rational bound;
  /// A 0-flag where the inequality is tight.
  std::size_t tight_index = 0;
  /// w_k - sum_i v_{i,k} for every 0-flag k.
  std::vector<Rational> margins;
};

/// c = min_k (w_k - sum_i v_{i,k}); may be non-positive.
[[nodiscard]] BoundResult best_bound(std::span<const RationalMatrix> matrices, const DensityData& data);

struct Certificate {
  int t = 0;
  int s = 0;
  int small_size = 0;
  std::vector<TypeGraph> types;
  std::vector<RationalMatrix> matrices;
  Rational bound;

  [[nodiscard]] int large_size() const { return 2 * small_size - s; }
};

struct VerifyFailure {
  enum class Kind { Malformed, NotPsd, Violated };
  Kind kind = Kind::Malformed;
  std::string message;
  std::size_t matrix_index = 0;
  std::optional<NegativeDirection> witness;
  std::size_t constraint_index = 0;
  /// Upper-triangle bitstring of the violated 0-flag.
  std::string zero_flag;
  /// Recomputed margin minus the claimed bound; negative on violation.
  Rational residual;
};

struct VerifyReport {
  bool accepted = false;
  Rational recomputed_bound;
  std::optional<VerifyFailure> failure;
};

/// Recomputes bases and densities from scratch, certifies every matrix PSD
/// exactly and accepts iff the recomputed bound is at least the claimed one.
[[nodiscard]] VerifyReport verify(const Certificate& cert);

/// Rounds, repairs with M + eps*I (eps = k/denominator, k = 1, 2, 4, ...)
/// where exact PSD fails, and returns a certificate with the exact bound.
struct CertifyOutcome {
  Certificate certificate;
  /// Per matrix: regularisation multiplier k that was added (0 if none).
  std::vector<long> repairs;
};

[[nodiscard]] CertifyOutcome certify_solution(const SolverSolution& sol, const DensityData& data,
                                              std::span<const TypeGraph> types, long denominator);

}  // namespace flagcert
