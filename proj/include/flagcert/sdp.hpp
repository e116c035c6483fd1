#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "flagcert/algebra.hpp"

namespace flagcert {

/// Everything a certificate needs from the density side for one choice of
/// (t, types, l1): product tables, averaging maps and the objective vector.
struct DensityData {
  struct PerType {
    TypeGraph type;
    ProductTable table;
    AveragingMap averaging;
  };

  int t = 0;
  int s = 0;
  int small_size = 0;
  int large_size = 0;
  FlagBasisPtr zero_basis;
  FlagVector objective;
  std::vector<PerType> types;
};

/// Builds density data for the given types of order s. Throws SizeTooSmall
/// when l1 <= s, s < 1, or l2 = 2*l1 - s < t.
[[nodiscard]] DensityData compute_density_data(int t, int s, int small_size, std::span<const TypeGraph> types);

/// Upper-triangular (row <= col) entry of a symmetric coefficient matrix.
struct SdpEntry {
  std::uint32_t row;
  std::uint32_t col;
  Rational value;
};

/// maximise c subject to sum_i <A_{i,k}, M_i> + c <= w_k for every 0-flag k,
/// M_i PSD. Coefficients stay exact; floating point appears only on export.
struct SdpProblem {
  int t = 0;
  int s = 0;
  int small_size = 0;
  int large_size = 0;
  std::vector<TypeGraph> types;
  std::vector<std::size_t> block_sizes;
  std::vector<Rational> rhs;
  /// coefficients[k][i]: entries of A_{i,k} for constraint k and block i.
  std::vector<std::vector<std::vector<SdpEntry>>> coefficients;

  [[nodiscard]] std::size_t constraint_count() const { return rhs.size(); }
  [[nodiscard]] std::size_t block_count() const { return block_sizes.size(); }
};

[[nodiscard]] SdpProblem build_problem(int t, int s, int small_size);
[[nodiscard]] SdpProblem build_problem(const DensityData& data);

/// Sparse SDPA text (.dat-s). The PSD blocks are followed by one diagonal
/// block of size m+1 holding the m slacks and the bound c as its last entry.
[[nodiscard]] std::string export_solver_format(const SdpProblem& problem);

/// Entry-level view of an SDPA sparse file, used for round-trip checks.
struct SdpaFile {
  std::size_t constraint_count = 0;
  std::vector<long> block_sizes;
  std::vector<double> objective;
  struct Entry {
    std::size_t matrix;
    std::size_t block;
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::vector<Entry> entries;
};

[[nodiscard]] SdpaFile parse_solver_format(std::string_view text);

/// Floating-point primal matrix returned by the solver.
struct SolverSolution {
  std::vector<DoubleMatrix> matrices;
  std::vector<double> slacks;
  double c_float = 0.0;
};

/// Reads solver output in the CSDP solution layout: a first line holding the
/// dual vector, then lines "matno block i j value". Lines with matno 2 form
/// the primal matrix; other lines are ignored. Indices are 1-based.
[[nodiscard]] SolverSolution import_solution(const SdpProblem& problem, std::string_view text);

/// Nearest double (exact division when numerator and denominator fit).
[[nodiscard]] double to_double(const Rational& r);

}  // namespace flagcert
