#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flagcert/formats.hpp"

namespace flagcert {

/// Denominator used to round solver matrices unless one is given.
inline constexpr long kDefaultDenominator = 11289600;

struct PipelineConfig {
  int t = 4;
  int s = 3;
  int small_size = 5;
  long denominator = kDefaultDenominator;
  std::filesystem::path out_dir = ".";
  /// Shell command with {in} and {out} placeholders for the SDPA problem and
  /// the solution file.
  std::string solver_command;
  FileFormat format = FileFormat::Paper;
  SpIndexing sp_indexing = SpIndexing::ZeroFlag;

  [[nodiscard]] int large_size() const { return 2 * small_size - s; }
};

/// Checks the build_problem preconditions; throws FlagError(SizeTooSmall).
void validate(const PipelineConfig& config);

/// Writes one flag list per type of order s at size l1 (a single list of
/// graphs when s = 0). Returns the written paths.
std::vector<std::filesystem::path> cmd_enumerate(const PipelineConfig& config);

/// Writes flag lists for l1 and l2, product, averaging, averaged-product and
/// objective files for every type of order s.
std::vector<std::filesystem::path> cmd_coeffs(const PipelineConfig& config);

/// Writes the sparse SDPA problem and returns its path.
std::filesystem::path cmd_build_sdp(const PipelineConfig& config);

struct CertifyReport {
  Certificate certificate;
  std::vector<long> repairs;
  std::filesystem::path certificate_path;
  double solver_bound = 0.0;
};

/// Imports the solver output (running the solver first if `solution` is
/// empty), rounds, repairs, recomputes the exact bound and writes the
/// certificate.
CertifyReport cmd_certify(const PipelineConfig& config, const std::filesystem::path& solution);

VerifyReport cmd_verify(const std::filesystem::path& certificate);

/// Reads flag lists and CSV matrices in a foreign flag order (the published
/// "jbc"/"yz"/"yzn" layout) from `dir` and writes a native certificate.
std::filesystem::path cmd_import_matrices(const PipelineConfig& config, const std::filesystem::path& dir,
                                          const Rational& claimed_bound);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace flagcert
