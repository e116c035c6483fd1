#include <CLI11.hpp>

#include <iostream>

#include "flagcert/pipeline.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

using flagcert::FlagError;

int exit_code_for(const FlagError& e) {
  switch (e.kind()) {
    case FlagError::Kind::Io:
      return kExitIo;
    case FlagError::Kind::SizeTooSmall:
    case FlagError::Kind::SizeBudget:
      return kExitUsage;
    default:
      return kExitVerifyFailed;
  }
}

std::string describe(const flagcert::Rational& r) {
  return flagcert::to_fraction_string(r) + " = " + flagcert::to_decimal_string(r);
}

void print_failure(const flagcert::VerifyFailure& f) {
  using Kind = flagcert::VerifyFailure::Kind;
  switch (f.kind) {
    case Kind::Malformed:
      std::cout << "rejected: malformed certificate: " << f.message << "\n";
      break;
    case Kind::NotPsd:
      std::cout << "rejected: matrix " << f.matrix_index + 1 << " is not positive semidefinite";
      if (f.witness) {
        std::cout << " (z^T M z = " << describe(f.witness->value) << ")";
      }
      std::cout << "\n";
      break;
    case Kind::Violated:
      std::cout << "rejected: constraint " << f.constraint_index + 1 << " (0-flag " << f.zero_flag
                << ") violated by " << describe(-f.residual) << "\n";
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag-algebra lower bounds for clique densities in 2-colourings"};
  app.require_subcommand(1);

  flagcert::PipelineConfig config;
  std::string format = "paper";
  std::string sp_indexing = "zero";
  std::string solution;
  std::string certificate;
  std::string import_dir;
  std::string claimed_bound;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--t", config.t, "Clique size")->check(CLI::Range(2, 9));
    sub->add_option("--s", config.s, "Type order")->check(CLI::Range(0, 9));
    sub->add_option("--l1", config.small_size, "Small flag size")->check(CLI::Range(1, 9));
    sub->add_option("--out", config.out_dir, "Output directory");
    sub->add_option("--format", format, "File format")->check(CLI::IsMember({"native", "paper"}));
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "Write flag lists for every type of order s");
  add_common(enumerate);
  CLI::App* coeffs = app.add_subcommand("coeffs", "Write product, averaging and objective coefficients");
  add_common(coeffs);
  coeffs->add_option("--sp-index", sp_indexing, "Column a of averaged-product files")
      ->check(CLI::IsMember({"zero", "sigma"}));
  CLI::App* build_sdp = app.add_subcommand("build-sdp", "Write the SDPA sparse problem");
  add_common(build_sdp);
  CLI::App* certify = app.add_subcommand("certify", "Round a solver solution into an exact certificate");
  add_common(certify);
  certify->add_option("--denominator", config.denominator, "Rounding denominator")->check(CLI::PositiveNumber);
  certify->add_option("--solver-cmd", config.solver_command, "Solver command with {in} and {out} placeholders");
  certify->add_option("--solution", solution, "Existing solver output (skips running the solver)");
  CLI::App* verify = app.add_subcommand("verify", "Verify a certificate from scratch");
  verify->add_option("certificate", certificate, "Certificate file")->required();
  CLI::App* import = app.add_subcommand("import", "Convert jbc/yz/yzn files into a native certificate");
  add_common(import);
  import->add_option("dir", import_dir, "Directory holding the files")->required();
  import->add_option("--bound", claimed_bound, "Claimed bound p/q")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  config.format = format == "native" ? flagcert::FileFormat::Native : flagcert::FileFormat::Paper;
  config.sp_indexing = sp_indexing == "sigma" ? flagcert::SpIndexing::SigmaFlag : flagcert::SpIndexing::ZeroFlag;

  try {
    if (*enumerate) {
      for (const auto& path : flagcert::cmd_enumerate(config)) {
        std::cout << path.string() << "\n";
      }
    } else if (*coeffs) {
      for (const auto& path : flagcert::cmd_coeffs(config)) {
        std::cout << path.string() << "\n";
      }
    } else if (*build_sdp) {
      std::cout << flagcert::cmd_build_sdp(config).string() << "\n";
    } else if (*certify) {
      const flagcert::CertifyReport report = flagcert::cmd_certify(config, solution);
      for (std::size_t i = 0; i < report.repairs.size(); ++i) {
        if (report.repairs[i] != 0) {
          std::clog << "matrix " << i + 1 << " repaired with " << report.repairs[i] << "/" << config.denominator
                    << " * I\n";
        }
      }
      std::clog << "solver bound " << flagcert::to_decimal_string(report.solver_bound) << ", certificate "
                << report.certificate_path.string() << "\n";
      std::cout << describe(report.certificate.bound) << "\n";
    } else if (*verify) {
      const flagcert::VerifyReport report = flagcert::cmd_verify(certificate);
      if (!report.accepted) {
        print_failure(*report.failure);
        return kExitVerifyFailed;
      }
      std::cout << "accepted: " << describe(report.recomputed_bound) << "\n";
    } else if (*import) {
      flagcert::validate(config);
      const flagcert::Rational bound = flagcert::parse_rational(claimed_bound);
      std::cout << flagcert::cmd_import_matrices(config, import_dir, bound).string() << "\n";
    }
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
