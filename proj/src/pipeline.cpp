#include "flagcert/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace flagcert {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw FlagError(FlagError::Kind::Io, "cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) {
      throw FlagError(FlagError::Kind::Io, "cannot create directory '" + path.parent_path().string() +
                                               "': " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw FlagError(FlagError::Kind::Io, "cannot open '" + path.string() + "' for writing");
  }
  out << contents;
  if (!out) {
    throw FlagError(FlagError::Kind::Io, "write to '" + path.string() + "' failed");
  }
}

void validate(const PipelineConfig& config) {
  if (config.s < 1) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "--s must be at least 1");
  }
  if (config.small_size <= config.s) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "--l1 must exceed --s");
  }
  if (config.large_size() < config.t) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "2*l1 - s must be at least t");
  }
  if (config.t < 2) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "--t must be at least 2");
  }
  if (config.denominator < 1) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "--denominator must be positive");
  }
}

namespace {

// Paper names: jbc<s><l>_<i> for sigma-flags and jbc0<l> for graphs.
std::string flag_list_name(const PipelineConfig& config, int s, int size, std::size_t type_index) {
  if (config.format == FileFormat::Paper) {
    std::string name = "jbc" + std::to_string(s) + std::to_string(size);
    return s == 0 ? name : name + "_" + std::to_string(type_index + 1);
  }
  std::string name = "flags-s" + std::to_string(s) + "-l" + std::to_string(size);
  return (s == 0 ? name : name + "-" + std::to_string(type_index + 1)) + ".txt";
}

std::string coefficient_name(const PipelineConfig& config, const std::string& paper_stem, const std::string& native_stem,
                             int size, std::size_t type_index) {
  if (config.format == FileFormat::Paper) {
    return paper_stem + std::to_string(config.s) + std::to_string(size) + "_" + std::to_string(type_index + 1);
  }
  return native_stem + "-s" + std::to_string(config.s) + "-l" + std::to_string(size) + "-" +
         std::to_string(type_index + 1) + ".txt";
}

}  // namespace

std::vector<fs::path> cmd_enumerate(const PipelineConfig& config) {
  if (config.s < 0 || config.small_size < config.s) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "--l1 must be at least --s");
  }
  std::vector<fs::path> written;
  const std::vector<TypeGraph> types = enumerate_types(config.s);
  for (std::size_t i = 0; i < types.size(); ++i) {
    const FlagBasisPtr basis = enumerate_flags(types[i], config.small_size);
    const fs::path path = config.out_dir / flag_list_name(config, config.s, config.small_size, i);
    write_file(path, write_flag_list(*basis, config.format));
    written.push_back(path);
  }
  return written;
}

std::vector<fs::path> cmd_coeffs(const PipelineConfig& config) {
  validate(config);
  const std::vector<TypeGraph> types = enumerate_types(config.s);
  const DensityData data = compute_density_data(config.t, config.s, config.small_size, types);
  const int l1 = config.small_size;
  const int l2 = config.large_size();
  std::vector<fs::path> written;
  auto emit = [&](const std::string& name, const std::string& contents) {
    const fs::path path = config.out_dir / name;
    write_file(path, contents);
    written.push_back(path);
  };

  emit(flag_list_name(config, 0, l2, 0), write_flag_list(*data.zero_basis, config.format));
  emit(config.format == FileFormat::Paper
           ? "l" + std::to_string(config.t) + std::to_string(l2)
           : "objective-t" + std::to_string(config.t) + "-l" + std::to_string(l2) + ".txt",
       write_objective(data.objective, config.t, config.format));
  for (std::size_t i = 0; i < data.types.size(); ++i) {
    const DensityData::PerType& per = data.types[i];
    emit(flag_list_name(config, config.s, l1, i), write_flag_list(*per.table.small_basis(), config.format));
    emit(flag_list_name(config, config.s, l2, i), write_flag_list(*per.table.large_basis(), config.format));
    emit(coefficient_name(config, "si", "products", l1, i), write_products(per.table, config.format));
    emit(coefficient_name(config, "qjb", "averaging", l2, i), write_averaging(per.averaging, config.format));
    emit(coefficient_name(config, "sp", "averaged-products", l1, i),
         write_averaged_products(per.table, per.averaging, config.format, config.sp_indexing));
  }
  return written;
}

fs::path cmd_build_sdp(const PipelineConfig& config) {
  validate(config);
  const SdpProblem problem = build_problem(config.t, config.s, config.small_size);
  const fs::path path = config.out_dir / ("problem-t" + std::to_string(config.t) + "-s" + std::to_string(config.s) +
                                          "-l" + std::to_string(config.small_size) + ".dat-s");
  write_file(path, export_solver_format(problem));
  return path;
}

namespace {

std::string substitute(std::string command, const std::string& key, const std::string& value) {
  for (auto pos = command.find(key); pos != std::string::npos; pos = command.find(key, pos + value.size())) {
    command.replace(pos, key.size(), value);
  }
  return command;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

CertifyReport cmd_certify(const PipelineConfig& config, const fs::path& solution) {
  validate(config);
  const std::vector<TypeGraph> types = enumerate_types(config.s);
  const DensityData data = compute_density_data(config.t, config.s, config.small_size, types);
  const SdpProblem problem = build_problem(data);

  fs::path solution_path = solution;
  if (solution_path.empty()) {
    if (config.solver_command.empty()) {
      throw FlagError(FlagError::Kind::Io, "certify needs either a solution file or a solver command");
    }
    const fs::path problem_path = cmd_build_sdp(config);
    solution_path = problem_path;
    solution_path.replace_extension(".sol");
    std::string command = substitute(config.solver_command, "{in}", shell_quote(problem_path.string()));
    command = substitute(command, "{out}", shell_quote(solution_path.string()));
    std::clog << "running solver: " << command << "\n";
    if (std::system(command.c_str()) != 0) {
      throw FlagError(FlagError::Kind::Io, "solver command failed: " + command);
    }
  }

  const SolverSolution sol = import_solution(problem, read_file(solution_path));
  // Types with an empty basis get no block; none occur for l1 > s.
  CertifyOutcome outcome = certify_solution(sol, data, problem.types, config.denominator);
  CertifyReport report;
  report.solver_bound = sol.c_float;
  report.repairs = std::move(outcome.repairs);
  report.certificate = std::move(outcome.certificate);
  report.certificate_path = config.out_dir / ("certificate-t" + std::to_string(config.t) + "-s" +
                                              std::to_string(config.s) + "-l" + std::to_string(config.small_size) +
                                              ".txt");
  write_file(report.certificate_path, write_certificate(report.certificate));
  return report;
}

VerifyReport cmd_verify(const fs::path& certificate) { return verify(read_certificate(read_file(certificate))); }

fs::path cmd_import_matrices(const PipelineConfig& config, const fs::path& dir, const Rational& claimed_bound) {
  const std::vector<TypeGraph> types = enumerate_types(config.s);
  const mpz_class denominator = read_denominator(read_file(dir / "yzn"));
  std::vector<std::vector<Graph>> lists;
  std::vector<RationalMatrix> matrices;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const fs::path list = dir / ("jbc" + std::to_string(config.s) + std::to_string(config.small_size) + "_" +
                                 std::to_string(i + 1));
    const fs::path matrix = dir / ("yz" + std::to_string(i + 1));
    if (!fs::exists(list) && !fs::exists(matrix)) {
      break;
    }
    lists.push_back(read_flag_list(read_file(list), config.small_size, FileFormat::Paper));
    matrices.push_back(read_matrix_csv(read_file(matrix), denominator));
  }
  const Certificate cert =
      certificate_from_foreign_order(config.t, config.s, config.small_size, lists, matrices, claimed_bound);
  const fs::path path = config.out_dir / "imported-certificate.txt";
  write_file(path, write_certificate(cert));
  return path;
}

}  // namespace flagcert
