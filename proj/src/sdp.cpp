#include "flagcert/sdp.hpp"

#include <cmath>
#include <sstream>

namespace flagcert {

DensityData compute_density_data(int t, int s, int small_size, std::span<const TypeGraph> types) {
  if (s < 1) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "type order s must be at least 1");
  }
  if (small_size <= s) {
    throw FlagError(FlagError::Kind::SizeTooSmall,
                    "l1 = " + std::to_string(small_size) + " must exceed s = " + std::to_string(s));
  }
  const int large_size = 2 * small_size - s;
  if (large_size < t) {
    throw FlagError(FlagError::Kind::SizeTooSmall, "l2 = " + std::to_string(large_size) +
                                                       " is below t = " + std::to_string(t) + "; no constraint can see K_t");
  }
  if (large_size > kMaxEnumerationOrder) {
    throw FlagError(FlagError::Kind::SizeBudget, "l2 = " + std::to_string(large_size) + " exceeds the supported maximum " +
                                                     std::to_string(kMaxEnumerationOrder));
  }
  DensityData data;
  data.t = t;
  data.s = s;
  data.small_size = small_size;
  data.large_size = large_size;
  data.zero_basis = enumerate_flags(TypeGraph(Graph(0)), large_size);
  data.objective = objective_vector(t, data.zero_basis);
  for (const TypeGraph& type : types) {
    if (type.order() != s) {
      throw FlagError(FlagError::Kind::TypeMismatch, "type of order " + std::to_string(type.order()) +
                                                         " in a problem with s = " + std::to_string(s));
    }
    const FlagBasisPtr large = enumerate_flags(type, large_size);
    ProductTable table = product_table(enumerate_flags(type, small_size), large);
    AveragingMap averaging = averaging_map(large, data.zero_basis);
    data.types.push_back({type, std::move(table), std::move(averaging)});
  }
  return data;
}

SdpProblem build_problem(int t, int s, int small_size) {
  const std::vector<TypeGraph> types = enumerate_types(s);
  return build_problem(compute_density_data(t, s, small_size, types));
}

SdpProblem build_problem(const DensityData& data) {
  SdpProblem p;
  p.t = data.t;
  p.s = data.s;
  p.small_size = data.small_size;
  p.large_size = data.large_size;
  p.rhs = data.objective.coeffs;
  const std::size_t m = p.rhs.size();
  p.coefficients.assign(m, {});

  for (const DensityData::PerType& per : data.types) {
    const std::size_t dim = per.table.small_basis()->count();
    if (dim == 0) {
      continue;
    }
    const std::size_t block = p.block_sizes.size();
    p.types.push_back(per.type);
    p.block_sizes.push_back(dim);
    for (auto& row : p.coefficients) {
      row.emplace_back();
    }
    const long scale = static_cast<long>(per.table.denominator()) * per.averaging.denominator();
    for (const AveragedEntry& e : averaged_products(per.table, per.averaging)) {
      if (e.left > e.right) {
        continue;
      }
      p.coefficients[e.zero][block].push_back(
          {e.left, e.right, make_rational(mpz_class(static_cast<unsigned long>(e.count)), scale)});
    }
  }
  return p;
}

double to_double(const Rational& r) {
  constexpr std::size_t kExactBits = 53;
  if (mpz_sizeinbase(r.get_num_mpz_t(), 2) <= kExactBits && mpz_sizeinbase(r.get_den_mpz_t(), 2) <= kExactBits) {
    return r.get_num().get_d() / r.get_den().get_d();
  }
  return r.get_d();
}

std::string export_solver_format(const SdpProblem& problem) {
  const std::size_t m = problem.constraint_count();
  std::ostringstream out;
  out << m << "\n";
  if (m == 0) {
    out << 0 << "\n\n\n";
    return out.str();
  }
  const std::size_t diag_block = problem.block_count() + 1;
  out << problem.block_count() + 1 << "\n";
  for (std::size_t size : problem.block_sizes) {
    out << size << " ";
  }
  out << "-" << m + 1 << "\n";
  for (std::size_t k = 0; k < m; ++k) {
    out << (k ? " " : "") << to_decimal_string(to_double(problem.rhs[k]));
  }
  out << "\n";
  // Objective: the bound c sits in the last diagonal entry.
  out << "0 " << diag_block << " " << m + 1 << " " << m + 1 << " 1\n";
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t b = 0; b < problem.block_count(); ++b) {
      for (const SdpEntry& e : problem.coefficients[k][b]) {
        out << k + 1 << " " << b + 1 << " " << e.row + 1 << " " << e.col + 1 << " "
            << to_decimal_string(to_double(e.value)) << "\n";
      }
    }
    out << k + 1 << " " << diag_block << " " << k + 1 << " " << k + 1 << " 1\n";
    out << k + 1 << " " << diag_block << " " << m + 1 << " " << m + 1 << " 1\n";
  }
  return out.str();
}

namespace {

// SDPA files may use commas, braces and parentheses as separators.
std::string normalise_separators(std::string_view line) {
  std::string out(line);
  for (char& c : out) {
    if (c == ',' || c == '{' || c == '}' || c == '(' || c == ')') {
      c = ' ';
    }
  }
  return out;
}

std::vector<std::string> data_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '"' || line[first] == '*') {
      continue;
    }
    lines.push_back(normalise_separators(line));
  }
  return lines;
}

[[noreturn]] void parse_fail(const std::string& what) { throw FlagError(FlagError::Kind::Parse, what); }

}  // namespace

SdpaFile parse_solver_format(std::string_view text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.size() < 2) {
    parse_fail("SDPA file: missing header lines");
  }
  SdpaFile f;
  std::size_t block_count = 0;
  {
    std::istringstream(lines[0]) >> f.constraint_count;
    std::istringstream(lines[1]) >> block_count;
  }
  std::size_t next = 2;
  if (block_count > 0) {
    if (lines.size() < 4) {
      parse_fail("SDPA file: missing block sizes or objective");
    }
    std::istringstream sizes(lines[next++]);
    long size = 0;
    while (f.block_sizes.size() < block_count && sizes >> size) {
      f.block_sizes.push_back(size);
    }
    if (f.block_sizes.size() != block_count) {
      parse_fail("SDPA file: expected " + std::to_string(block_count) + " block sizes");
    }
    std::istringstream obj(lines[next++]);
    double v = 0;
    while (f.objective.size() < f.constraint_count && obj >> v) {
      f.objective.push_back(v);
    }
    if (f.objective.size() != f.constraint_count) {
      parse_fail("SDPA file: objective row has the wrong length");
    }
  }
  for (; next < lines.size(); ++next) {
    std::istringstream row(lines[next]);
    SdpaFile::Entry e{};
    if (!(row >> e.matrix >> e.block >> e.row >> e.col >> e.value)) {
      parse_fail("SDPA file: malformed entry line '" + lines[next] + "'");
    }
    f.entries.push_back(e);
  }
  return f;
}

SolverSolution import_solution(const SdpProblem& problem, std::string_view text) {
  const std::vector<std::string> lines = data_lines(text);
  if (lines.empty()) {
    parse_fail("solver output is empty");
  }
  const std::size_t m = problem.constraint_count();
  const std::size_t blocks = problem.block_count();
  std::vector<DoubleMatrix> values;
  std::vector<Matrix<unsigned char>> given;
  for (std::size_t size : problem.block_sizes) {
    values.emplace_back(size, size);
    given.emplace_back(size, size);
  }
  SolverSolution sol;
  sol.slacks.assign(m, 0.0);
  bool saw_bound = false;

  // The first line is the dual vector; only its numeric shape is checked.
  {
    std::istringstream first(lines[0]);
    double v = 0;
    std::size_t count = 0;
    while (first >> v) {
      ++count;
    }
    if (!first.eof() || count != m) {
      parse_fail("solver output: first line should hold " + std::to_string(m) + " dual values");
    }
  }
  for (std::size_t n = 1; n < lines.size(); ++n) {
    std::istringstream row(lines[n]);
    long matno = 0;
    long block = 0;
    long i = 0;
    long j = 0;
    double value = 0;
    std::string extra;
    if (!(row >> matno >> block >> i >> j >> value) || (row >> extra)) {
      parse_fail("solver output: malformed line " + std::to_string(n + 1) + ": '" + lines[n] + "'");
    }
    if (!std::isfinite(value)) {
      parse_fail("solver output: non-finite value on line " + std::to_string(n + 1));
    }
    if (matno != 2) {
      continue;
    }
    if (block < 1 || static_cast<std::size_t>(block) > blocks + 1) {
      throw FlagError(FlagError::Kind::DimensionMismatch, "solver output: block " + std::to_string(block) +
                                                              " does not exist");
    }
    const auto b = static_cast<std::size_t>(block - 1);
    if (b == blocks) {
      if (i != j || i < 1 || static_cast<std::size_t>(i) > m + 1) {
        throw FlagError(FlagError::Kind::DimensionMismatch, "solver output: bad diagonal-block entry on line " +
                                                                std::to_string(n + 1));
      }
      if (static_cast<std::size_t>(i) == m + 1) {
        sol.c_float = value;
        saw_bound = true;
      } else {
        sol.slacks[static_cast<std::size_t>(i - 1)] = value;
      }
      continue;
    }
    const std::size_t dim = problem.block_sizes[b];
    if (i < 1 || j < 1 || static_cast<std::size_t>(i) > dim || static_cast<std::size_t>(j) > dim) {
      throw FlagError(FlagError::Kind::DimensionMismatch, "solver output: index (" + std::to_string(i) + "," +
                                                              std::to_string(j) + ") outside block " +
                                                              std::to_string(block) + " of size " + std::to_string(dim));
    }
    values[b](static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = value;
    given[b](static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = 1;
  }
  if (!saw_bound && m > 0) {
    parse_fail("solver output: no value for the bound variable");
  }
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t dim = problem.block_sizes[b];
    DoubleMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      out(i, i) = values[b](i, i);
      for (std::size_t j = i + 1; j < dim; ++j) {
        const bool upper = given[b](i, j) != 0;
        const bool lower = given[b](j, i) != 0;
        double v = 0.0;
        if (upper && lower) {
          v = 0.5 * (values[b](i, j) + values[b](j, i));
        } else if (upper) {
          v = values[b](i, j);
        } else if (lower) {
          v = values[b](j, i);
        }
        out(i, j) = v;
        out(j, i) = v;
      }
    }
    sol.matrices.push_back(std::move(out));
  }
  return sol;
}

}  // namespace flagcert
