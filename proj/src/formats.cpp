#include "flagcert/formats.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace flagcert {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw FlagError(FlagError::Kind::Parse, what); }

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) {
    out.push_back(tok);
  }
  return out;
}

std::uint64_t parse_unsigned(const std::string& tok) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
    parse_fail("expected a non-negative integer, found '" + tok + "'");
  }
  try {
    return std::stoull(tok);
  } catch (const std::exception&) {
    parse_fail("integer '" + tok + "' is out of range");
  }
}

// Parses "<name> v1 index-base 0 denominator D ..." and returns D.
std::uint64_t native_header(const std::vector<std::string>& lines, std::string_view name) {
  if (lines.empty()) {
    parse_fail(std::string(name) + " file is empty");
  }
  const std::vector<std::string> head = tokens(lines[0]);
  if (head.size() < 2 || head[0] != name) {
    parse_fail("expected a '" + std::string(name) + "' header");
  }
  if (head[1] != "v1") {
    throw FlagError(FlagError::Kind::Version, "unsupported " + std::string(name) + " version '" + head[1] + "'");
  }
  std::uint64_t denominator = 0;
  for (std::size_t i = 2; i + 1 < head.size(); i += 2) {
    if (head[i] == "index-base" && head[i + 1] != "0") {
      parse_fail("native files are 0-based");
    }
    if (head[i] == "denominator") {
      denominator = parse_unsigned(head[i + 1]);
    }
  }
  return denominator;
}

std::string native_header_line(std::string_view name, std::uint64_t denominator) {
  return std::string(name) + " v1 index-base 0 denominator " + std::to_string(denominator) + "\n";
}

std::uint32_t base_of(FileFormat format) { return format == FileFormat::Paper ? 1U : 0U; }

}  // namespace

std::string write_flag_list(const FlagBasis& basis, FileFormat format) {
  std::ostringstream out;
  if (format == FileFormat::Native) {
    out << "flags v1 index-base 0 order " << basis.size() << " type-order " << basis.type_order() << " count "
        << basis.count() << "\n";
  } else {
    out << basis.count() << "\n";
  }
  for (const Flag& f : basis.flags()) {
    out << f.graph().upper_triangle() << "\n";
  }
  return out.str();
}

std::vector<Graph> read_flag_list(std::string_view text, int order, FileFormat format) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) {
    parse_fail("flag list is empty");
  }
  std::uint64_t count = 0;
  if (format == FileFormat::Native) {
    const std::vector<std::string> head = tokens(lines[0]);
    if (head.size() < 2 || head[0] != "flags") {
      parse_fail("expected a 'flags' header");
    }
    if (head[1] != "v1") {
      throw FlagError(FlagError::Kind::Version, "unsupported flags version '" + head[1] + "'");
    }
    bool have_count = false;
    for (std::size_t i = 2; i + 1 < head.size(); i += 2) {
      if (head[i] == "count") {
        count = parse_unsigned(head[i + 1]);
        have_count = true;
      } else if (head[i] == "order" && parse_unsigned(head[i + 1]) != static_cast<std::uint64_t>(order)) {
        parse_fail("flag list has order " + head[i + 1] + ", expected " + std::to_string(order));
      }
    }
    if (!have_count) {
      parse_fail("flag list header has no count");
    }
  } else {
    const std::vector<std::string> head = tokens(lines[0]);
    if (head.size() != 1) {
      parse_fail("first line of a flag list must be the flag count");
    }
    count = parse_unsigned(head[0]);
  }
  if (order <= 1) {
    // Such flags have no adjacency bits, so their lines are empty.
    return std::vector<Graph>(count, Graph(order));
  }
  if (lines.size() - 1 != count) {
    parse_fail("flag list announces " + std::to_string(count) + " flags but holds " +
               std::to_string(lines.size() - 1));
  }
  std::vector<Graph> out;
  out.reserve(count);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> tok = tokens(lines[i]);
    if (tok.size() != 1) {
      parse_fail("flag line " + std::to_string(i + 1) + " should be a single bitstring");
    }
    out.push_back(Graph::from_upper_triangle(tok[0], order));
  }
  return out;
}

std::string write_products(const ProductTable& table, FileFormat format) {
  std::ostringstream out;
  if (format == FileFormat::Native) {
    out << native_header_line("products", table.denominator());
  }
  const std::uint32_t base = base_of(format);
  for (const ProductEntry& e : table.entries()) {
    out << e.target + base << " " << e.left + base << " " << e.right + base << " " << e.count << "\n";
  }
  return out.str();
}

CoefficientFile read_coefficients(std::string_view text, FileFormat format, std::uint64_t denominator) {
  std::vector<std::string> lines = split_lines(text);
  CoefficientFile out;
  std::size_t first = 0;
  if (format == FileFormat::Native) {
    if (lines.empty()) {
      parse_fail("coefficient file is empty");
    }
    const std::string name = tokens(lines[0]).empty() ? "" : tokens(lines[0])[0];
    if (name != "products" && name != "averaged-products") {
      parse_fail("expected a 'products' or 'averaged-products' header");
    }
    out.denominator = native_header(lines, name);
    first = 1;
  } else {
    out.denominator = denominator;
  }
  const std::uint32_t base = base_of(format);
  for (std::size_t i = first; i < lines.size(); ++i) {
    const std::vector<std::string> tok = tokens(lines[i]);
    if (tok.size() != 4) {
      parse_fail("coefficient line " + std::to_string(i + 1) + " must have four columns");
    }
    CoefficientRecord r{};
    const std::uint64_t a = parse_unsigned(tok[0]);
    const std::uint64_t b = parse_unsigned(tok[1]);
    const std::uint64_t c = parse_unsigned(tok[2]);
    if (a < base || b < base || c < base) {
      parse_fail("index 0 in a 1-based file on line " + std::to_string(i + 1));
    }
    r.a = static_cast<std::uint32_t>(a - base);
    r.b = static_cast<std::uint32_t>(b - base);
    r.c = static_cast<std::uint32_t>(c - base);
    r.numerator = parse_unsigned(tok[3]);
    out.records.push_back(r);
  }
  return out;
}

std::string write_averaging(const AveragingMap& avg, FileFormat format) {
  std::ostringstream out;
  if (format == FileFormat::Native) {
    out << native_header_line("averaging", avg.denominator());
  }
  const std::uint32_t base = base_of(format);
  for (std::size_t i = 0; i < avg.rows().size(); ++i) {
    out << i + base << " " << avg.rows()[i].zero_index + base << " " << avg.rows()[i].count << "\n";
  }
  return out.str();
}

AveragingFile read_averaging(std::string_view text, FileFormat format, std::uint64_t denominator) {
  const std::vector<std::string> lines = split_lines(text);
  AveragingFile out;
  std::size_t first = 0;
  if (format == FileFormat::Native) {
    out.denominator = native_header(lines, "averaging");
    first = 1;
  } else {
    out.denominator = denominator;
  }
  const std::uint32_t base = base_of(format);
  for (std::size_t i = first; i < lines.size(); ++i) {
    const std::vector<std::string> tok = tokens(lines[i]);
    if (tok.size() != 3) {
      parse_fail("averaging line " + std::to_string(i + 1) + " must have three columns");
    }
    const std::uint64_t a = parse_unsigned(tok[0]);
    const std::uint64_t b = parse_unsigned(tok[1]);
    if (a < base || b < base) {
      parse_fail("index 0 in a 1-based file on line " + std::to_string(i + 1));
    }
    out.records.push_back(
        {static_cast<std::uint32_t>(a - base), static_cast<std::uint32_t>(b - base), parse_unsigned(tok[2])});
  }
  return out;
}

std::string write_averaged_products(const ProductTable& table, const AveragingMap& avg, FileFormat format,
                                    SpIndexing indexing) {
  const std::uint64_t denominator = std::uint64_t{table.denominator()} * avg.denominator();
  std::ostringstream out;
  if (format == FileFormat::Native) {
    out << "averaged-products v1 index-base 0 denominator " << denominator << " column-a "
        << (indexing == SpIndexing::ZeroFlag ? "zero" : "sigma") << "\n";
  }
  const std::uint32_t base = base_of(format);
  if (indexing == SpIndexing::ZeroFlag) {
    for (const AveragedEntry& e : averaged_products(table, avg)) {
      out << e.zero + base << " " << e.left + base << " " << e.right + base << " " << e.count << "\n";
    }
  } else {
    for (const ProductEntry& e : table.entries()) {
      out << e.target + base << " " << e.left + base << " " << e.right + base << " "
          << std::uint64_t{avg.rows()[e.target].count} * e.count << "\n";
    }
  }
  return out.str();
}

std::string write_objective(const FlagVector& objective, int t, FileFormat format) {
  const mpz_class denominator = binomial(objective.basis->size(), t);
  std::ostringstream out;
  if (format == FileFormat::Native) {
    out << "objective v1 index-base 0 denominator " << denominator.get_str() << " t " << t << "\n";
  }
  for (const Rational& w : objective.coeffs) {
    const Rational scaled = w * denominator;
    if (scaled.get_den() != 1) {
      throw FlagError(FlagError::Kind::DimensionMismatch, "objective entry does not fit the common denominator");
    }
    out << scaled.get_num().get_str() << "\n";
  }
  return out.str();
}

std::vector<Rational> read_objective(std::string_view text, int t, int large_size, FileFormat format) {
  const std::vector<std::string> lines = split_lines(text);
  std::size_t first = 0;
  mpz_class denominator = binomial(large_size, t);
  if (format == FileFormat::Native) {
    denominator = mpz_class(std::to_string(native_header(lines, "objective")));
    first = 1;
  }
  if (denominator == 0) {
    parse_fail("objective denominator is zero");
  }
  std::vector<Rational> out;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const std::vector<std::string> tok = tokens(lines[i]);
    if (tok.size() != 1) {
      parse_fail("objective line " + std::to_string(i + 1) + " must hold one numerator");
    }
    out.push_back(make_rational(mpz_class(std::to_string(parse_unsigned(tok[0]))), denominator));
  }
  return out;
}

std::string write_matrix_csv(const RationalMatrix& m, const mpz_class& denominator) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Rational scaled = m(i, j) * denominator;
      if (scaled.get_den() != 1) {
        throw FlagError(FlagError::Kind::DimensionMismatch, "matrix entry does not fit the common denominator");
      }
      out << (j ? "," : "") << scaled.get_num().get_str();
    }
    out << "\n";
  }
  return out.str();
}

RationalMatrix read_matrix_csv(std::string_view text, const mpz_class& denominator) {
  const std::vector<std::string> lines = split_lines(text);
  std::vector<std::vector<Rational>> rows;
  for (const std::string& line : lines) {
    std::vector<Rational> row;
    std::stringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos) {
        parse_fail("empty CSV cell");
      }
      row.push_back(parse_rational(cell.substr(b, e - b + 1)) / denominator);
    }
    rows.push_back(std::move(row));
  }
  RationalMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      parse_fail("CSV matrix is not square: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                 " entries");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

mpz_class read_denominator(std::string_view text) {
  const std::vector<std::string> lines = split_lines(text);
  if (lines.size() != 1 || tokens(lines[0]).size() != 1) {
    parse_fail("denominator file must hold a single integer");
  }
  const mpz_class d(std::to_string(parse_unsigned(tokens(lines[0])[0])));
  if (d == 0) {
    parse_fail("denominator is zero");
  }
  return d;
}

mpz_class common_denominator(const std::vector<RationalMatrix>& matrices) {
  mpz_class lcm = 1;
  for (const RationalMatrix& m : matrices) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
      }
    }
  }
  return lcm;
}

std::string write_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "flagcert v1\n";
  out << "t " << cert.t << "\n";
  out << "s " << cert.s << "\n";
  out << "l1 " << cert.small_size << "\n";
  out << "types " << cert.types.size() << "\n";
  for (const TypeGraph& type : cert.types) {
    out << "type";
    for (const auto& [u, v] : type.graph.edges()) {
      out << " " << u + 1 << "-" << v + 1;
    }
    out << "\n";
  }
  for (const RationalMatrix& m : cert.matrices) {
    out << "matrix " << m.rows() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        out << (j ? " " : "") << to_fraction_string(m(i, j));
      }
      out << "\n";
    }
  }
  out << "bound " << to_fraction_string(cert.bound) << "\n";
  return out.str();
}

namespace {

class CertificateReader {
 public:
  explicit CertificateReader(std::string_view text) : lines_(split_lines(text)) {}

  Certificate read() {
    const std::vector<std::string> head = next("header");
    if (head.size() != 2 || head[0] != "flagcert") {
      parse_fail("not a certificate: missing 'flagcert' header");
    }
    if (head[1] != "v1") {
      throw FlagError(FlagError::Kind::Version, "unsupported certificate version '" + head[1] + "'");
    }
    Certificate cert;
    cert.t = keyed_int("t");
    cert.s = keyed_int("s");
    cert.small_size = keyed_int("l1");
    const int type_count = keyed_int("types");
    if (cert.s < 0 || cert.s > Graph::kMaxVertices) {
      parse_fail("type order s = " + std::to_string(cert.s) + " is out of range");
    }
    for (int i = 0; i < type_count; ++i) {
      const std::vector<std::string> tok = next("type");
      if (tok.empty() || tok[0] != "type") {
        parse_fail("line " + std::to_string(pos_) + ": expected 'type'");
      }
      Graph g(cert.s);
      for (std::size_t k = 1; k < tok.size(); ++k) {
        const auto dash = tok[k].find('-');
        if (dash == std::string::npos) {
          parse_fail("line " + std::to_string(pos_) + ": edge '" + tok[k] + "' is not of the form u-v");
        }
        const auto u = parse_unsigned(tok[k].substr(0, dash));
        const auto v = parse_unsigned(tok[k].substr(dash + 1));
        if (u < 1 || v < 1) {
          parse_fail("line " + std::to_string(pos_) + ": type vertices are 1-based");
        }
        try {
          g.add_edge(static_cast<int>(u - 1), static_cast<int>(v - 1));
        } catch (const FlagError& e) {
          parse_fail("line " + std::to_string(pos_) + ": " + e.what());
        }
      }
      cert.types.emplace_back(g);
    }
    for (int i = 0; i < type_count; ++i) {
      const std::vector<std::string> tok = next("matrix");
      if (tok.size() != 2 || tok[0] != "matrix") {
        parse_fail("line " + std::to_string(pos_) + ": expected 'matrix <dimension>'");
      }
      const auto dim = static_cast<std::size_t>(parse_unsigned(tok[1]));
      if (dim > 100000) {
        parse_fail("line " + std::to_string(pos_) + ": implausible matrix dimension");
      }
      RationalMatrix m(dim, dim);
      for (std::size_t r = 0; r < dim; ++r) {
        const std::vector<std::string> row = next("matrix row");
        if (row.size() != dim) {
          parse_fail("line " + std::to_string(pos_) + ": expected " + std::to_string(dim) + " entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
          m(r, c) = parse_rational(row[c]);
        }
      }
      cert.matrices.push_back(std::move(m));
    }
    const std::vector<std::string> bound = next("bound");
    if (bound.size() != 2 || bound[0] != "bound") {
      parse_fail("line " + std::to_string(pos_) + ": expected 'bound p/q'");
    }
    cert.bound = parse_rational(bound[1]);
    if (pos_ != lines_.size()) {
      parse_fail("unexpected content after the bound line");
    }
    return cert;
  }

 private:
  std::vector<std::string> next(const std::string& what) {
    if (pos_ >= lines_.size()) {
      parse_fail("certificate ends early: expected " + what);
    }
    return tokens(lines_[pos_++]);
  }

  int keyed_int(const std::string& key) {
    const std::vector<std::string> tok = next(key);
    if (tok.size() != 2 || tok[0] != key) {
      parse_fail("line " + std::to_string(pos_) + ": expected '" + key + " <integer>'");
    }
    const std::uint64_t v = parse_unsigned(tok[1]);
    if (v > 1000) {
      parse_fail("line " + std::to_string(pos_) + ": value of " + key + " is out of range");
    }
    return static_cast<int>(v);
  }

  std::vector<std::string> lines_;
  std::size_t pos_ = 0;
};

}  // namespace

Certificate read_certificate(std::string_view text) { return CertificateReader(text).read(); }

Certificate certificate_from_foreign_order(int t, int s, int small_size,
                                           const std::vector<std::vector<Graph>>& flag_lists,
                                           const std::vector<RationalMatrix>& matrices,
                                           const Rational& claimed_bound) {
  if (flag_lists.size() != matrices.size()) {
    throw FlagError(FlagError::Kind::DimensionMismatch, "one flag list is needed per matrix");
  }
  Certificate cert;
  cert.t = t;
  cert.s = s;
  cert.small_size = small_size;
  cert.bound = claimed_bound;
  std::vector<int> roots(static_cast<std::size_t>(s));
  std::iota(roots.begin(), roots.end(), 0);
  for (std::size_t i = 0; i < flag_lists.size(); ++i) {
    const std::vector<Graph>& list = flag_lists[i];
    if (list.empty()) {
      throw FlagError(FlagError::Kind::DimensionMismatch, "flag list " + std::to_string(i + 1) + " is empty");
    }
    const TypeGraph type(list.front().induced(std::span<const int>(roots)));
    const FlagBasisPtr basis = enumerate_flags(type, small_size);
    const RationalMatrix& foreign = matrices[i];
    if (list.size() != basis->count() || foreign.rows() != list.size() || foreign.cols() != list.size()) {
      throw FlagError(FlagError::Kind::DimensionMismatch,
                      "type " + std::to_string(i + 1) + ": " + std::to_string(list.size()) + " flags and a " +
                          std::to_string(foreign.rows()) + "x" + std::to_string(foreign.cols()) + " matrix, expected " +
                          std::to_string(basis->count()));
    }
    std::vector<std::size_t> position(list.size());
    std::vector<bool> hit(list.size(), false);
    for (std::size_t a = 0; a < list.size(); ++a) {
      const Flag flag(list[a], roots, type);
      position[a] = basis->index_of(flag);
      if (hit[position[a]]) {
        throw FlagError(FlagError::Kind::DimensionMismatch,
                        "type " + std::to_string(i + 1) + ": flag " + std::to_string(a + 1) + " is listed twice");
      }
      hit[position[a]] = true;
    }
    RationalMatrix ours(list.size(), list.size());
    for (std::size_t a = 0; a < list.size(); ++a) {
      for (std::size_t b = 0; b < list.size(); ++b) {
        ours(position[a], position[b]) = foreign(a, b);
      }
    }
    cert.types.push_back(type);
    cert.matrices.push_back(std::move(ours));
  }
  return cert;
}

}  // namespace flagcert
