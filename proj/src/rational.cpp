#include "flagcert/rational.hpp"

#include <array>
#include <charconv>
#include <cctype>

namespace flagcert {

Rational make_rational(long num, long den) {
  if (den == 0) {
    throw FlagError(FlagError::Kind::Parse, "zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) {
    throw FlagError(FlagError::Kind::Parse, "zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    pos = 1;
  }
  if (pos == text.size()) {
    throw FlagError(FlagError::Kind::Parse, "malformed rational '" + std::string(whole) + "'");
  }
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(text[i])) == 0) {
      throw FlagError(FlagError::Kind::Parse, "malformed rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text));
  }
  const mpz_class num = parse_integer(text.substr(0, slash), text);
  const mpz_class den = parse_integer(text.substr(slash + 1), text);
  return make_rational(num, den);
}

std::string to_decimal_string(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

std::string to_decimal_string(const Rational& r) { return to_decimal_string(r.get_d()); }

bool denominator_divides(const Rational& r, long den) {
  return mpz_divisible_p(mpz_class(den).get_mpz_t(), r.get_den().get_mpz_t()) != 0;
}

mpz_class binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) {
    return 0;
  }
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace flagcert
