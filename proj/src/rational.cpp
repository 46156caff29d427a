#include "bell/rational.hpp"

#include <cctype>
#include <cmath>

#include "bell/errors.hpp"

namespace bell {

Rational exact_rational(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot convert non-finite value to a rational");
  Rational r(value);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  if (s.empty()) throw InvalidArgument("empty rational");
  const auto bad = [&] { return InvalidArgument("malformed rational '" + s + "'"); };

  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw bad();
    r.canonicalize();
    return r;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  std::size_t frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      frac_digits += seen_point;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  mpz_class numerator(digits, 10);
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), 10, frac_digits);
  Rational r(negative ? mpz_class(-numerator) : numerator, denominator);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

}  // namespace bell
