#include "vill/rational.hpp"

#include "vill/errors.hpp"

#include <cctype>

namespace vill {

Int numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
Int denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) throw config_error("not a rational: '" + text + "'");
    return Rational(Int(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw config_error("not a rational: '" + text + "'");
  Int d(den);
  if (d == 0) throw config_error("zero denominator in '" + text + "'");
  return Rational(Int(num), d);
}

std::string format_rational(const Rational& r) { return r.str(); }

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

Int rational_ceil(const Rational& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;  // truncates toward zero
  if (n > 0 && q * d != n) q += 1;
  return q;
}

Rational pow2_inverse(unsigned i) {
  Int d = 1;
  d <<= i;
  return Rational(Int(1), d);
}

}  // namespace vill
