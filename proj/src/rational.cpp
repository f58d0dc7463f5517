#include "flatlab/rational.hpp"

#include <cctype>
#include <cstdio>

namespace flatlab {

namespace {

BigInt parse_integer(const std::string& text, const std::string& full) {
  if (text.empty()) {
    throw InputError("empty integer in rational '" + full + "'");
  }
  const bool negative = text[0] == '-';
  std::size_t i = (text[0] == '+' || negative) ? 1 : 0;
  if (i == text.size()) {
    throw InputError("sign without digits in rational '" + full + "'");
  }
  const std::size_t digits = i;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw InputError("invalid character '" + std::string(1, text[i]) +
                       "' in rational '" + full + "'");
    }
  }
  // The BigInt constructor does not accept a leading '+'.
  BigInt value(text.substr(digits));
  return negative ? BigInt(-value) : value;
}

std::string trimmed(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return text.substr(b, e - b);
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string t = trimmed(text);
  if (t.empty()) throw InputError("empty rational");
  const auto slash = t.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(t, t));
  }
  if (t.find('/', slash + 1) != std::string::npos) {
    throw InputError("multiple '/' in rational '" + t + "'");
  }
  const BigInt num = parse_integer(t.substr(0, slash), t);
  const BigInt den = parse_integer(t.substr(slash + 1), t);
  if (den == 0) throw InputError("zero denominator in rational '" + t + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

double to_double_scalar(const Rational& q) { return to_double(q); }

bool is_perfect_square(const Rational& q) {
  if (q < 0) return false;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = boost::multiprecision::sqrt(num);
  if (rn * rn != num) return false;
  const BigInt rd = boost::multiprecision::sqrt(den);
  return rd * rd == den;
}

Rational exact_sqrt(const Rational& q) {
  if (q < 0) throw InputError("square root of negative rational");
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) {
    throw InputError("rational " + format_rational(q) +
                     " is not a perfect square");
  }
  return Rational(rn, rd);
}

std::string ScalarOps<double>::str(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace flatlab
