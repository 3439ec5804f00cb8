#include "veronese/bigint.hpp"

#include <cctype>
#include <limits>

#include "veronese/errors.hpp"

namespace veronese {

BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Rational ipow(const Rational& base, int exponent) {
  if (exponent == 0) return Rational(1);
  if (exponent < 0) {
    if (base == 0) throw InvalidInput("zero raised to a negative power");
    return ipow(Rational(1) / base, -exponent);
  }
  BigInt num = boost::multiprecision::numerator(base);
  BigInt den = boost::multiprecision::denominator(base);
  return Rational(ipow(num, static_cast<unsigned>(exponent)),
                  ipow(den, static_cast<unsigned>(exponent)));
}

BigInt abs(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, cur_s = 0;
  BigInt old_t = 0, cur_t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

BigInt iroot_floor(const BigInt& v, unsigned k) {
  if (v < 0) throw InvalidInput("iroot_floor of a negative integer");
  if (k == 0) throw InvalidInput("iroot_floor with k = 0");
  if (v < 2 || k == 1) return v;
  // Newton iteration from an upper bound.
  unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(v)) + 1;
  BigInt x = BigInt(1) << ((bits + k - 1) / k);
  while (true) {
    BigInt y = ((k - 1) * x + v / ipow(x, k - 1)) / k;
    if (y >= x) break;
    x = y;
  }
  while (ipow(x, k) > v) --x;
  while (ipow(x + 1, k) <= v) ++x;
  return x;
}

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return boost::multiprecision::numerator(v).str();
  return boost::multiprecision::numerator(v).str() + "/" + den.str();
}

BigInt parse_bigint(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) throw InvalidInput("empty integer literal");
  BigInt result = 0;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidInput("malformed integer literal: " + std::string(text));
    }
    result = result * 10 + (c - '0');
  }
  return negative ? BigInt(-result) : result;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    BigInt num = parse_bigint(text.substr(0, slash));
    BigInt den = parse_bigint(text.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator in " + std::string(text));
    return Rational(num, den);
  }
  auto dot_pos = text.find('.');
  if (dot_pos == std::string_view::npos) return Rational(parse_bigint(text));
  std::string digits(text.substr(0, dot_pos));
  std::string frac(text.substr(dot_pos + 1));
  if (frac.empty() && (digits.empty() || digits == "-" || digits == "+")) {
    throw InvalidInput("malformed decimal literal: " + std::string(text));
  }
  bool negative = !digits.empty() && digits[0] == '-';
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.erase(0, 1);
  if (digits.empty()) digits = "0";
  BigInt whole = parse_bigint(digits);
  BigInt scale = ipow(BigInt(10), static_cast<unsigned>(frac.size()));
  BigInt fpart = frac.empty() ? BigInt(0) : parse_bigint(frac);
  if (!frac.empty() && (frac[0] == '-' || frac[0] == '+')) {
    throw InvalidInput("malformed decimal literal: " + std::string(text));
  }
  Rational r(whole * scale + fpart, scale);
  return negative ? Rational(-r) : r;
}

double to_double(const BigInt& v) { return v.convert_to<double>(); }

double to_double(const Rational& v) { return v.convert_to<double>(); }

long double to_long_double(const BigInt& v) { return v.convert_to<long double>(); }

BigInt max_abs(const IntVector& v) {
  BigInt m = 0;
  for (const auto& x : v) {
    BigInt a = abs(x);
    if (a > m) m = a;
  }
  return m;
}

BigInt dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: length mismatch");
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool fits_int64(const BigInt& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace veronese
