#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace veronese {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Fixed-precision binary floating point used wherever `long double` is not
/// enough. Expression templates are off so `auto` is always a value.
template <unsigned Bits>
using BinFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<Bits, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

using HighFloat = BinFloat<1024>;

using IntVector = std::vector<BigInt>;

BigInt ipow(const BigInt& base, unsigned exponent);
Rational ipow(const Rational& base, int exponent);

BigInt abs(const BigInt& v);
BigInt gcd(const BigInt& a, const BigInt& b);

/// Extended Euclid: returns g = gcd(a, b) >= 0 with s*a + t*b == g.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t);

/// Floor of the k-th root of a non-negative integer.
BigInt iroot_floor(const BigInt& v, unsigned k);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

/// Parses an optionally signed decimal integer. Throws InvalidInput.
BigInt parse_bigint(std::string_view text);

/// Parses "p", "p/q" or a finite decimal literal such as "-0.125" exactly.
Rational parse_rational(std::string_view text);

double to_double(const BigInt& v);
double to_double(const Rational& v);
long double to_long_double(const BigInt& v);

/// Largest |v_i|; zero for an empty vector.
BigInt max_abs(const IntVector& v);

BigInt dot(const IntVector& a, const IntVector& b);

/// True iff v fits in int64_t.
bool fits_int64(const BigInt& v);

}  // namespace veronese
