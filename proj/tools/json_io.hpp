#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "veronese/intmat.hpp"
#include "veronese/lattice.hpp"
#include "veronese/mobius.hpp"
#include "veronese/polyarith.hpp"

namespace veronese::cli {

using json = nlohmann::ordered_json;

/// Bad command-line value; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integers beyond 2^53 become decimal strings.
json to_json(const BigInt& v);
json to_json(const IntVector& v);
json to_json(const IntPoly& p);
json to_json(const Mat2& B);
json to_json(const IntMatrix& m);
json to_json(const Rational& v);
json to_json(const ScaledRational& v);
/// NaN and infinities as "nan", "inf", "-inf".
json real(double v);

/// "[1, -2, \"123456789012345678901\"]"
IntVector parse_int_vector(const std::string& text);
/// Coefficients from c0 upward.
IntPoly parse_poly(const std::string& text);
/// "[a, b, c, d]"
Mat2 parse_mat(const std::string& text);
/// Positive integer, also written as 1e6.
long long parse_count(const std::string& text);
Rational parse_fraction(const std::string& text);

enum class Format { jsonl, csv };

/// Streams JSON lines, or buffers rows and writes one CSV table at the end.
class Emitter {
 public:
  Emitter(std::ostream& out, Format format) : out_(out), format_(format) {}
  void emit(const json& record);
  void finish();

 private:
  std::ostream& out_;
  Format format_;
  std::vector<json> rows_;
};

std::string to_csv(const std::vector<json>& rows);

}  // namespace veronese::cli
