#include "json_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace veronese::cli {

namespace {

const BigInt safe_limit = BigInt(1) << 53;

BigInt element(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    try {
      return parse_bigint(v.get<std::string>());
    } catch (const std::exception& e) {
      throw UsageError("not an integer: " + v.dump());
    }
  }
  throw UsageError("not an integer: " + v.dump());
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json to_json(const BigInt& v) {
  if (abs(v) < safe_limit) return static_cast<long long>(v);
  return to_string(v);
}

json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const IntPoly& p) { return p.is_zero() ? json::array({0}) : to_json(p.coeffs()); }

json to_json(const Mat2& B) { return json::array({to_json(B.a), to_json(B.b), to_json(B.c), to_json(B.d)}); }

json to_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.row(i)));
  return out;
}

json to_json(const Rational& v) {
  if (denominator(v) == 1) return to_json(numerator(v));
  return to_string(v);
}

json to_json(const ScaledRational& v) { return v.to_string(); }

json real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

IntVector parse_int_vector(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    throw UsageError("expected a JSON array of integers, got '" + text + "'");
  }
  if (!doc.is_array()) throw UsageError("expected a JSON array of integers, got '" + text + "'");
  IntVector out;
  for (const auto& v : doc) out.push_back(element(v));
  return out;
}

IntPoly parse_poly(const std::string& text) { return IntPoly(parse_int_vector(text)); }

Mat2 parse_mat(const std::string& text) {
  const auto v = parse_int_vector(text);
  if (v.size() != 4) throw UsageError("a matrix is written [a, b, c, d]");
  return Mat2{v[0], v[1], v[2], v[3]};
}

long long parse_count(const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("expected a positive integer, got '" + text + "'");
  }
  if (used != text.size() || !(v >= 1) || v != std::floor(v) || v > 9e15)
    throw UsageError("expected a positive integer, got '" + text + "'");
  return static_cast<long long>(v);
}

Rational parse_fraction(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError("expected a rational like 3/4, got '" + text + "'");
  }
}

void Emitter::emit(const json& record) {
  if (format_ == Format::jsonl) {
    out_ << record.dump() << '\n';
  } else {
    rows_.push_back(record);
  }
}

void Emitter::finish() {
  if (format_ == Format::csv) out_ << to_csv(rows_);
  rows_.clear();
  out_.flush();
}

std::string to_csv(const std::vector<json>& rows) {
  std::vector<std::string> columns;
  for (const auto& r : rows)
    for (const auto& [key, value] : r.items())
      if (std::find(columns.begin(), columns.end(), key) == columns.end()) columns.push_back(key);
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_cell(columns[i]);
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      if (r.contains(columns[i])) out += csv_cell(r.at(columns[i]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace veronese::cli
