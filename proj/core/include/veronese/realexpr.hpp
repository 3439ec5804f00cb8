#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "veronese/bigint.hpp"
#include "veronese/mobius.hpp"

namespace veronese {

/// A real number given by a small expression language:
///   integers, decimals ("1.25", "1e6"), rationals via "/",
///   + - * / ^ and parentheses, sqrt(x), cbrt(x), root(x, k), pi,
///   liouville(K) = sum_{k=1..K} 10^(-k!).
/// Values are exact rationals whenever every operation allows it and are
/// otherwise evaluated with 1024-bit binary floats.
class RealExpr {
 public:
  struct Node;

  RealExpr();
  explicit RealExpr(const Rational& value);

  static RealExpr parse(std::string_view text);

  /// Exact value when the expression is rational.
  const std::optional<Rational>& exact() const;
  const HighFloat& value() const;
  double approx() const;
  const std::string& text() const;

  /// (a x + b) / (c x + d) as a new expression. Throws on an exact pole.
  RealExpr mobius(const Mat2& B) const;

 private:
  RealExpr(std::shared_ptr<const Node> node, std::string text);
  std::shared_ptr<const Node> node_;
  std::string text_;
};

}  // namespace veronese
