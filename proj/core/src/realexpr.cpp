#include "veronese/realexpr.hpp"

#include <boost/math/constants/constants.hpp>
#include <cctype>
#include <cmath>

#include "veronese/errors.hpp"

namespace veronese {

struct RealExpr::Node {
  std::optional<Rational> exact;
  HighFloat value;
};

namespace {

using NodePtr = std::shared_ptr<const RealExpr::Node>;

NodePtr make_exact(const Rational& r) {
  auto n = std::make_shared<RealExpr::Node>();
  n->exact = r;
  n->value = HighFloat(boost::multiprecision::numerator(r)) / HighFloat(boost::multiprecision::denominator(r));
  return n;
}

NodePtr make_float(const HighFloat& v) {
  auto n = std::make_shared<RealExpr::Node>();
  n->value = v;
  return n;
}

HighFloat kth_root(const HighFloat& x, long long k) {
  if (k < 1) throw InvalidInput("root: index must be positive");
  if (x == 0) return x;
  const bool negative = x < 0;
  if (negative && k % 2 == 0) throw InvalidInput("root: even root of a negative number");
  const HighFloat a = negative ? HighFloat(-x) : x;
  HighFloat y = boost::multiprecision::pow(a, HighFloat(1) / HighFloat(k));
  for (int it = 0; it < 4; ++it) {
    HighFloat yk1 = boost::multiprecision::pow(y, static_cast<int>(k - 1));
    y = ((k - 1) * y + a / yk1) / k;
  }
  return negative ? HighFloat(-y) : y;
}

// Exact k-th root of a rational when it exists.
std::optional<Rational> exact_root(const Rational& r, long long k) {
  if (r < 0 && k % 2 == 0) return std::nullopt;
  const bool negative = r < 0;
  BigInt num = abs(BigInt(boost::multiprecision::numerator(r)));
  BigInt den = boost::multiprecision::denominator(r);
  const auto uk = static_cast<unsigned>(k);
  BigInt rn = iroot_floor(num, uk), rd = iroot_floor(den, uk);
  if (ipow(rn, uk) != num || ipow(rd, uk) != den) return std::nullopt;
  Rational out(rn, rd);
  return negative ? Rational(-out) : out;
}

NodePtr apply_root(const NodePtr& x, long long k) {
  if (x->exact)
    if (auto r = exact_root(*x->exact, k)) return make_exact(*r);
  return make_float(kth_root(x->value, k));
}

Rational liouville(long long terms) {
  if (terms < 1 || terms > 7) throw InvalidInput("liouville: number of terms must be in [1, 7]");
  Rational s = 0;
  long long f = 1;
  for (long long k = 1; k <= terms; ++k) {
    f *= k;
    s += Rational(BigInt(1), ipow(BigInt(10), static_cast<unsigned>(f)));
  }
  return s;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidInput("expression \"" + std::string(s_) + "\": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (eat('+')) {
        left = add(left, term(), 1);
      } else if (eat('-')) {
        left = add(left, term(), -1);
      } else {
        return left;
      }
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (eat('*')) {
        NodePtr r = unary();
        if (left->exact && r->exact) left = make_exact(*left->exact * *r->exact);
        else left = make_float(left->value * r->value);
      } else if (eat('/')) {
        NodePtr r = unary();
        if (r->exact ? *r->exact == 0 : r->value == 0) fail("division by zero");
        if (left->exact && r->exact) left = make_exact(*left->exact / *r->exact);
        else left = make_float(left->value / r->value);
      } else {
        return left;
      }
    }
  }

  NodePtr unary() {
    if (eat('-')) {
      NodePtr x = unary();
      return x->exact ? make_exact(-*x->exact) : make_float(-x->value);
    }
    if (eat('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (!eat('^')) return base;
    NodePtr e = unary();
    if (e->exact) {
      const Rational q = *e->exact;
      const BigInt num = boost::multiprecision::numerator(q);
      const BigInt den = boost::multiprecision::denominator(q);
      if (abs(num) <= 10000 && den <= 10000) {
        const int p = static_cast<int>(num);
        NodePtr rooted = den == 1 ? base : apply_root(base, static_cast<long long>(den));
        if (rooted->exact) {
          if (*rooted->exact == 0 && p < 0) fail("zero to a negative power");
          return make_exact(ipow(*rooted->exact, p));
        }
        return make_float(boost::multiprecision::pow(rooted->value, p));
      }
    }
    if (base->value <= 0) fail("non-integer power of a non-positive number");
    return make_float(boost::multiprecision::pow(base->value, e->value));
  }

  NodePtr add(const NodePtr& a, const NodePtr& b, int sign) {
    if (a->exact && b->exact) return make_exact(*a->exact + sign * *b->exact);
    return make_float(sign > 0 ? HighFloat(a->value + b->value) : HighFloat(a->value - b->value));
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    Rational r = parse_rational(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      const std::size_t digits = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p == digits) fail("malformed exponent");
      const long long ex = std::stoll(std::string(s_.substr(pos_ + 1, p - pos_ - 1)));
      if (ex > 4000 || ex < -4000) fail("exponent out of range");
      r *= ipow(Rational(10), static_cast<int>(ex));
      pos_ = p;
    }
    return make_exact(r);
  }

  long long integer_argument() {
    NodePtr k = expr();
    if (!k->exact || boost::multiprecision::denominator(*k->exact) != 1) fail("expected an integer argument");
    const BigInt v = boost::multiprecision::numerator(*k->exact);
    if (!fits_int64(v)) fail("integer argument too large");
    return static_cast<long long>(v);
  }

  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (eat('(')) {
      NodePtr n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "pi") return make_float(boost::math::constants::pi<HighFloat>());
    if (!eat('(')) fail("expected '(' after " + name);
    NodePtr out;
    if (name == "sqrt") {
      NodePtr x = expr();
      out = apply_root(x, 2);
    } else if (name == "cbrt") {
      NodePtr x = expr();
      out = apply_root(x, 3);
    } else if (name == "root") {
      NodePtr x = expr();
      if (!eat(',')) fail("root expects two arguments");
      out = apply_root(x, integer_argument());
    } else if (name == "liouville") {
      out = make_exact(liouville(integer_argument()));
    } else {
      fail("unknown function " + name);
    }
    if (!eat(')')) fail("expected ')'");
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

RealExpr::RealExpr() : RealExpr(Rational(0)) {}

RealExpr::RealExpr(const Rational& value) : node_(make_exact(value)), text_(veronese::to_string(value)) {}

RealExpr::RealExpr(std::shared_ptr<const Node> node, std::string text)
    : node_(std::move(node)), text_(std::move(text)) {}

RealExpr RealExpr::parse(std::string_view text) {
  return RealExpr(Parser(text).parse(), std::string(text));
}

const std::optional<Rational>& RealExpr::exact() const { return node_->exact; }

const HighFloat& RealExpr::value() const { return node_->value; }

double RealExpr::approx() const { return static_cast<double>(node_->value); }

const std::string& RealExpr::text() const { return text_; }

RealExpr RealExpr::mobius(const Mat2& B) const {
  const std::string label = "mobius(" + B.to_string() + ", " + text_ + ")";
  if (node_->exact) {
    const Rational x = *node_->exact;
    const Rational den = Rational(B.c) * x + Rational(B.d);
    if (den == 0) throw InvalidInput("mobius: x is the pole of " + B.to_string());
    return RealExpr(make_exact((Rational(B.a) * x + Rational(B.b)) / den), label);
  }
  const HighFloat x = node_->value;
  const HighFloat den = HighFloat(B.c) * x + HighFloat(B.d);
  if (den == 0) throw InvalidInput("mobius: x is the pole of " + B.to_string());
  return RealExpr(make_float((HighFloat(B.a) * x + HighFloat(B.b)) / den), label);
}

}  // namespace veronese
