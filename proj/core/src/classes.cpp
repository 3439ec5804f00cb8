#include "veronese/classes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <deque>
#include <numeric>
#include <optional>
#include <type_traits>
#include <unordered_map>

#include "veronese/errors.hpp"
#include "veronese/parallel.hpp"
#include "veronese/roots.hpp"

namespace veronese {

namespace {

struct Move {
  Mat2 matrix;
  std::array<std::array<int, 4>, 4> phi{};
};

std::vector<Move> make_moves() {
  const std::array<std::array<int, 4>, 8> mats{{
      {1, 1, 0, 1},    // x + 1
      {1, -1, 0, 1},   // x - 1
      {1, 0, 1, 1},    // x / (x + 1)
      {1, 0, -1, 1},   // x / (1 - x)
      {0, 1, -1, 0},   // -1 / x
      {0, -1, 1, 0},   // same Mobius map, opposite sign
      {-1, 0, 0, 1},   // -x
      {-1, 0, 0, -1},  // P -> -P
  }};
  std::vector<Move> moves;
  for (const auto& m : mats) {
    Move mv;
    mv.matrix = {m[0], m[1], m[2], m[3]};
    IntMatrix f = phi(3, mv.matrix);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) mv.phi[i][j] = static_cast<int>(f(i, j));
    moves.push_back(mv);
  }
  return moves;
}

const std::vector<Move>& moves() {
  static const std::vector<Move> m = make_moves();
  return m;
}

// Unimodular matrices with entries in [-3, 3], used to leave local minima.
std::vector<Move> make_scan_moves() {
  std::vector<Move> out;
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d) {
          const int det = a * d - b * c;
          if (det != 1 && det != -1) continue;
          Move mv;
          mv.matrix = {a, b, c, d};
          IntMatrix f = phi(3, mv.matrix);
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) mv.phi[i][j] = static_cast<int>(f(i, j));
          out.push_back(mv);
        }
  return out;
}

const std::vector<Move>& scan_moves() {
  static const std::vector<Move> m = make_scan_moves();
  return m;
}

struct Overflow {};

template <class T>
struct Arith;

template <>
struct Arith<long long> {
  using Wide = __int128;
  static constexpr long long limit = 1LL << 24;
  static void guard(const std::array<long long, 4>& s) {
    for (auto v : s)
      if (v > limit || v < -limit) throw Overflow{};
  }
  static Wide wide(long long v) { return static_cast<Wide>(v); }
};

template <>
struct Arith<BigInt> {
  using Wide = BigInt;
  static void guard(const std::array<BigInt, 4>&) {}
  static Wide wide(const BigInt& v) { return v; }
};

template <class W>
W wabs(const W& v) {
  return v < 0 ? W(-v) : v;
}

template <class T>
typename Arith<T>::Wide hd4(const std::array<T, 4>& c) {
  using W = typename Arith<T>::Wide;
  const W c0 = Arith<T>::wide(c[0]), c1 = Arith<T>::wide(c[1]), c2 = Arith<T>::wide(c[2]), c3 = Arith<T>::wide(c[3]);
  const W c22 = c2 * c2, c33 = c3 * c3, c12 = c1 * c2, c03 = c0 * c3;
  W best = c22 * c22;
  best = std::max(best, W(c33 * c33));
  best = std::max(best, W(c12 * c12));
  best = std::max(best, wabs(W(c0 * c22 * c2)));
  best = std::max(best, W(c03 * c03));
  best = std::max(best, wabs(W(c1 * c1 * c1 * c3)));
  best = std::max(best, wabs(W(c03 * c12)));
  return best;
}

template <class T>
std::array<T, 4> apply_move(const std::array<T, 4>& s, const Move& m) {
  std::array<T, 4> out{};
  for (std::size_t j = 0; j < 4; ++j) {
    T acc = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (m.phi[i][j] != 0) acc += s[i] * m.phi[i][j];
    out[j] = acc;
  }
  return out;
}

template <class T>
bool canonical_less(const std::array<T, 4>& x, const std::array<T, 4>& y) {
  for (int k = 3; k >= 0; --k) {
    if (x[static_cast<std::size_t>(k)] != y[static_cast<std::size_t>(k)])
      return x[static_cast<std::size_t>(k)] < y[static_cast<std::size_t>(k)];
  }
  return false;
}

template <class T>
bool leading_positive(const std::array<T, 4>& x) {
  for (std::size_t k = 4; k-- > 0;)
    if (x[k] != 0) return x[k] > 0;
  return false;
}

template <class T>
struct StateHash {
  std::size_t operator()(const std::array<T, 4>& s) const {
    std::size_t h = 0;
    for (const auto& v : s) {
      std::size_t x;
      if constexpr (std::is_same_v<T, long long>) {
        x = std::hash<long long>{}(v);
      } else {
        x = std::hash<std::string>{}(v.str());
      }
      h = h * 1000003u ^ x;
    }
    return h;
  }
};

struct Descent {
  std::vector<Mat2> path;
  std::size_t plateau = 0;
};

template <class T>
void guard_wide(const std::array<typename Arith<T>::Wide, 4>& w) {
  if constexpr (std::is_same_v<T, long long>) {
    for (const auto& v : w)
      if (v > Arith<T>::limit || v < -Arith<T>::limit) throw Overflow{};
  }
}

template <class T>
std::array<T, 4> narrow(const std::array<typename Arith<T>::Wide, 4>& w) {
  guard_wide<T>(w);
  std::array<T, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = static_cast<T>(w[i]);
  return out;
}

// P(x + k)
template <class T>
std::array<T, 4> translate(const std::array<T, 4>& s, const T& k) {
  using W = typename Arith<T>::Wide;
  const W c0 = Arith<T>::wide(s[0]), c1 = Arith<T>::wide(s[1]), c2 = Arith<T>::wide(s[2]), c3 = Arith<T>::wide(s[3]);
  const W kk = Arith<T>::wide(k);
  return narrow<T>({W(c0 + kk * (c1 + kk * (c2 + kk * c3))), W(c1 + kk * (2 * c2 + 3 * kk * c3)), W(c2 + 3 * kk * c3),
                    c3});
}

// (kx + 1)^3 P(x / (kx + 1))
template <class T>
std::array<T, 4> translate_at_infinity(const std::array<T, 4>& s, const T& k) {
  std::array<T, 4> r{s[3], s[2], s[1], s[0]};
  r = translate(r, k);
  return {r[3], r[2], r[1], r[0]};
}

template <class T>
T round_div(const T& num, const T& den) {
  // nearest integer to num / den, den != 0
  T q = num / den;
  T r = num - q * den;
  if (2 * wabs(r) > wabs(den)) q += ((r < 0) == (den < 0)) ? T(1) : T(-1);
  return q;
}

template <class T>
struct Step {
  std::array<T, 4> state;
  Mat2 matrix;
};

// Fixed generator moves plus the translations that centre the roots in
// either chart.
template <class T>
std::vector<Step<T>> neighbours(const std::array<T, 4>& s) {
  std::vector<Step<T>> out;
  for (const auto& m : moves()) out.push_back({apply_move(s, m), m.matrix});
  if (s[3] != 0) {
    const T k = round_div(T(-s[2]), T(3 * s[3]));
    for (T d : {T(-1), T(0), T(1)}) {
      const T kk = k + d;
      if (wabs(kk) <= T(1)) continue;
      out.push_back({translate(s, kk), Mat2{1, BigInt(kk), 0, 1}});
    }
  }
  if (s[0] != 0) {
    const T k = round_div(T(-s[1]), T(3 * s[0]));
    for (T d : {T(-1), T(0), T(1)}) {
      const T kk = k + d;
      if (wabs(kk) <= T(1)) continue;
      out.push_back({translate_at_infinity(s, kk), Mat2{1, 0, BigInt(kk), 1}});
    }
  }
  return out;
}

// Runs the descent and returns the sequence of moves; the final state is the
// representative. Moves compose on the right of the starting witness.
template <class T>
Descent descend(std::array<T, 4> s, int depth) {
  Descent out;
  auto hcur = hd4(s);
  for (;;) {
    Arith<T>::guard(s);
    std::optional<Step<T>> best;
    typename Arith<T>::Wide best_h = hcur;
    for (auto& st : neighbours(s)) {
      auto h = hd4(st.state);
      if (h < best_h) {
        best_h = h;
        best = std::move(st);
      }
    }
    if (best) {
      out.path.push_back(best->matrix);
      s = best->state;
      hcur = best_h;
      continue;
    }

    struct Node {
      std::array<T, 4> state;
      int parent;
      Mat2 move;
      int depth;
    };
    std::vector<Node> nodes{{s, -1, Mat2::identity(), 0}};
    std::unordered_map<std::array<T, 4>, int, StateHash<T>> seen{{s, 0}};
    constexpr std::size_t node_cap = 4096;
    int exit_node = -1;
    std::optional<Step<T>> exit_step;
    typename Arith<T>::Wide exit_h = hcur;
    for (std::size_t head = 0; head < nodes.size() && exit_node < 0; ++head) {
      if (nodes[head].depth >= depth) continue;
      const auto here = nodes[head].state;
      for (auto& st : neighbours(here)) {
        auto h = hd4(st.state);
        if (h < hcur) {
          exit_node = static_cast<int>(head);
          exit_h = h;
          exit_step = std::move(st);
          break;
        }
        if (h == hcur && nodes.size() < node_cap && !seen.contains(st.state)) {
          seen.emplace(st.state, static_cast<int>(nodes.size()));
          nodes.push_back({st.state, static_cast<int>(head), st.matrix, nodes[head].depth + 1});
        }
      }
    }
    auto trace = [&](int node) {
      std::vector<Mat2> rev;
      for (int at = node; nodes[static_cast<std::size_t>(at)].parent >= 0; at = nodes[static_cast<std::size_t>(at)].parent)
        rev.push_back(nodes[static_cast<std::size_t>(at)].move);
      out.path.insert(out.path.end(), rev.rbegin(), rev.rend());
    };
    if (exit_node >= 0) {
      trace(exit_node);
      out.path.push_back(exit_step->matrix);
      s = exit_step->state;
      hcur = exit_h;
      continue;
    }
    std::optional<Step<T>> jump;
    typename Arith<T>::Wide jump_h = hcur;
    for (const auto& m : scan_moves()) {
      auto t = apply_move(s, m);
      Arith<T>::guard(t);
      auto h = hd4(t);
      if (h < jump_h) {
        jump_h = h;
        jump = Step<T>{t, m.matrix};
      }
    }
    if (jump) {
      out.path.push_back(jump->matrix);
      s = jump->state;
      hcur = jump_h;
      continue;
    }
    int pick = -1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!leading_positive(nodes[i].state)) continue;
      if (pick < 0 || canonical_less(nodes[i].state, nodes[static_cast<std::size_t>(pick)].state)) pick = static_cast<int>(i);
    }
    if (pick < 0) {
      // Only negative leading coefficients were reached; P -> -P fixes that.
      out.path.push_back(moves().back().matrix);
    } else {
      trace(pick);
    }
    out.plateau = nodes.size();
    return out;
  }
}

// A unimodular B with c3(act(B, p)) != 0, for a nonzero form p.
Mat2 leading_fix(const IntVector& c) {
  for (int r = 1;; ++r) {
    for (int a = -r; a <= r; ++a)
      for (int cc = -r; cc <= r; ++cc) {
        if (std::max(std::abs(a), std::abs(cc)) != r || std::gcd(a, cc) != 1) continue;
        BigInt value = 0;
        for (unsigned i = 0; i < 4; ++i) value += c[i] * ipow(BigInt(a), i) * ipow(BigInt(cc), 3 - i);
        if (value == 0) continue;
        BigInt s, t;
        ext_gcd(BigInt(a), BigInt(cc), s, t);
        return {a, -t, cc, s};
      }
  }
}

// Moves the centre of the covariant quadratic sum_i |z_j - z_k|^2 |x - z_i y|^2
// into the standard fundamental domain; returns the matrix B to act with.
std::optional<Mat2> root_centring(const IntVector& c) {
  if (c[3] == 0 || cubic_discriminant(c[0], c[1], c[2], c[3]) == 0) return std::nullopt;
  std::vector<CertifiedRoot> rs;
  try {
    rs = roots(IntPoly(c), 1e-9);
  } catch (const PrecisionExhausted&) {
    return std::nullopt;
  }
  if (rs.size() != 3) return std::nullopt;
  using C = std::complex<long double>;
  C z[3];
  for (std::size_t i = 0; i < 3; ++i) z[i] = C(rs[i].center.real(), rs[i].center.imag());
  long double A = 0, Bq = 0, Cq = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const long double t = std::norm(z[(i + 1) % 3] - z[(i + 2) % 3]);
    A += t;
    Bq += -2 * t * z[i].real();
    Cq += t * std::norm(z[i]);
  }
  const long double disc = 4 * A * Cq - Bq * Bq;
  if (!(disc > 0) || !(A > 0)) return std::nullopt;
  C tau(-Bq / (2 * A), std::sqrt(disc) / (2 * A));
  // g acts on tau; the cubic is moved by g^{-1}
  Mat2 g;
  for (int it = 0; it < 200; ++it) {
    const long double re = std::round(tau.real());
    if (!std::isfinite(re) || std::fabs(re) > 1e15L) return std::nullopt;
    const auto k = static_cast<long long>(re);
    if (k != 0) {
      tau -= static_cast<long double>(k);
      g = Mat2{1, -k, 0, 1} * g;
    }
    if (std::norm(tau) < 1.0L - 1e-12L) {
      tau = -1.0L / tau;
      g = Mat2{0, -1, 1, 0} * g;
      continue;
    }
    break;
  }
  if (g == Mat2::identity()) return std::nullopt;
  return g.inverse();
}

std::optional<std::array<long long, 4>> small_state(const IntVector& c) {
  std::array<long long, 4> s{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!fits_int64(c[i])) return std::nullopt;
    s[i] = static_cast<long long>(c[i]);
    if (s[i] > Arith<long long>::limit || s[i] < -Arith<long long>::limit) return std::nullopt;
  }
  return s;
}

IntVector cubic_form(const IntPoly& p) {
  if (p.is_zero()) throw InvalidInput("cubic form must be nonzero");
  if (p.degree() > 3) throw InvalidInput("cubic form must have degree <= 3");
  return p.as_form(3);
}

// Distinct rational roots of a cubic with c3 != 0, or nullopt when the
// coefficients are too large for divisor enumeration.
std::optional<int> rational_root_count(const IntVector& c) {
  IntVector w = c;
  int count = 0;
  if (w[0] == 0) {
    ++count;
    std::size_t shift = 0;
    while (w[shift] == 0) ++shift;
    IntVector rest(w.begin() + static_cast<std::ptrdiff_t>(shift), w.end());
    w = rest;
  }
  const std::size_t deg = w.size() - 1;
  if (deg == 0) return count;
  const BigInt cap = BigInt(1) << 40;
  if (abs(w[0]) > cap || abs(w[deg]) > cap) return std::nullopt;
  auto divisors = [](long long v) {
    v = std::llabs(v);
    std::vector<long long> ds;
    for (long long d = 1; d * d <= v; ++d)
      if (v % d == 0) {
        ds.push_back(d);
        if (d * d != v) ds.push_back(v / d);
      }
    return ds;
  };
  const auto us = divisors(static_cast<long long>(w[0]));
  const auto vs = divisors(static_cast<long long>(w[deg]));
  std::vector<std::pair<long long, long long>> found;
  for (long long u : us)
    for (long long v : vs) {
      if (std::gcd(u, v) != 1) continue;
      for (long long sign : {1LL, -1LL}) {
        BigInt acc = 0;
        for (std::size_t i = 0; i <= deg; ++i)
          acc += w[i] * ipow(BigInt(sign * u), static_cast<unsigned>(i)) * ipow(BigInt(v), static_cast<unsigned>(deg - i));
        if (acc == 0) found.emplace_back(sign * u, v);
      }
    }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return count + static_cast<int>(found.size());
}

BigInt form_content(const IntVector& c) {
  BigInt g = 0;
  for (const auto& v : c) g = gcd(g, v);
  return g;
}

// Witness search between forms with nonzero leading coefficients.
std::optional<Mat2> search_witness(const IntVector& p, const IntVector& q, int bound) {
  const IntPoly target(q);
  for (int r = 0; r <= bound; ++r) {
    for (int a = -r; a <= r; ++a)
      for (int c = -r; c <= r; ++c) {
        if (std::max(std::abs(a), std::abs(c)) != r || std::gcd(a, c) != 1) continue;
        BigInt lead = 0;
        for (unsigned i = 0; i < 4; ++i) lead += p[i] * ipow(BigInt(a), i) * ipow(BigInt(c), 3 - i);
        if (lead != q[3]) continue;
        BigInt s, t;
        ext_gcd(BigInt(a), BigInt(c), s, t);
        for (int eps : {1, -1}) {
          Mat2 base{a, -eps * t, c, eps * s};
          IntVector r0 = mobius_act_poly(base, IntPoly(p), 3).as_form(3);
          // x -> x + k moves c2 by 3k c3, or c1 by 2k c2 when c3 = 0.
          const int j = q[3] != 0 ? 2 : 1;
          BigInt num = q[j] - r0[j];
          BigInt den = (j + 1) * q[j + 1];
          if (den == 0) continue;
          if (num % den != 0) continue;
          BigInt k = num / den;
          Mat2 cand = base * Mat2{1, k, 0, 1};
          if (mobius_act_poly(cand, IntPoly(p), 3) == target) return cand;
        }
      }
  }
  return std::nullopt;
}

}  // namespace

Reduction reduce_min_hd(const IntPoly& p, int depth) {
  IntVector c = cubic_form(p);
  Mat2 witness = Mat2::identity();
  if (c[3] == 0) {
    witness = leading_fix(c);
    c = mobius_act_poly(witness, p, 3).as_form(3);
  }
  if (auto g = root_centring(c)) {
    IntVector moved = mobius_act_poly(*g, IntPoly(c), 3).as_form(3);
    if (moved[3] != 0) {
      witness = witness * *g;
      c = std::move(moved);
    }
  }
  Descent d;
  bool done = false;
  if (auto s = small_state(c)) {
    try {
      d = descend<long long>(*s, depth);
      done = true;
    } catch (const Overflow&) {
    }
  }
  if (!done) d = descend<BigInt>({c[0], c[1], c[2], c[3]}, depth);
  for (const Mat2& m : d.path) witness = witness * m;
  Reduction out;
  out.representative = mobius_act_poly(witness, p, 3);
  out.witness = witness;
  out.hd = height_d(out.representative);
  out.plateau_size = d.plateau;
  return out;
}

RootGap min_root_gap(const IntPoly& p, double target_radius) {
  if (p.degree() < 2) throw InvalidInput("min_root_gap: degree must be >= 2");
  auto rs = roots(p, target_radius);
  for (const auto& r : rs)
    if (r.multiplicity > 1) throw InvalidInput("min_root_gap: polynomial has a repeated root");
  RootGap gap{INFINITY, INFINITY};
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      double d = std::abs(rs[i].center - rs[j].center);
      gap.lower = std::min(gap.lower, d - rs[i].radius - rs[j].radius);
      gap.upper = std::min(gap.upper, d + rs[i].radius + rs[j].radius);
    }
  return gap;
}

bool check_root_separation(const IntPoly& p, double eps) {
  if (p.degree() < 2 || discriminant(p) == 0) throw InvalidInput("check_root_separation: D(p) must be nonzero");
  for (double target : {1e-8, 1e-12, 1e-14}) {
    RootGap g = min_root_gap(p, target);
    if (g.lower > eps) return true;
    if (g.upper <= eps) return false;
  }
  throw PrecisionExhausted("check_root_separation: gap too close to eps to decide");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::not_equivalent: return "not_equivalent";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

EquivalenceResult equivalent(const IntPoly& p, const IntPoly& q, int entry_bound) {
  const IntVector pc = cubic_form(p), qc = cubic_form(q);
  const BigInt dp = form_discriminant(p, 3), dq = form_discriminant(q, 3);
  if (dp != dq) {
    return {Verdict::not_equivalent, {}, "discriminants differ: " + to_string(dp) + " vs " + to_string(dq)};
  }
  if (form_content(pc) != form_content(qc)) return {Verdict::not_equivalent, {}, "contents differ"};

  Mat2 fp = Mat2::identity(), fq = Mat2::identity();
  if (pc[3] == 0) fp = leading_fix(pc);
  if (qc[3] == 0) fq = leading_fix(qc);
  const IntVector p1 = mobius_act_poly(fp, p, 3).as_form(3);
  const IntVector q1 = mobius_act_poly(fq, q, 3).as_form(3);

  auto rp = rational_root_count(p1), rq = rational_root_count(q1);
  if (rp && rq && *rp != *rq) return {Verdict::not_equivalent, {}, "different numbers of rational roots"};

  auto verified = [&](const Mat2& w) -> std::optional<EquivalenceResult> {
    if (w.is_unimodular() && mobius_act_poly(w, p, 3) == q) return EquivalenceResult{Verdict::equivalent, w, "witness"};
    return std::nullopt;
  };

  // act(fp * B * fq^-1, p) == q whenever act(B, p1) == q1.
  if (auto b = search_witness(p1, q1, entry_bound))
    if (auto r = verified(fp * *b * fq.inverse())) return *r;

  Reduction ra = reduce_min_hd(p), rb = reduce_min_hd(q);
  if (ra.representative == rb.representative)
    if (auto r = verified(ra.witness * rb.witness.inverse())) return *r;
  if (auto b = search_witness(ra.representative.as_form(3), rb.representative.as_form(3), entry_bound))
    if (auto r = verified(ra.witness * *b * rb.witness.inverse())) return *r;

  return {Verdict::unknown, {}, "no witness with entries <= " + std::to_string(entry_bound)};
}

namespace {

using Key = std::array<long long, 4>;

struct KeyHash {
  std::size_t operator()(const Key& k) const { return StateHash<long long>{}(k); }
};

struct Bucket {
  long long disc = 0;
  std::uint64_t members = 0;
  std::vector<std::pair<IntPoly, Mat2>> witnesses;
};

Key key_of(const IntPoly& r) {
  IntVector c = r.as_form(3);
  Key k{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!fits_int64(c[i])) throw InvalidInput("enumerate_classes: representative outside int64");
    k[i] = static_cast<long long>(c[i]);
  }
  return k;
}

long long disc64(long long c0, long long c1, long long c2, long long c3) {
  return c1 * c1 * c2 * c2 - 4 * c0 * c2 * c2 * c2 - 4 * c1 * c1 * c1 * c3 - 27 * c0 * c0 * c3 * c3 +
         18 * c0 * c1 * c2 * c3;
}

}  // namespace

ClassCensus enumerate_classes(int height_cap, long long disc_cap, const ClassOptions& options) {
  if (height_cap < 1) throw InvalidInput("enumerate_classes: height cap must be >= 1");
  if (height_cap > 2000) throw InvalidInput("enumerate_classes: height cap too large for int64 discriminants");
  const double side = 2.0 * height_cap + 1;
  const double cells = height_cap * side * side * side;
  if (cells > options.budget) throw BudgetExceeded("enumerate_classes: work budget exceeded", cells, options.budget);

  const auto H = static_cast<long long>(height_cap);
  const auto neg = Mat2{-1, 0, 0, -1};
  std::vector<std::unordered_map<Key, Bucket, KeyHash>> parts(static_cast<std::size_t>(H));
  parallel_for(parts.size(), options.threads, [&](std::size_t idx) {
    const long long c3 = static_cast<long long>(idx) + 1;
    auto& local = parts[idx];
    for (long long c2 = -H; c2 <= H; ++c2)
      for (long long c1 = -H; c1 <= H; ++c1)
        for (long long c0 = -H; c0 <= H; ++c0) {
          long long d = disc64(c0, c1, c2, c3);
          if (d == 0 || d > disc_cap || d < -disc_cap) continue;
          IntPoly member{c0, c1, c2, c3};
          Reduction red = reduce_min_hd(member, options.depth);
          auto& b = local[key_of(red.representative)];
          b.disc = d;
          b.members += 2;
          if (b.witnesses.size() < options.witness_cap) b.witnesses.emplace_back(member, red.witness);
          if (b.witnesses.size() < options.witness_cap) b.witnesses.emplace_back(-member, red.witness * neg);
        }
  });

  std::map<Key, Bucket> merged;
  for (auto& part : parts) {
    std::vector<Key> keys;
    for (const auto& kv : part) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    for (const auto& k : keys) {
      auto& src = part[k];
      auto& dst = merged[k];
      dst.disc = src.disc;
      dst.members += src.members;
      for (auto& w : src.witnesses)
        if (dst.witnesses.size() < options.witness_cap) dst.witnesses.push_back(std::move(w));
    }
    part.clear();
  }

  std::map<long long, std::vector<Key>> by_disc;
  for (const auto& [k, b] : merged) by_disc[b.disc].push_back(k);

  ClassCensus census;
  census.height_cap = height_cap;
  census.disc_cap = disc_cap;
  for (auto& [d, keys] : by_disc) {
    auto by_canonical = [](const Key& x, const Key& y) { return canonical_less(x, y); };
    std::sort(keys.begin(), keys.end(), by_canonical);
    // root[i]: class leader; link[i]: B with act(B, key_i) == key_root.
    std::vector<std::size_t> root(keys.size());
    std::vector<Mat2> link(keys.size());
    std::iota(root.begin(), root.end(), 0);
    auto poly_of = [](const Key& k) { return IntPoly{k[0], k[1], k[2], k[3]}; };
    std::vector<bool> settled(keys.size(), false);
    for (std::size_t j = 0; j < keys.size(); ++j) {
      bool undecided = false;
      for (std::size_t i = 0; i < j; ++i) {
        if (root[i] != i) continue;
        auto v = equivalent(poly_of(keys[j]), poly_of(keys[i]), options.entry_bound);
        if (v.verdict == Verdict::equivalent) {
          root[j] = i;
          link[j] = v.witness;
          settled[j] = true;
          break;
        }
        if (v.verdict == Verdict::unknown) undecided = true;
      }
      if (!settled[j] && undecided) ++census.unresolved_pairs;
    }
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (root[i] != i) continue;
      ClassRecord rec;
      rec.canonical = poly_of(keys[i]);
      rec.discriminant = d;
      for (std::size_t j = 0; j < keys.size(); ++j) {
        if (root[j] != i) continue;
        const auto& b = merged[keys[j]];
        rec.members_found += b.members;
        for (const auto& [member, w] : b.witnesses) {
          if (rec.witnesses.size() >= options.witness_cap) break;
          rec.witnesses.emplace_back(member, j == i ? w : w * link[j]);
        }
      }
      census.classes.push_back(std::move(rec));
      ++census.histogram[d];
    }
  }
  return census;
}

std::size_t total_classes(const ClassCensus& census) {
  std::size_t total = 0;
  for (const auto& [d, h] : census.histogram) total += h;
  return total;
}

}  // namespace veronese
