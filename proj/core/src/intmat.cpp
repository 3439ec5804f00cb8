#include "veronese/intmat.hpp"

#include <utility>

#include "veronese/errors.hpp"

namespace veronese {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  if (rows.empty()) return {};
  IntMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw InvalidInput("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntVector IntMatrix::apply(std::span<const BigInt> v) const {
  if (v.size() != cols_) throw InvalidInput("matrix-vector size mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    BigInt s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
    out[i] = std::move(s);
  }
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix product size mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

namespace {

// Reduces m in place to row echelon form with Bareiss updates. Returns the
// rank; `sign` tracks row swaps and `last_pivot` the final leading minor.
std::size_t bareiss_echelon(IntMatrix& m, int& sign, BigInt& last_pivot) {
  sign = 1;
  last_pivot = 1;
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = (m(i, j) * m(r, c) - m(i, c) * m(r, j)) / prev;
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    last_pivot = prev;
    ++r;
  }
  return r;
}

}  // namespace

BigInt determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  int sign = 1;
  BigInt last;
  std::size_t r = bareiss_echelon(m, sign, last);
  if (r < m.rows()) return 0;
  return sign < 0 ? BigInt(-last) : last;
}

std::size_t rank(IntMatrix m) {
  int sign = 1;
  BigInt last;
  return bareiss_echelon(m, sign, last);
}

std::vector<IntVector> integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(n);
  // Unimodular column operations bring `a` to column echelon form; the
  // trailing columns of `u` then span the integer kernel.
  auto combine = [](IntMatrix& x, std::size_t p, std::size_t q, const BigInt& s,
                     const BigInt& t, const BigInt& v, const BigInt& w) {
    // col_p <- s col_p + t col_q ; col_q <- v col_p + w col_q
    for (std::size_t i = 0; i < x.rows(); ++i) {
      BigInt xp = x(i, p), xq = x(i, q);
      x(i, p) = s * xp + t * xq;
      x(i, q) = v * xp + w * xq;
    }
  };
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < a.rows() && pivot < n; ++i) {
    for (std::size_t j = pivot + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      BigInt x = a(i, pivot), y = a(i, j);
      BigInt s, t;
      BigInt g = ext_gcd(x, y, s, t);
      BigInt v = -y / g, w = x / g;
      combine(a, pivot, j, s, t, v, w);
      combine(u, pivot, j, s, t, v, w);
    }
    if (a(i, pivot) != 0) ++pivot;
  }
  std::vector<IntVector> basis;
  for (std::size_t j = pivot; j < n; ++j) {
    IntVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = u(k, j);
    BigInt g = 0;
    for (const auto& c : col) g = gcd(g, c);
    if (g > 1)
      for (auto& c : col) c /= g;
    basis.push_back(std::move(col));
  }
  return basis;
}

std::vector<IntVector> saturate(const std::vector<IntVector>& vs) {
  if (vs.empty()) return {};
  const std::size_t d = vs.front().size();
  auto complement = integer_kernel(IntMatrix::from_rows(vs));
  if (complement.empty()) {
    std::vector<IntVector> basis;
    IntMatrix id = IntMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) basis.push_back(id.row(i));
    return basis;
  }
  return integer_kernel(IntMatrix::from_rows(complement));
}

IntMatrix gram(const std::vector<IntVector>& vs) {
  IntMatrix g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i; j < vs.size(); ++j) {
      g(i, j) = dot(vs[i], vs[j]);
      g(j, i) = g(i, j);
    }
  return g;
}

}  // namespace veronese
