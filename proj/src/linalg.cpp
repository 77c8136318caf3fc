#include "mcms/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace mcms {

GoldenNumber Mat3::determinant() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 Mat3::conjugate() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[i][j].conjugate();
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
  return r;
}

PhysVector operator*(const Mat3& a, const PhysVector& v) {
  PhysVector r;
  for (int i = 0; i < 3; ++i) r[i] = a.m[i][0] * v[0] + a.m[i][1] * v[1] + a.m[i][2] * v[2];
  return r;
}

bool structural_less(const Mat3& a, const Mat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto& x = a.m[i][j];
      const auto& y = b.m[i][j];
      if (auto c = x.rat() <=> y.rat(); c != 0) return c < 0;
      if (auto c = x.gold() <=> y.gold(); c != 0) return c < 0;
    }
  return false;
}

GnMatrix GnMatrix::identity(std::size_t n) {
  GnMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

GnMatrix GnMatrix::transpose() const {
  GnMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

GoldenNumber GnMatrix::trace() const {
  GoldenNumber t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

bool GnMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool GnMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

GnMatrix operator*(const GnMatrix& a, const GnMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  GnMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t l = 0; l < a.cols_; ++l) {
      const auto& x = a(i, l);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(l, j).is_zero()) r(i, j) += x * b(l, j);
    }
  return r;
}

GnMatrix operator+(const GnMatrix& a, const GnMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  GnMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

GnMatrix operator-(const GnMatrix& a, const GnMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  GnMatrix r = a;
  for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

std::optional<std::vector<GoldenNumber>> solve(GnMatrix a, std::vector<GoldenNumber> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("solve: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      std::swap(b[piv], b[col]);
    }
    GoldenNumber inv = *a(col, col).inverse();
    for (std::size_t j = col; j < n; ++j) a(col, j) *= inv;
    b[col] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      GoldenNumber f = a(i, col);
      for (std::size_t j = col; j < n; ++j)
        if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
    }
  }
  return b;
}

std::optional<GnMatrix> inverse(const GnMatrix& a) {
  const std::size_t n = a.rows();
  GnMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<GoldenNumber> e(n);
    e[j] = 1;
    auto x = solve(a, std::move(e));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) r(i, j) = (*x)[i];
  }
  return r;
}

std::size_t rank(GnMatrix a) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t piv = r;
    while (piv < a.rows() && a(piv, col).is_zero()) ++piv;
    if (piv == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    GoldenNumber inv = *a(r, col).inverse();
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      GoldenNumber f = a(i, col) * inv;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace mcms

namespace mcms {

GnMatrix null_space(const GnMatrix& input) {
  GnMatrix a = input;
  const std::size_t n = a.rows(), m = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t piv = row;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) continue;
    for (std::size_t j = 0; j < m; ++j) std::swap(a(row, j), a(piv, j));
    GoldenNumber inv = *a(row, col).inverse();
    for (std::size_t j = 0; j < m; ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      GoldenNumber f = a(i, col);
      for (std::size_t j = 0; j < m; ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<char> is_pivot(m, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  GnMatrix out(m, m - pivots.size());
  std::size_t k = 0;
  for (std::size_t f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    out(f, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) out(pivots[r], k) = -a(r, f);
    ++k;
  }
  return out;
}

}  // namespace mcms
