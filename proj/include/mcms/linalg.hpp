#pragma once

#include "mcms/golden.hpp"

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mcms {

/// Vector of physical space E3 with coordinates in Q[tau].
struct PhysVector {
  std::array<GoldenNumber, 3> c{};

  const GoldenNumber& operator[](std::size_t i) const { return c[i]; }
  GoldenNumber& operator[](std::size_t i) { return c[i]; }

  bool is_zero() const { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }
  PhysVector conjugate() const { return {{c[0].conjugate(), c[1].conjugate(), c[2].conjugate()}}; }

  PhysVector& operator+=(const PhysVector& o) { for (int i = 0; i < 3; ++i) c[i] += o.c[i]; return *this; }
  PhysVector& operator-=(const PhysVector& o) { for (int i = 0; i < 3; ++i) c[i] -= o.c[i]; return *this; }
  friend PhysVector operator+(PhysVector a, const PhysVector& b) { return a += b; }
  friend PhysVector operator-(PhysVector a, const PhysVector& b) { return a -= b; }
  friend PhysVector operator-(const PhysVector& a) { return {{-a.c[0], -a.c[1], -a.c[2]}}; }
  friend PhysVector operator*(const GoldenNumber& s, const PhysVector& v) { return {{s * v.c[0], s * v.c[1], s * v.c[2]}}; }

  friend bool operator==(const PhysVector&, const PhysVector&) = default;
  /// Lexicographic order of the exact real coordinates.
  friend std::strong_ordering operator<=>(const PhysVector& a, const PhysVector& b) {
    for (int i = 0; i < 3; ++i)
      if (auto c = a.c[i] <=> b.c[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

  std::string str() const { return "(" + c[0].str() + ", " + c[1].str() + ", " + c[2].str() + ")"; }
};

inline GoldenNumber dot(const PhysVector& a, const PhysVector& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// 3x3 matrix over Q[tau], row-major.
struct Mat3 {
  std::array<std::array<GoldenNumber, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[i][i] = 1;
    return r;
  }

  Mat3 transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }

  GoldenNumber trace() const { return m[0][0] + m[1][1] + m[2][2]; }
  GoldenNumber determinant() const;
  Mat3 conjugate() const;

  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend PhysVector operator*(const Mat3& a, const PhysVector& v);
  friend bool operator==(const Mat3&, const Mat3&) = default;
  /// Structural (not numeric) total order, for use as a map key.
  friend bool structural_less(const Mat3& a, const Mat3& b);
};

/// Dense matrix over Q[tau].
class GnMatrix {
 public:
  GnMatrix() = default;
  GnMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static GnMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GoldenNumber& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const GoldenNumber& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  GnMatrix transpose() const;
  GoldenNumber trace() const;
  bool is_zero() const;
  bool is_symmetric() const;

  friend GnMatrix operator*(const GnMatrix& a, const GnMatrix& b);
  friend GnMatrix operator+(const GnMatrix& a, const GnMatrix& b);
  friend GnMatrix operator-(const GnMatrix& a, const GnMatrix& b);
  friend bool operator==(const GnMatrix&, const GnMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GoldenNumber> a_;
};

/// Solves the square system A x = b exactly; std::nullopt when singular.
std::optional<std::vector<GoldenNumber>> solve(GnMatrix a, std::vector<GoldenNumber> b);

/// Exact inverse of a square matrix; std::nullopt when singular.
std::optional<GnMatrix> inverse(const GnMatrix& a);

/// Rank over Q[tau] by exact Gaussian elimination.
std::size_t rank(GnMatrix a);

/// Basis of {x : a x = 0} as the columns of a cols x (cols - rank) matrix,
/// one free variable set to 1 per column.
GnMatrix null_space(const GnMatrix& a);

}  // namespace mcms

template <>
struct std::hash<mcms::PhysVector> {
  std::size_t operator()(const mcms::PhysVector& v) const {
    return v[0].hash() * 73856093u ^ v[1].hash() * 19349663u ^ v[2].hash() * 83492791u;
  }
};
