#pragma once

#include "mcms/rational.hpp"

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace mcms {

/// Element rat + gold*tau of the quadratic field Q[tau], tau = (1+sqrt5)/2.
///
/// The representation is unique because tau is irrational, so equality is
/// structural. Ordering is the real order, decided exactly by sign().
class GoldenNumber {
 public:
  GoldenNumber() = default;
  GoldenNumber(Rational rat, Rational gold = {}) : rat_(std::move(rat)), gold_(std::move(gold)) {}  // NOLINT
  GoldenNumber(long v) : rat_(v) {}  // NOLINT(google-explicit-constructor)
  GoldenNumber(int v) : rat_(v) {}   // NOLINT(google-explicit-constructor)

  static GoldenNumber tau() { return {Rational(0), Rational(1)}; }

  /// Parses the `p/q+r/s*t` syntax; `t` stands for tau. Whitespace is ignored.
  static std::optional<GoldenNumber> parse(std::string_view text);

  const Rational& rat() const { return rat_; }
  const Rational& gold() const { return gold_; }

  bool is_zero() const { return rat_.is_zero() && gold_.is_zero(); }
  bool is_rational() const { return gold_.is_zero(); }

  /// Exact sign of the real value: -1, 0 or +1.
  int sign() const;

  /// Galois conjugate: sqrt5 -> -sqrt5, so tau -> 1 - tau.
  GoldenNumber conjugate() const { return {rat_ + gold_, -gold_}; }

  /// Field norm x * conj(x), always rational.
  Rational norm() const { return rat_ * rat_ + rat_ * gold_ - gold_ * gold_; }

  /// Multiplicative inverse; std::nullopt for zero.
  std::optional<GoldenNumber> inverse() const;

  GoldenNumber abs() const { return sign() < 0 ? -*this : *this; }

  /// Largest integer <= value, computed exactly.
  mpz_class floor() const;
  mpz_class ceil() const;

  /// Certified double interval [low, high] containing the exact value.
  /// The interval is the tightest pair of adjacent (or equal) doubles, which
  /// satisfies the requested width for precision_bits <= 53.
  std::pair<double, double> enclosure(int precision_bits = 53) const;

  /// Midpoint of the 53-bit enclosure.
  double approx() const;

  /// Canonical text in the `p/q+r/s*t` syntax.
  std::string str() const;

  GoldenNumber& operator+=(const GoldenNumber& o) { rat_ += o.rat_; gold_ += o.gold_; return *this; }
  GoldenNumber& operator-=(const GoldenNumber& o) { rat_ -= o.rat_; gold_ -= o.gold_; return *this; }
  GoldenNumber& operator*=(const GoldenNumber& o);
  GoldenNumber& operator/=(const GoldenNumber& o);

  GoldenNumber& operator*=(const Rational& r) { rat_ *= r; gold_ *= r; return *this; }

  friend GoldenNumber operator+(GoldenNumber a, const GoldenNumber& b) { return a += b; }
  friend GoldenNumber operator-(GoldenNumber a, const GoldenNumber& b) { return a -= b; }
  friend GoldenNumber operator*(GoldenNumber a, const GoldenNumber& b) { return a *= b; }
  friend GoldenNumber operator*(GoldenNumber a, const Rational& b) { return a *= b; }
  friend GoldenNumber operator/(GoldenNumber a, const GoldenNumber& b) { return a /= b; }
  friend GoldenNumber operator-(const GoldenNumber& a) { return {-a.rat_, -a.gold_}; }

  friend bool operator==(const GoldenNumber& a, const GoldenNumber& b) {
    return a.rat_ == b.rat_ && a.gold_ == b.gold_;
  }
  friend std::strong_ordering operator<=>(const GoldenNumber& a, const GoldenNumber& b) {
    int s = (a - b).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::size_t hash() const { return rat_.hash() * 1000003u ^ gold_.hash(); }

 private:
  Rational rat_;
  Rational gold_;
};

/// a / b, or std::nullopt when b is zero.
std::optional<GoldenNumber> checked_div(const GoldenNumber& a, const GoldenNumber& b);

/// Exact sign of x - d for a finite double d.
int compare_to_double(const GoldenNumber& x, double d);

}  // namespace mcms

template <>
struct std::hash<mcms::GoldenNumber> {
  std::size_t operator()(const mcms::GoldenNumber& g) const { return g.hash(); }
};
