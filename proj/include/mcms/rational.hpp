#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace mcms {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Values whose numerator and denominator fit in int64 are stored inline;
/// anything larger lives in a shared immutable GMP mpq. The split is
/// canonical (a value is big iff it does not fit), so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : num_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q);

  /// Exact conversion of a finite double.
  static Rational from_double(double d);

  /// Parses `p` or `p/q` (optional leading sign, decimal digits only).
  static std::optional<Rational> parse(std::string_view text);

  mpq_class to_mpq() const;
  mpz_class numerator() const;
  mpz_class denominator() const;

  int sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
  }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  bool is_small() const { return !big_; }
  double to_double() const;

  /// `p` when integral, `p/q` otherwise.
  std::string str() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  /// Largest integer <= value.
  mpz_class floor() const;
  /// Smallest integer >= value.
  mpz_class ceil() const;

  std::size_t hash() const;

 private:
  void set_big(mpq_class q);
  void set_i128(__int128 num, __int128 den);  // den > 0, already reduced

  int64_t num_ = 0;
  int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::optional<Rational> checked_div(const Rational& a, const Rational& b);

}  // namespace mcms

template <>
struct std::hash<mcms::Rational> {
  std::size_t operator()(const mcms::Rational& r) const { return r.hash(); }
};
