#include "mcms/golden.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcms {

namespace {

constexpr double kTau = 1.6180339887498948482;
constexpr double kSqrt5 = 2.2360679774997896964;

}  // namespace

int GoldenNumber::sign() const {
  int rs = rat_.sign();
  int gs = gold_.sign();
  if (gs == 0) return rs;
  if (rs == 0) return gs;
  if (rs == gs) return rs;

  // Floating filter: accept the double sign when it clears the rounding error.
  double r = rat_.to_double();
  double g = gold_.to_double();
  double v = r + g * kTau;
  double bound = (std::fabs(r) + std::fabs(g) * kTau) * 1e-12;
  if (std::isfinite(v) && std::isfinite(bound) && std::fabs(v) > bound && std::fabs(v) > 1e-280) return v > 0 ? 1 : -1;

  // value = (s + t*sqrt5) / 2 with s = 2 rat + gold, t = gold.
  Rational s = rat_ * Rational(2) + gold_;
  const Rational& t = gold_;
  int ss = s.sign();
  int ts = t.sign();
  if (ss >= 0 && ts >= 0) return (ss || ts) ? 1 : 0;
  if (ss <= 0 && ts <= 0) return (ss || ts) ? -1 : 0;
  Rational diff = s * s - Rational(5) * t * t;
  // s^2 > 5 t^2 means the rational part dominates.
  return diff.sign() * ss;
}

std::optional<GoldenNumber> GoldenNumber::inverse() const {
  if (is_zero()) return std::nullopt;
  Rational n = norm();
  // (a + b tau)(a + b - b tau) = a^2 + ab - b^2
  return GoldenNumber((rat_ + gold_) / n, -gold_ / n);
}

GoldenNumber& GoldenNumber::operator*=(const GoldenNumber& o) {
  if (gold_.is_zero() && o.gold_.is_zero()) {
    rat_ *= o.rat_;
    return *this;
  }
  Rational ac = rat_ * o.rat_;
  Rational bd = gold_ * o.gold_;
  Rational cross = rat_ * o.gold_ + gold_ * o.rat_;
  rat_ = ac + bd;
  gold_ = cross + bd;
  return *this;
}

GoldenNumber& GoldenNumber::operator/=(const GoldenNumber& o) {
  auto inv = o.inverse();
  if (!inv) throw std::domain_error("division by zero in Q[tau]");
  if (o.gold_.is_zero()) {
    rat_ /= o.rat_;
    gold_ /= o.rat_;
    return *this;
  }
  return *this *= *inv;
}

int compare_to_double(const GoldenNumber& x, double d) {
  return GoldenNumber(x.rat() - Rational::from_double(d), x.gold()).sign();
}

namespace {

// Approximation without cancellation: for mixed signs use
// (s + t sqrt5)/2 = (s^2 - 5 t^2) / (2 (s - t sqrt5)).
double rough_value(const GoldenNumber& x) {
  Rational s = x.rat() * Rational(2) + x.gold();
  const Rational& t = x.gold();
  if (s.sign() * t.sign() >= 0) return (s.to_double() + t.to_double() * kSqrt5) / 2.0;
  Rational num = s * s - Rational(5) * t * t;
  return num.to_double() / (2.0 * (s.to_double() - t.to_double() * kSqrt5));
}

}  // namespace

std::pair<double, double> GoldenNumber::enclosure(int precision_bits) const {
  if (precision_bits < 24) throw std::invalid_argument("enclosure precision below 24 bits");
  if (is_zero()) return {0.0, 0.0};
  double d = rough_value(*this);
  if (!std::isfinite(d)) throw std::overflow_error("value outside double range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  int c = compare_to_double(*this, d);
  if (c == 0) return {d, d};
  double lo = d, hi = d;
  if (c > 0) {
    hi = std::nextafter(d, inf);
    while (compare_to_double(*this, hi) > 0) { lo = hi; hi = std::nextafter(hi, inf); }
    if (compare_to_double(*this, hi) == 0) lo = hi;
  } else {
    lo = std::nextafter(d, -inf);
    while (compare_to_double(*this, lo) < 0) { hi = lo; lo = std::nextafter(lo, -inf); }
    if (compare_to_double(*this, lo) == 0) hi = lo;
  }
  return {lo, hi};
}

double GoldenNumber::approx() const {
  auto [lo, hi] = enclosure(53);
  return lo + (hi - lo) / 2;
}

mpz_class GoldenNumber::floor() const {
  if (gold_.is_zero()) return rat_.floor();
  auto [lo, hi] = enclosure(53);
  mpz_class f(std::floor(lo));
  auto le = [this](const mpz_class& z) { return (*this - GoldenNumber(Rational(z, 1))).sign() >= 0; };
  while (!le(f)) --f;
  while (le(f + 1)) ++f;
  return f;
}

mpz_class GoldenNumber::ceil() const {
  mpz_class f = (-*this).floor();
  return -f;
}

std::string GoldenNumber::str() const {
  if (gold_.is_zero()) return rat_.str();
  std::string g = gold_ == Rational(1) ? "t" : (gold_ == Rational(-1) ? "-t" : gold_.str() + "*t");
  if (rat_.is_zero()) return g;
  return rat_.str() + (gold_.sign() > 0 ? "+" : "") + g;
}

std::optional<GoldenNumber> GoldenNumber::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '+' && c != '-' && c != '*' && c != 't')
      return std::nullopt;
    s.push_back(c);
  }
  if (s.empty()) return std::nullopt;

  GoldenNumber result;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    pos = end;

    bool negative = false;
    if (term.front() == '+' || term.front() == '-') {
      negative = term.front() == '-';
      term.remove_prefix(1);
    }
    if (term.empty()) return std::nullopt;
    bool has_tau = false;
    if (term.back() == 't') {
      has_tau = true;
      term.remove_suffix(1);
      if (!term.empty()) {
        if (term.back() != '*') return std::nullopt;
        term.remove_suffix(1);
        if (term.empty()) return std::nullopt;
      }
    }
    Rational coeff(1);
    if (!term.empty()) {
      if (term.find_first_of("+-*t") != std::string_view::npos) return std::nullopt;
      auto r = Rational::parse(term);
      if (!r) return std::nullopt;
      coeff = *r;
    }
    if (negative) coeff = -coeff;
    if (has_tau) result += GoldenNumber(Rational(0), coeff);
    else result += GoldenNumber(coeff);
  }
  return result;
}

std::optional<GoldenNumber> checked_div(const GoldenNumber& a, const GoldenNumber& b) {
  auto inv = b.inverse();
  if (!inv) return std::nullopt;
  return a * *inv;
}

}  // namespace mcms
