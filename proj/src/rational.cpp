#include "mcms/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace mcms {

namespace {

using i128 = __int128;
using u128 = unsigned __int128;

constexpr int64_t kMax = std::numeric_limits<int64_t>::max();

// Small values keep |num| <= kMax so negation never overflows.
bool fits(i128 v) { return v <= kMax && v >= -static_cast<i128>(kMax); }

u128 uabs(i128 v) { return v < 0 ? static_cast<u128>(-v) : static_cast<u128>(v); }

u128 gcd128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0) return std::gcd(static_cast<uint64_t>(a), static_cast<uint64_t>(b));
  int shift = 0;
  while (((a | b) & 1) == 0) { a >>= 1; b >>= 1; ++shift; }
  while ((a & 1) == 0) a >>= 1;
  while (b != 0) {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

mpz_class to_mpz(i128 v) {
  bool neg = v < 0;
  u128 u = uabs(v);
  mpz_class hi(static_cast<unsigned long>(static_cast<uint64_t>(u >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<uint64_t>(u)));
  mpz_class r = (hi << 64) + lo;
  return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num, d = den;
  if (d < 0) { n = -n; d = -d; }
  u128 g = gcd128(uabs(n), static_cast<u128>(d));
  if (g > 1) { n /= static_cast<i128>(g); d /= static_cast<i128>(g); }
  set_i128(n, d);
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  set_big(std::move(q));
}

Rational::Rational(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  set_big(std::move(c));
}

void Rational::set_big(mpq_class q) {
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63 && mpz_sizeinbase(d.get_mpz_t(), 2) <= 63) {
    num_ = n.get_si();
    den_ = d.get_si();
    big_.reset();
    return;
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(std::move(q));
}

void Rational::set_i128(i128 num, i128 den) {
  if (fits(num) && den <= kMax) {
    num_ = static_cast<int64_t>(num);
    den_ = static_cast<int64_t>(den);
    big_.reset();
    return;
  }
  mpq_class q(to_mpz(num), to_mpz(den));
  big_ = std::make_shared<const mpq_class>(std::move(q));
  num_ = 0;
  den_ = 1;
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
  return q;
}

mpz_class Rational::numerator() const { return big_ ? mpz_class(big_->get_num()) : mpz_class(static_cast<long>(num_)); }
mpz_class Rational::denominator() const { return big_ ? mpz_class(big_->get_den()) : mpz_class(static_cast<long>(den_)); }

double Rational::to_double() const {
  if (big_) return big_->get_d();
  if (den_ == 1) return static_cast<double>(num_);
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Rational Rational::from_double(double d) {
  if (!std::isfinite(d)) throw std::domain_error("non-finite double");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), d);
  return Rational(q);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  mpz_class n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return Rational(n, d);
}

std::string Rational::str() const {
  if (big_) {
    if (big_->get_den() == 1) return big_->get_num().get_str();
    return big_->get_num().get_str() + "/" + big_->get_den().get_str();
  }
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) { num_ = o.num_; den_ = o.den_; return *this; }
    if (den_ == o.den_) {
      i128 n = static_cast<i128>(num_) + o.num_;
      if (den_ == 1) { set_i128(n, 1); return *this; }
      u128 g = gcd128(uabs(n), static_cast<u128>(den_));
      set_i128(n / static_cast<i128>(g), static_cast<i128>(den_) / static_cast<i128>(g));
      return *this;
    }
    int64_t g = std::gcd(den_, o.den_);
    i128 t = static_cast<i128>(num_) * (o.den_ / g) + static_cast<i128>(o.num_) * (den_ / g);
    i128 g2 = static_cast<i128>(gcd128(uabs(t), static_cast<u128>(g)));
    i128 d = static_cast<i128>(den_ / g) * (static_cast<i128>(o.den_) / g2);
    set_i128(t / g2, d);
    return *this;
  }
  set_big(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) { num_ = 0; den_ = 1; return *this; }
    int64_t g1 = std::gcd(num_ < 0 ? -num_ : num_, o.den_);
    int64_t g2 = std::gcd(o.num_ < 0 ? -o.num_ : o.num_, den_);
    i128 n = static_cast<i128>(num_ / g1) * (o.num_ / g2);
    i128 d = static_cast<i128>(den_ / g2) * (o.den_ / g1);
    set_i128(n, d);
    return *this;
  }
  set_big(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  if (!o.big_) {
    Rational inv;
    inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
    inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
    return *this *= inv;
  }
  set_big(to_mpq() / o.to_mpq());
  return *this;
}

Rational operator-(const Rational& a) {
  Rational r;
  if (a.big_) {
    r.set_big(mpq_class(-*a.big_));
  } else {
    r.num_ = -a.num_;
    r.den_ = a.den_;
  }
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c;
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    c = l < r ? -1 : (l > r ? 1 : 0);
  } else {
    c = cmp(a.to_mpq(), b.to_mpq());
  }
  return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

mpz_class Rational::floor() const {
  mpq_class q = to_mpq();
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class Rational::ceil() const {
  mpq_class q = to_mpq();
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

std::size_t Rational::hash() const {
  if (!big_) return std::hash<int64_t>{}(num_) * 1000003u ^ std::hash<int64_t>{}(den_);
  std::size_t h = mpz_fdiv_ui(big_->get_num_mpz_t(), 1000000007UL);
  return h * 31 + mpz_fdiv_ui(big_->get_den_mpz_t(), 998244353UL);
}

std::optional<Rational> checked_div(const Rational& a, const Rational& b) {
  if (b.is_zero()) return std::nullopt;
  return a / b;
}

}  // namespace mcms
