#pragma once

// Exact rational numbers. Values that fit in 64-bit numerator/denominator
// stay inline; anything larger is promoted to a GMP mpq_class.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cva {

class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) { demote_min(); }  // NOLINT
  Rational(long long v) : num_(v) { demote_min(); }  // NOLINT
  Rational(std::int64_t num, std::int64_t den) { assign(static_cast<i128>(num), static_cast<i128>(den)); }
  explicit Rational(const mpq_class& q) { set_big(q); }

  Rational(const Rational& o) : num_(o.num_), den_(o.den_) {
    if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
  }
  Rational(Rational&&) noexcept = default;
  Rational& operator=(const Rational& o) {
    if (this != &o) {
      num_ = o.num_;
      den_ = o.den_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational& operator=(Rational&&) noexcept = default;

  /// Parses "p", "-p" or "p/q".
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) {
      throw std::invalid_argument("malformed rational literal: " + s);
    }
    q.canonicalize();
    Rational r;
    r.set_big(q);
    return r;
  }

  static Rational from_i128(__int128 v) {
    Rational r;
    r.assign(v, 1);
    return r;
  }

  [[nodiscard]] bool is_zero() const { return !big_ && num_ == 0; }
  [[nodiscard]] bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  [[nodiscard]] bool is_small() const { return !big_; }
  [[nodiscard]] int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }

  /// Numerator/denominator when the value is held inline.
  [[nodiscard]] std::int64_t small_num() const { return num_; }
  [[nodiscard]] std::int64_t small_den() const { return den_; }

  [[nodiscard]] mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q;
    set_mpz(q.get_num_mpz_t(), num_);
    set_mpz(q.get_den_mpz_t(), den_);
    return q;
  }

  [[nodiscard]] std::string str() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Rational operator-() const {
    Rational r(*this);
    if (r.big_) {
      *r.big_ = -*r.big_;
    } else {
      r.num_ = -r.num_;
    }
    return r;
  }

  Rational& operator+=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (den_ == 1 && o.den_ == 1) {
        std::int64_t s;
        if (!__builtin_add_overflow(num_, o.num_, &s) && s != kMin) {
          num_ = s;
          return *this;
        }
      }
      assign(static_cast<i128>(num_) * o.den_ + static_cast<i128>(o.num_) * den_,
             static_cast<i128>(den_) * o.den_);
      return *this;
    }
    set_big(to_mpq() + o.to_mpq());
    return *this;
  }
  Rational& operator-=(const Rational& o) { return *this += -o; }
  Rational& operator*=(const Rational& o) {
    if (!big_ && !o.big_) {
      if (num_ == 0 || o.num_ == 0) {
        num_ = 0;
        den_ = 1;
        return *this;
      }
      const std::int64_t g1 = std::gcd(num_, o.den_);
      const std::int64_t g2 = std::gcd(o.num_, den_);
      assign(static_cast<i128>(num_ / g1) * (o.num_ / g2), static_cast<i128>(den_ / g2) * (o.den_ / g1));
      return *this;
    }
    set_big(to_mpq() * o.to_mpq());
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    if (!big_ && !o.big_) {
      Rational inv;
      inv.assign(o.den_, o.num_);
      return *this *= inv;
    }
    set_big(to_mpq() / o.to_mpq());
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;  // canonical: big values never fit inline
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      const i128 l = static_cast<i128>(a.num_) * b.den_;
      const i128 r = static_cast<i128>(b.num_) * a.den_;
      return l <=> r;
    }
    const int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  using i128 = __int128;
  static constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

  static void set_mpz(mpz_ptr z, i128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    const auto hi = static_cast<std::uint64_t>(u >> 64);
    const auto lo = static_cast<std::uint64_t>(u);
    mpz_set_ui(z, static_cast<unsigned long>(hi));
    mpz_mul_2exp(z, z, 64);
    mpz_add_ui(z, z, static_cast<unsigned long>(lo));
    if (neg) mpz_neg(z, z);
  }

  static unsigned __int128 gcd_u128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      if ((a >> 64) == 0 && (b >> 64) == 0) {
        return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      }
      const unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static bool fits(i128 v) {
    return v > static_cast<i128>(kMin) && v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
  }

  void demote_min() {
    if (num_ == kMin) {
      mpq_class q;
      set_mpz(q.get_num_mpz_t(), static_cast<i128>(kMin));
      set_big(q);
    }
  }

  void assign(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      big_.reset();
      num_ = 0;
      den_ = 1;
      return;
    }
    const auto un = static_cast<unsigned __int128>(n < 0 ? -n : n);
    const auto g = static_cast<i128>(gcd_u128(un, static_cast<unsigned __int128>(d)));
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (fits(n) && fits(d)) {
      big_.reset();
      num_ = static_cast<std::int64_t>(n);
      den_ = static_cast<std::int64_t>(d);
      return;
    }
    mpq_class q;
    set_mpz(q.get_num_mpz_t(), n);
    set_mpz(q.get_den_mpz_t(), d);
    big_ = std::make_unique<mpq_class>(std::move(q));
    num_ = 0;
    den_ = 1;
  }

  void set_big(const mpq_class& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
      const long n = q.get_num().get_si();
      const long d = q.get_den().get_si();
      if (n != kMin) {
        big_.reset();
        num_ = n;
        den_ = d;
        return;
      }
    }
    big_ = std::make_unique<mpq_class>(q);
    num_ = 0;
    den_ = 1;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace cva
