#pragma once

// Polynomials in the formal parameters beta, D, C with exact rational
// coefficients. Stored sparsely, sorted by monomial, zero terms dropped.

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cva/rational.hpp"

namespace cva {

enum class Param : std::uint8_t { Beta = 0, D = 1, C = 2 };

/// Exponents of (beta, D, C), packed one byte each.
class Monomial {
 public:
  constexpr Monomial() = default;
  constexpr Monomial(int beta, int d, int c)
      : key_(static_cast<std::uint32_t>(beta) << 16 | static_cast<std::uint32_t>(d) << 8 |
             static_cast<std::uint32_t>(c)) {}

  static constexpr Monomial of(Param p, int power = 1) {
    switch (p) {
      case Param::Beta: return {power, 0, 0};
      case Param::D: return {0, power, 0};
      case Param::C: return {0, 0, power};
    }
    return {};
  }

  [[nodiscard]] constexpr int exponent(Param p) const {
    return static_cast<int>((key_ >> (16 - 8 * static_cast<int>(p))) & 0xFF);
  }
  [[nodiscard]] constexpr bool is_one() const { return key_ == 0; }
  [[nodiscard]] constexpr int degree() const {
    return exponent(Param::Beta) + exponent(Param::D) + exponent(Param::C);
  }

  friend constexpr Monomial operator*(Monomial a, Monomial b) {
    return {a.exponent(Param::Beta) + b.exponent(Param::Beta), a.exponent(Param::D) + b.exponent(Param::D),
            a.exponent(Param::C) + b.exponent(Param::C)};
  }
  friend constexpr auto operator<=>(Monomial, Monomial) = default;

  [[nodiscard]] std::string str() const {
    static constexpr std::array<const char*, 3> names{"beta", "D", "C"};
    std::string out;
    for (int i = 0; i < 3; ++i) {
      const int e = exponent(static_cast<Param>(i));
      if (e == 0) continue;
      if (!out.empty()) out += '*';
      out += names[static_cast<std::size_t>(i)];
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

 private:
  std::uint32_t key_ = 0;
};

class Scalar {
 public:
  using Term = std::pair<Monomial, Rational>;

  Scalar() = default;
  Scalar(const Rational& r) {  // NOLINT(google-explicit-constructor)
    if (!r.is_zero()) terms_.emplace_back(Monomial{}, r);
  }
  Scalar(int v) : Scalar(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  static Scalar var(Param p) { return monomial(Monomial::of(p), Rational(1)); }
  static Scalar monomial(Monomial m, const Rational& c) {
    Scalar s;
    if (!c.is_zero()) s.terms_.emplace_back(m, c);
    return s;
  }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

  /// Coefficient of a monomial (zero when absent).
  [[nodiscard]] Rational coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial k) { return t.first < k; });
    return (it != terms_.end() && it->first == m) ? it->second : Rational(0);
  }

  /// Rational value when the scalar has no formal parameters.
  [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  [[nodiscard]] Rational constant_value() const { return coefficient(Monomial{}); }

  Scalar operator-() const {
    Scalar s(*this);
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
  }

  Scalar& operator+=(const Scalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == terms_.end() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        Rational c = a->second + b->second;
        if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += -o; }

  Scalar& operator*=(const Rational& r) {
    if (r.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= r;
    return *this;
  }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    if (a.terms_.empty() || b.terms_.empty()) return out;
    if (a.terms_.size() == 1 && b.terms_.size() == 1) {
      return monomial(a.terms_[0].first * b.terms_[0].first, a.terms_[0].second * b.terms_[0].second);
    }
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) out += monomial(ma * mb, ca * cb);
    }
    return out;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Rational& r) { return a *= r; }
  friend Scalar operator*(const Rational& r, Scalar a) { return a *= r; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  /// Substitutes rational values or other scalars for the formal parameters.
  [[nodiscard]] Scalar substitute(const Scalar& beta, const Scalar& d, const Scalar& c) const {
    Scalar out;
    for (const auto& [m, coeff] : terms_) {
      Scalar t(coeff);
      for (int i = 0; i < m.exponent(Param::Beta); ++i) t *= beta;
      for (int i = 0; i < m.exponent(Param::D); ++i) t *= d;
      for (int i = 0; i < m.exponent(Param::C); ++i) t *= c;
      out += t;
    }
    return out;
  }

  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = c;
      if (first) {
        if (c.sign() < 0) {
          os << '-';
          mag = -c;
        }
      } else {
        os << (c.sign() < 0 ? " - " : " + ");
        if (c.sign() < 0) mag = -c;
      }
      first = false;
      if (m.is_one()) {
        os << mag;
      } else if (mag == Rational(1)) {
        os << m.str();
      } else {
        os << mag << '*' << m.str();
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

 private:
  std::vector<Term> terms_;
};

}  // namespace cva
