#pragma once

// Polynomials in lambda, mu whose coefficients are sums of words.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cva/lambda/symbol.hpp"
#include "cva/rational.hpp"
#include "cva/scalar.hpp"

namespace cva::lambda {

inline Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational r(1);
  for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i) / Rational(i);
  return r;
}

inline Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

struct Term {
  int lam = 0;
  int mu = 0;
  Letters word;
  Scalar coeff;
};

inline bool key_less(const Term& a, const Term& b) {
  if (a.lam != b.lam) return a.lam < b.lam;
  if (a.mu != b.mu) return a.mu < b.mu;
  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
  return std::lexicographical_compare(a.word.begin(), a.word.end(), b.word.begin(), b.word.end());
}

inline bool key_equal(const Term& a, const Term& b) { return a.lam == b.lam && a.mu == b.mu && a.word == b.word; }

/// Canonical: terms sorted by (lambda, mu, word), keys distinct, no zero
/// coefficients. Words themselves are not reordered here.
class LambdaPoly {
 public:
  LambdaPoly() = default;

  static LambdaPoly word(Letters w, Scalar c = Scalar(Rational(1)), int lam = 0, int mu = 0) {
    LambdaPoly p;
    if (!c.is_zero()) p.terms_.push_back({lam, mu, std::move(w), std::move(c)});
    return p;
  }
  static LambdaPoly letter(GenSymbol g, Scalar c = Scalar(Rational(1)), int lam = 0, int mu = 0) {
    return word(Letters{g}, std::move(c), lam, mu);
  }
  static LambdaPoly from_terms(std::vector<Term> terms) {
    LambdaPoly p;
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] int max_lambda() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.lam);
    return d;
  }
  [[nodiscard]] bool has_mu() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mu != 0; });
  }

  /// Coefficient of lambda^i mu^j as a lambda-free sum of words.
  [[nodiscard]] LambdaPoly coefficient(int i, int j = 0) const {
    LambdaPoly out;
    for (const auto& t : terms_) {
      if (t.lam == i && t.mu == j) out.terms_.push_back({0, 0, t.word, t.coeff});
    }
    return out;
  }

  LambdaPoly& operator+=(const LambdaPoly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && key_less(*i, *j))) {
        merged.push_back(std::move(*i++));
      } else if (i == terms_.end() || key_less(*j, *i)) {
        merged.push_back(*j++);
      } else {
        Scalar s = i->coeff + j->coeff;
        if (!s.is_zero()) merged.push_back({i->lam, i->mu, std::move(i->word), std::move(s)});
        ++i;
        ++j;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }
  LambdaPoly& operator-=(const LambdaPoly& o) { return *this += -o; }
  LambdaPoly operator-() const {
    LambdaPoly p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }
  LambdaPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff = t.coeff * s;
    std::erase_if(terms_, [](const Term& t) { return t.coeff.is_zero(); });
    return *this;
  }
  LambdaPoly& operator*=(const Rational& r) {
    if (r.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff *= r;
    return *this;
  }

  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  friend LambdaPoly operator*(LambdaPoly a, const Scalar& s) { return a *= s; }
  friend LambdaPoly operator*(LambdaPoly a, const Rational& r) { return a *= r; }

  friend bool operator==(const LambdaPoly& a, const LambdaPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (!key_equal(a.terms_[i], b.terms_[i]) || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    }
    return true;
  }

  /// Multiplies by lambda^i mu^j.
  [[nodiscard]] LambdaPoly shifted(int i, int j = 0) const {
    LambdaPoly p = *this;
    for (auto& t : p.terms_) {
      t.lam += i;
      t.mu += j;
    }
    return p;
  }

  /// Renames lambda to mu (the polynomial must be mu-free).
  [[nodiscard]] LambdaPoly lambda_as_mu() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (t.mu != 0) throw UsageError("lambda_as_mu on a two-variable polynomial");
      out.push_back({0, t.lam, t.word, t.coeff});
    }
    return from_terms(std::move(out));
  }

  /// Substitutes lambda -> lambda + mu in a mu-free polynomial.
  [[nodiscard]] LambdaPoly lambda_to_sum() const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.mu != 0) throw UsageError("lambda_to_sum on a two-variable polynomial");
      for (int j = 0; j <= t.lam; ++j) out.push_back({j, t.lam - j, t.word, t.coeff * binomial(t.lam, j)});
    }
    return from_terms(std::move(out));
  }

  /// Integral over mu from 0 to lambda.
  [[nodiscard]] LambdaPoly integrate_mu() const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.lam + t.mu + 1, 0, t.word, t.coeff * Rational(1, t.mu + 1)});
    return from_terms(std::move(out));
  }

  /// Applies a Scalar map to every coefficient.
  template <class Fn>
  [[nodiscard]] LambdaPoly map_coefficients(Fn&& fn) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.lam, t.mu, t.word, fn(t.coeff)});
    return from_terms(std::move(out));
  }

  /// One line per (lambda^i mu^j, word): "lambda^i mu^j | word | scalar".
  [[nodiscard]] std::string dump(const std::vector<std::string>* labels = nullptr) const {
    std::ostringstream os;
    for (const auto& t : terms_) {
      os << "lambda^" << t.lam << " mu^" << t.mu << " | " << word_str(t.word, labels) << " | " << t.coeff.str()
         << '\n';
    }
    return os.str();
  }

 private:
  void canonicalize() {
    std::erase_if(terms_, [](const Term& t) { return t.coeff.is_zero(); });
    if (terms_.size() < 2) return;
    std::sort(terms_.begin(), terms_.end(), key_less);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && key_equal(out.back(), t)) {
        out.back().coeff += t.coeff;
        if (out.back().coeff.is_zero()) out.pop_back();
      } else {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;
};

}  // namespace cva::lambda
