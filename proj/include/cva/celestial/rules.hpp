#pragma once

// Bracket tables for the celestial generators J_a[n,m], I_a[n,m], E[n,m],
// F[n,m] over a simple Lie algebra, at three levels: undeformed currents,
// currents plus E/F, and the deformation with constants D, C.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cva/errors.hpp"
#include "cva/lambda/calculus.hpp"
#include "cva/liealg/lie_algebra.hpp"
#include "cva/scalar.hpp"

namespace cva::celestial {

using lambda::GenSymbol;
using lambda::Kind;
using lambda::LambdaPoly;
using lambda::Letters;
using lambda::Term;
using liealg::LieAlgebra;

enum class Level { Base, Extended, Deformed };

inline const char* level_name(Level l) {
  switch (l) {
    case Level::Base: return "base";
    case Level::Extended: return "extended";
    case Level::Deformed: return "deformed";
  }
  return "?";
}

/// -p(-lambda-T) on raw (not normally ordered) words.
inline LambdaPoly skew_literal(const LambdaPoly& p) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    for (int j = 0; j <= t.lam; ++j) {
      Rational c = lambda::binomial(t.lam, j);
      if (t.lam % 2 == 0) c = -c;
      const LambdaPoly derived = lambda::detail::derive_literal(t.word, j);
      for (const auto& d : derived.terms()) {
        out.push_back({t.lam - j, 0, d.word, d.coeff * t.coeff * c});
      }
    }
  }
  return LambdaPoly::from_terms(std::move(out));
}

class RuleSet : public lambda::BracketRules {
 public:
  /// Replaces the primary-orientation output of a rule (fault injection in tests).
  using Tamper = std::function<LambdaPoly(GenSymbol, GenSymbol, LambdaPoly)>;

  RuleSet(const LieAlgebra& L, Level level, Scalar beta = Scalar::var(Param::Beta), Scalar d = Scalar::var(Param::D),
          Scalar c = Scalar::var(Param::C))
      : L_(&L), level_(level), beta_(std::move(beta)), D_(std::move(d)), C_(std::move(c)) {
    if (level_ == Level::Deformed) build_casimir_words();
  }

  [[nodiscard]] const LieAlgebra& algebra() const { return *L_; }
  [[nodiscard]] Level level() const { return level_; }
  [[nodiscard]] const Scalar& beta() const { return beta_; }
  [[nodiscard]] const Scalar& D() const { return D_; }
  [[nodiscard]] const Scalar& C() const { return C_; }
  [[nodiscard]] const std::vector<std::string>* labels() const override { return &L_->labels(); }

  void set_tamper(Tamper t) { tamper_ = std::move(t); }

  /// The orientation a table entry is written in; the reversed pair is its skew.
  [[nodiscard]] bool is_primary(GenSymbol a, GenSymbol b) const { return primary(a, b).has_value(); }

  [[nodiscard]] LambdaPoly generator_bracket(GenSymbol a, GenSymbol b) const override {
    if (a.dpow() != 0 || b.dpow() != 0) throw UsageError("generator_bracket takes underived generators");
    if (auto p = primary(a, b)) return tamper_ ? tamper_(a, b, std::move(*p)) : std::move(*p);
    if (auto p = primary(b, a)) return skew_literal(tamper_ ? tamper_(b, a, std::move(*p)) : std::move(*p));
    throw UndefinedBracket("no " + std::string(level_name(level_)) + " rule for [" + a.str(labels()) + " _lambda " +
                           b.str(labels()) + "]");
  }

 private:
  using Word = Letters;

  /// sum_k f_{ab}^k X_k[n,m] as raw terms
  void lie_bracket_letter(std::vector<Term>& out, Kind kind, int a, int b, int n, int m, const Scalar& coeff,
                          int lam = 0, int dpow = 0) const {
    for (const auto& [k, v] : L_->bracket_basis(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) {
      out.push_back({lam, 0, Word{GenSymbol::make(kind, static_cast<int>(k), n, m, dpow)}, coeff * v});
    }
  }

  /// Which rule covers (a, b) in this orientation, if any.
  [[nodiscard]] std::optional<LambdaPoly> primary(GenSymbol a, GenSymbol b) const {
    const Kind ka = a.kind(), kb = b.kind();
    if (level_ == Level::Deformed && ka == Kind::J && kb == Kind::J) {
      if (auto p = deformed(a, b)) return p;
      if (deformed(b, a)) return std::nullopt;
      throw UndefinedBracket("no deformed rule for [" + a.str(labels()) + " _lambda " + b.str(labels()) +
                             "] or its reverse");
    }
    // J-I pairs outside the deformed families keep their undeformed value
    if (level_ == Level::Deformed && ka == Kind::J && kb == Kind::I) {
      if (auto p = deformed(a, b)) return p;
    }
    if (ka == Kind::J && kb == Kind::J) return current_rule(a, b, Kind::J);
    if (ka == Kind::J && kb == Kind::I) return current_rule(a, b, Kind::I);
    if (ka == Kind::I && kb == Kind::I) return LambdaPoly{};
    if (level_ == Level::Base) return std::nullopt;
    if (ka == Kind::J && kb == Kind::E) return je_rule(a, b);
    if (ka == Kind::J && kb == Kind::F) return jf_rule(a, b);
    const bool ef_a = ka == Kind::E || ka == Kind::F;
    const bool ef_b = kb == Kind::E || kb == Kind::F;
    if ((ef_a && (ef_b || kb == Kind::I)) || (ka == Kind::I && ef_b)) return LambdaPoly{};
    return std::nullopt;
  }

  // [J_a[m,n] X_b[t,u]] = X_{[a,b]}[m+t, n+u]
  [[nodiscard]] LambdaPoly current_rule(GenSymbol a, GenSymbol b, Kind out_kind) const {
    std::vector<Term> out;
    lie_bracket_letter(out, out_kind, a.label(), b.label(), a.n() + b.n(), a.m() + b.m(), Scalar(Rational(1)));
    return LambdaPoly::from_terms(std::move(out));
  }

  // [J_a[m,n] E[t,u]] = beta (u m - t n)/(t+u) I_a[m+t-1, n+u-1]
  [[nodiscard]] LambdaPoly je_rule(GenSymbol a, GenSymbol e) const {
    const int m = a.n(), n = a.m(), t = e.n(), u = e.m();
    const Rational c(u * m - t * n, t + u);
    const int p = m + t - 1, q = n + u - 1;
    if (p < 0 || q < 0) {
      if (!c.is_zero()) throw RuleSetError("nonzero coefficient on a negative bidegree in [" + a.str(labels()) + " _lambda " + e.str(labels()) + "]");
      return {};
    }
    return LambdaPoly::letter(GenSymbol::I(a.label(), p, q), beta_ * c);
  }

  // [J_a[m,n] F[t,u]] = -beta (lambda + (m+n)/(t+u+2) (lambda + d)) I_a[m+t, n+u]
  [[nodiscard]] LambdaPoly jf_rule(GenSymbol a, GenSymbol f) const {
    const int m = a.n(), n = a.m(), t = f.n(), u = f.m();
    const Rational r(m + n, t + u + 2);
    const GenSymbol i0 = GenSymbol::I(a.label(), m + t, n + u);
    std::vector<Term> out;
    out.push_back({1, 0, Word{i0}, -beta_ * (Rational(1) + r)});
    out.push_back({0, 0, Word{i0.derived()}, -beta_ * r});
    return LambdaPoly::from_terms(std::move(out));
  }

  /// The deformed families, in the orientation they are written.
  [[nodiscard]] std::optional<LambdaPoly> deformed(GenSymbol a, GenSymbol b) const {
    if (a.kind() != Kind::J) return std::nullopt;
    const int la = a.label(), lb = b.label();
    std::vector<Term> out;
    if (b.kind() == Kind::J) {
      if (a.n() == 1 && a.m() == 0 && b.n() == 0 && b.m() == 1) {
        const Rational ab = L_->pairing_matrix()(static_cast<std::size_t>(la), static_cast<std::size_t>(lb));
        lie_bracket_letter(out, Kind::J, la, lb, 1, 1, Scalar(Rational(1)));
        if (!ab.is_zero()) {
          // -beta (a,b) ((2 lambda + d) E[1,1] + F[0,0])
          out.push_back({1, 0, Word{GenSymbol::E(1, 1)}, beta_ * Rational(-2) * ab});
          out.push_back({0, 0, Word{GenSymbol::E(1, 1, 1)}, -beta_ * ab});
          out.push_back({0, 0, Word{GenSymbol::F(0, 0)}, -beta_ * ab});
        }
        // D (2 lambda + d) I_{[a,b]}[0,0]
        lie_bracket_letter(out, Kind::I, la, lb, 0, 0, D_ * Rational(2), 1);
        lie_bracket_letter(out, Kind::I, la, lb, 0, 0, D_, 0, 1);
        add_casimir(out, la, lb, Kind::J, C_);
        add_casimir(out, lb, la, Kind::J, C_);
        return LambdaPoly::from_terms(std::move(out));
      }
      if (b.n() == 0 && b.m() == 0 && a.n() + a.m() <= 2) {
        const int w = a.n() + a.m();
        const Rational ab = L_->pairing_matrix()(static_cast<std::size_t>(la), static_cast<std::size_t>(lb));
        lie_bracket_letter(out, Kind::J, la, lb, a.n(), a.m(), Scalar(Rational(1)));
        if (w > 0 && !ab.is_zero()) {
          // -beta (a,b)(n+m)(lambda + d) E[n,m]
          const Scalar c = -beta_ * (ab * Rational(w));
          out.push_back({1, 0, Word{GenSymbol::E(a.n(), a.m())}, c});
          out.push_back({0, 0, Word{GenSymbol::E(a.n(), a.m(), 1)}, c});
        }
        return LambdaPoly::from_terms(std::move(out));
      }
      return std::nullopt;
    }
    if (b.kind() == Kind::I) {
      const bool third = a.n() == 1 && a.m() == 0 && b.n() == 0 && b.m() == 1;
      const bool fourth = a.n() == 0 && a.m() == 1 && b.n() == 1 && b.m() == 0;
      if (!third && !fourth) return std::nullopt;
      lie_bracket_letter(out, Kind::I, la, lb, 1, 1, Scalar(Rational(1)));
      add_casimir(out, la, lb, Kind::I, third ? -C_ : C_);
      return LambdaPoly::from_terms(std::move(out));
    }
    return std::nullopt;
  }

  /// coeff * sum_i X_{[x,e_i]}[0,0] I_{[y,e^i]}[0,0]
  void add_casimir(std::vector<Term>& out, int x, int y, Kind first, const Scalar& coeff) const {
    if (coeff.is_zero()) return;
    for (const auto& [k, l, v] : casimir_.at(static_cast<std::size_t>(x) * L_->dim() + static_cast<std::size_t>(y))) {
      out.push_back({0, 0, Word{GenSymbol::make(first, k, 0, 0), GenSymbol::I(l, 0, 0)}, coeff * v});
    }
  }

  /// For every (x, y): the coefficients of e_k (x) e_l in sum_i [x,e_i] (x) [y,e^i].
  void build_casimir_words() {
    const std::size_t n = L_->dim();
    casimir_.assign(n * n, {});
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::vector<Rational> acc(n * n);
        for (std::size_t i = 0; i < n; ++i) {
          const liealg::Element& dual = L_->dual(i);
          for (const auto& [k, v1] : L_->bracket_basis(x, i)) {
            for (std::size_t j = 0; j < n; ++j) {
              if (dual[j].is_zero()) continue;
              for (const auto& [l, v2] : L_->bracket_basis(y, j)) acc[k * n + l] += v1 * dual[j] * v2;
            }
          }
        }
        auto& row = casimir_[x * n + y];
        for (std::size_t kl = 0; kl < n * n; ++kl) {
          if (!acc[kl].is_zero()) row.push_back({static_cast<int>(kl / n), static_cast<int>(kl % n), acc[kl]});
        }
      }
    }
  }

  struct CasimirEntry {
    int k;
    int l;
    Rational v;
  };

  const LieAlgebra* L_;
  Level level_;
  Scalar beta_;
  Scalar D_;
  Scalar C_;
  Tamper tamper_;
  std::vector<std::vector<CasimirEntry>> casimir_;
};

}  // namespace cva::celestial
