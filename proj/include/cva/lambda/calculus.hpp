#pragma once

// lambda-brackets on the tensor algebra of a non-linear conformal algebra:
// sesquilinear extension of a generator table, the normally ordered
// product N, the extended bracket L, and normal ordering modulo M(R).
//
// All results are returned in canonical form: every word normally ordered
// (letters sorted, commutator corrections added), every d distributed onto
// letters.

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cva/errors.hpp"
#include "cva/lambda/poly.hpp"
#include "cva/lambda/symbol.hpp"
#include "cva/scalar.hpp"

namespace cva::lambda {

/// Brackets of underived generators. Implementations throw UndefinedBracket
/// for pairs they do not cover.
class BracketRules {
 public:
  virtual ~BracketRules() = default;
  [[nodiscard]] virtual LambdaPoly generator_bracket(GenSymbol a, GenSymbol b) const = 0;
  [[nodiscard]] virtual const std::vector<std::string>* labels() const { return nullptr; }
};

struct CalculusStats {
  std::uint64_t left_bracket_invocations = 0;
  std::uint64_t left_bracket_path_checks = 0;
  std::uint64_t left_bracket_disagreements = 0;
  std::uint64_t swaps = 0;
};

struct JacobiTerms {
  LambdaPoly term1;  // [a_lambda [b_mu c]]
  LambdaPoly term2;  // [b_mu [a_lambda c]]
  LambdaPoly term3;  // [[a_lambda b]_{lambda+mu} c]
  LambdaPoly defect;
};

namespace detail {

inline bool is_one(const Scalar& s) {
  return s.terms().size() == 1 && s.terms()[0].first.is_one() && s.terms()[0].second == Rational(1);
}

class Accumulator {
 public:
  void add(const LambdaPoly& p, const Scalar& s, int dl = 0, int dm = 0) {
    if (s.is_zero()) return;
    const bool unit = is_one(s);
    for (const auto& t : p.terms()) raw_.push_back({t.lam + dl, t.mu + dm, t.word, unit ? t.coeff : t.coeff * s});
  }
  void add(const LambdaPoly& p, const Rational& r, int dl = 0, int dm = 0) {
    if (r.is_zero()) return;
    const bool unit = r == Rational(1);
    for (const auto& t : p.terms()) {
      raw_.push_back({t.lam + dl, t.mu + dm, t.word, unit ? t.coeff : t.coeff * r});
    }
  }
  void add_word(Letters w, Scalar s, int dl = 0, int dm = 0) {
    if (!s.is_zero()) raw_.push_back({dl, dm, std::move(w), std::move(s)});
  }
  LambdaPoly finish() { return LambdaPoly::from_terms(std::move(raw_)); }

 private:
  std::vector<Term> raw_;
};

struct PairHash {
  std::size_t operator()(const std::pair<Letters, Letters>& p) const {
    return LettersHash{}(p.first) * 0x9e3779b97f4a7c15ULL ^ LettersHash{}(p.second);
  }
};
struct KeyPairHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& p) const {
    return static_cast<std::size_t>(p.first * 0x9e3779b97f4a7c15ULL ^ (p.second + 0x632be59bd9b4e019ULL));
  }
};

inline Letters concat(const Letters& a, const Letters& b) {
  Letters w;
  w.reserve(a.size() + b.size());
  w.insert(w.end(), a.begin(), a.end());
  w.insert(w.end(), b.begin(), b.end());
  return w;
}
inline Letters prepend(GenSymbol g, const Letters& b) {
  Letters w;
  w.reserve(b.size() + 1);
  w.push_back(g);
  w.insert(w.end(), b.begin(), b.end());
  return w;
}
inline Letters tail(const Letters& w, std::size_t from) { return Letters(w.begin() + static_cast<long>(from), w.end()); }

/// Literal T^j of a word in T(R) (Leibniz rule, no reordering).
inline LambdaPoly derive_literal(const Letters& w, int j) {
  LambdaPoly cur = LambdaPoly::word(w);
  for (int step = 0; step < j; ++step) {
    std::vector<Term> next;
    for (const auto& t : cur.terms()) {
      for (std::size_t i = 0; i < t.word.size(); ++i) {
        Letters d = t.word;
        d[i] = d[i].derived();
        next.push_back({0, 0, std::move(d), t.coeff});
      }
    }
    cur = LambdaPoly::from_terms(std::move(next));
  }
  return cur;
}

}  // namespace detail

class Calculus {
 public:
  explicit Calculus(const BracketRules& rules, int depth_limit = 400) : rules_(&rules), depth_limit_(depth_limit) {}

  [[nodiscard]] const CalculusStats& stats() const { return stats_; }
  [[nodiscard]] const std::vector<std::string>* labels() const { return rules_->labels(); }

  /// [a_lambda b] for generators with derivatives:
  /// [d^p a_lambda d^q b] = (-lambda)^p (lambda+T)^q [a_lambda b].
  const LambdaPoly& bracket(GenSymbol a, GenSymbol b) {
    const auto key = std::make_pair(a.key(), b.key());
    if (auto it = bracket_memo_.find(key); it != bracket_memo_.end()) return it->second;
    const LambdaPoly& base = generator_bracket(a.underived(), b.underived());
    const int p = a.dpow();
    const int q = b.dpow();
    detail::Accumulator acc;
    for (const auto& t : base.terms()) {
      for (int j = 0; j <= q; ++j) {
        Rational c = binomial(q, j);
        if (p % 2) c = -c;
        acc.add(derivative(t.word, j), t.coeff * c, t.lam + q - j + p);
      }
    }
    return bracket_memo_.emplace(key, acc.finish()).first->second;
  }

  /// Canonical image of a word in U(R).
  const LambdaPoly& normal_order(const Letters& w) {
    if (auto it = order_memo_.find(w); it != order_memo_.end()) return it->second;
    if (is_ordered(w)) return order_memo_.emplace(w, LambdaPoly::word(w)).first->second;
    DepthGuard guard(*this);
    std::size_t i = 0;
    while (!(w[i + 1] < w[i])) ++i;
    ++stats_.swaps;
    detail::Accumulator acc;
    Letters swapped = w;
    std::swap(swapped[i], swapped[i + 1]);
    acc.add(normal_order(swapped), Rational(1));
    const LambdaPoly corr = commutator(w[i], w[i + 1]);
    if (!corr.is_zero()) {
      const Letters prefix(w.begin(), w.begin() + static_cast<long>(i));
      const Letters suffix = detail::tail(w, i + 2);
      for (const auto& x : corr.terms()) {
        const LambdaPoly y = product(x.word, suffix);
        for (const auto& yt : y.terms()) acc.add(normal_order(detail::concat(prefix, yt.word)), x.coeff * yt.coeff);
      }
    }
    return order_memo_.emplace(w, acc.finish()).first->second;
  }

  /// Normal-orders every word of p.
  LambdaPoly normal_order(const LambdaPoly& p) {
    detail::Accumulator acc;
    for (const auto& t : p.terms()) acc.add(normal_order(t.word), t.coeff, t.lam, t.mu);
    return acc.finish();
  }

  /// T^j of a word, normally ordered.
  const LambdaPoly& derivative(const Letters& w, int j) {
    if (j == 0) return normal_order(w);
    auto key = std::make_pair(w, Letters{GenSymbol::F(0, 0, j)});
    if (auto it = derivative_memo_.find(key); it != derivative_memo_.end()) return it->second;
    LambdaPoly out = normal_order(detail::derive_literal(w, j));
    return derivative_memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  /// T^j applied to every word of p.
  LambdaPoly total_derivative(const LambdaPoly& p, int j = 1) {
    detail::Accumulator acc;
    for (const auto& t : p.terms()) acc.add(derivative(t.word, j), t.coeff, t.lam, t.mu);
    return acc.finish();
  }

  /// p(lambda) -> -p(-lambda-T) for a lambda-only polynomial.
  LambdaPoly skew(const LambdaPoly& p) {
    detail::Accumulator acc;
    for (const auto& t : p.terms()) {
      if (t.mu != 0) throw UsageError("skew expects a lambda-only polynomial");
      const int k = t.lam;
      for (int j = 0; j <= k; ++j) {
        Rational c = binomial(k, j);
        if (k % 2 == 0) c = -c;
        acc.add(derivative(t.word, j), t.coeff * c, k - j);
      }
    }
    return acc.finish();
  }

  /// Integral of p over lambda from -T to 0: lambda^k -> (-1)^k T^{k+1} / (k+1).
  LambdaPoly integrate_lambda_commutator(const LambdaPoly& p) {
    detail::Accumulator acc;
    for (const auto& t : p.terms()) {
      if (t.mu != 0) throw UsageError("integrate_lambda_commutator expects a lambda-only polynomial");
      Rational c(1, t.lam + 1);
      if (t.lam % 2) c = -c;
      acc.add(derivative(t.word, t.lam + 1), t.coeff * c);
    }
    return acc.finish();
  }

  /// N(A, C), the normally ordered product of two words.
  const LambdaPoly& product(const Letters& A, const Letters& C) {
    if (A.empty()) return normal_order(C);
    if (C.empty()) return normal_order(A);
    if (A.size() == 1) return normal_order(detail::prepend(A[0], C));
    auto key = std::make_pair(A, C);
    if (auto it = product_memo_.find(key); it != product_memo_.end()) return it->second;
    DepthGuard guard(*this);
    const GenSymbol a = A[0];
    const Letters B = detail::tail(A, 1);
    detail::Accumulator acc;
    // N(a, N(B, C))
    const LambdaPoly bc = product(B, C);
    for (const auto& t : bc.terms()) acc.add(normal_order(detail::prepend(a, t.word)), t.coeff);
    // N(int_0^T a, L_lambda(B, C))
    const LambdaPoly lbc = bracket_words(B, C);
    for (const auto& t : lbc.terms()) {
      acc.add(normal_order(detail::prepend(a.derived(t.lam + 1), t.word)), t.coeff * Rational(1, t.lam + 1));
    }
    // N(int_0^T B, L_lambda(a, C))
    const LambdaPoly lac = wick(a, C);
    for (const auto& t : lac.terms()) {
      const LambdaPoly tb = detail::derive_literal(B, t.lam + 1);
      for (const auto& b : tb.terms()) acc.add(product(b.word, t.word), t.coeff * b.coeff * Rational(1, t.lam + 1));
    }
    return product_memo_.emplace(std::move(key), acc.finish()).first->second;
  }

  /// L_lambda(A, C) for words A, C.
  const LambdaPoly& bracket_words(const Letters& A, const Letters& C) {
    if (A.empty() || C.empty()) return zero_;
    if (A.size() == 1) return wick(A[0], C);
    auto key = std::make_pair(A, C);
    if (auto it = words_memo_.find(key); it != words_memo_.end()) return it->second;
    DepthGuard guard(*this);
    const GenSymbol a = A[0];
    const Letters B = detail::tail(A, 1);
    detail::Accumulator acc;
    // N(e^{T d_lambda} a, L_lambda(B, C))
    const LambdaPoly lbc = bracket_words(B, C);
    for (const auto& t : lbc.terms()) {
      for (int j = 0; j <= t.lam; ++j) {
        acc.add(normal_order(detail::prepend(a.derived(j), t.word)), t.coeff * binomial(t.lam, j), t.lam - j);
      }
    }
    // N(e^{T d_lambda} B, L_lambda(a, C))
    const LambdaPoly lac = wick(a, C);
    for (const auto& t : lac.terms()) {
      for (int j = 0; j <= t.lam; ++j) {
        const LambdaPoly tb = detail::derive_literal(B, j);
        const Scalar c = t.coeff * binomial(t.lam, j);
        for (const auto& b : tb.terms()) acc.add(product(b.word, t.word), c * b.coeff, t.lam - j);
      }
    }
    // int_0^lambda L_mu(B, L_{lambda-mu}(a, C)) dmu; the beta integral gives k! j! / (k+j+1)!
    for (const auto& t : lac.terms()) {
      const LambdaPoly inner = bracket_words(B, t.word);
      for (const auto& s : inner.terms()) {
        const Rational beta = factorial(t.lam) * factorial(s.lam) / factorial(t.lam + s.lam + 1);
        acc.add_word(s.word, t.coeff * s.coeff * beta, t.lam + s.lam + 1);
      }
    }
    return words_memo_.emplace(std::move(key), acc.finish()).first->second;
  }

  /// [a_lambda W] by the Wick formula, recursing on the length of W.
  const LambdaPoly& wick(GenSymbol a, const Letters& W) {
    if (W.empty()) return zero_;
    if (W.size() == 1) return bracket(a, W[0]);
    auto key = std::make_pair(Letters{a}, W);
    if (auto it = wick_memo_.find(key); it != wick_memo_.end()) return it->second;
    DepthGuard guard(*this);
    const GenSymbol b = W[0];
    const Letters C = detail::tail(W, 1);
    detail::Accumulator acc;
    const LambdaPoly ab = bracket(a, b);
    // N([a_lambda b], C)
    for (const auto& t : ab.terms()) acc.add(product(t.word, C), t.coeff, t.lam);
    // N(b, [a_lambda C])
    const LambdaPoly ac = wick(a, C);
    for (const auto& t : ac.terms()) acc.add(normal_order(detail::prepend(b, t.word)), t.coeff, t.lam);
    // int_0^lambda [[a_lambda b]_mu C] dmu
    for (const auto& t : ab.terms()) {
      const LambdaPoly inner = bracket_words(t.word, C);
      for (const auto& s : inner.terms()) {
        acc.add_word(s.word, t.coeff * s.coeff * Rational(1, s.lam + 1), t.lam + s.lam + 1);
      }
    }
    return wick_memo_.emplace(std::move(key), acc.finish()).first->second;
  }

  /// [W_lambda c], computed by the right Wick recursion and checked against
  /// skew symmetry applied to [c_lambda W].
  const LambdaPoly& left_bracket(const Letters& W, GenSymbol c) {
    ++stats_.left_bracket_invocations;
    auto key = std::make_pair(W, Letters{c});
    if (auto it = left_memo_.find(key); it != left_memo_.end()) return it->second;
    LambdaPoly direct = bracket_words(W, Letters{c});
    const LambdaPoly mirrored = skew(wick(c, W));
    ++stats_.left_bracket_path_checks;
    if (!(direct == mirrored)) {
      ++stats_.left_bracket_disagreements;
      throw InternalConsistencyError("left_bracket paths disagree for [" + word_str(W, labels()) + " _lambda " +
                                     c.str(labels()) + "]\nright Wick:\n" + direct.dump(labels()) +
                                     "skew of Wick:\n" + mirrored.dump(labels()));
    }
    return left_memo_.emplace(std::move(key), std::move(direct)).first->second;
  }

  /// The three Jacobi terms and their defect (1) - (2) - (3).
  JacobiTerms jacobi(GenSymbol a, GenSymbol b, GenSymbol c) {
    JacobiTerms out;
    {
      detail::Accumulator acc;
      const LambdaPoly inner = bracket(b, c);
      for (const auto& t : inner.terms()) acc.add(wick(a, t.word), t.coeff, 0, t.lam);
      out.term1 = acc.finish();
    }
    {
      detail::Accumulator acc;
      const LambdaPoly inner = bracket(a, c);
      for (const auto& t : inner.terms()) acc.add(wick(b, t.word).lambda_as_mu(), t.coeff, t.lam, 0);
      out.term2 = acc.finish();
    }
    {
      detail::Accumulator acc;
      const LambdaPoly inner = bracket(a, b);
      for (const auto& t : inner.terms()) acc.add(left_bracket(t.word, c).lambda_to_sum(), t.coeff, t.lam, 0);
      out.term3 = acc.finish();
    }
    out.defect = out.term1 - out.term2 - out.term3;
    return out;
  }

  /// Generator bracket with underived arguments, words normally ordered.
  const LambdaPoly& generator_bracket(GenSymbol a, GenSymbol b) {
    const auto key = std::make_pair(a.key(), b.key());
    if (auto it = generator_memo_.find(key); it != generator_memo_.end()) return it->second;
    DepthGuard guard(*this);
    LambdaPoly raw = rules_->generator_bracket(a, b);
    const int bound = a.weight() + b.weight();
    for (const auto& t : raw.terms()) {
      if (t.mu != 0) throw RuleSetError("generator bracket may not depend on mu");
      if (weight(t.word) >= bound) {
        throw RuleSetError("bracket [" + a.str(labels()) + " _lambda " + b.str(labels()) + "] produces " +
                           word_str(t.word, labels()) + " of weight " + std::to_string(weight(t.word)) +
                           ", not below " + std::to_string(bound));
      }
    }
    LambdaPoly ordered = normal_order(raw);
    return generator_memo_.emplace(key, std::move(ordered)).first->second;
  }

 private:
  class DepthGuard {
   public:
    explicit DepthGuard(Calculus& c) : c_(c) {
      if (++c_.depth_ > c_.depth_limit_) {
        --c_.depth_;
        throw RuleSetError("reduction depth limit exceeded; the rule set is not grading-compatible");
      }
    }
    ~DepthGuard() { --c_.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;

   private:
    Calculus& c_;
  };

  /// int_{-T}^0 [a_lambda b] dlambda
  LambdaPoly commutator(GenSymbol a, GenSymbol b) { return integrate_lambda_commutator(bracket(a, b)); }

  const BracketRules* rules_;
  int depth_limit_;
  int depth_ = 0;
  CalculusStats stats_;
  const LambdaPoly zero_{};
  using KeyPair = std::pair<std::uint64_t, std::uint64_t>;
  using WordPair = std::pair<Letters, Letters>;
  std::unordered_map<KeyPair, LambdaPoly, detail::KeyPairHash> bracket_memo_;
  std::unordered_map<KeyPair, LambdaPoly, detail::KeyPairHash> generator_memo_;
  std::unordered_map<Letters, LambdaPoly, LettersHash> order_memo_;
  std::unordered_map<WordPair, LambdaPoly, detail::PairHash> derivative_memo_;
  std::unordered_map<WordPair, LambdaPoly, detail::PairHash> product_memo_;
  std::unordered_map<WordPair, LambdaPoly, detail::PairHash> words_memo_;
  std::unordered_map<WordPair, LambdaPoly, detail::PairHash> wick_memo_;
  std::unordered_map<WordPair, LambdaPoly, detail::PairHash> left_memo_;
};

}  // namespace cva::lambda
