#pragma once

// Random words and a reference normal-ordering routine shared by the lambda
// unit tests and the acceptance binary.

#include "cva/lambda/calculus.hpp"
#include "cva/random.hpp"

namespace cva::lambda::fixtures {

/// Random generator for the extended sl2 table with small bidegrees.
inline GenSymbol random_letter(SampleRng& rng, int max_dpow = 1) {
  const int kind = rng.uniform(0, 3);
  const int n = rng.uniform(0, 1), m = rng.uniform(0, 1), d = rng.uniform(0, max_dpow);
  switch (kind) {
    case 0: return GenSymbol::J(rng.uniform(0, 2), n, m, d);
    case 1: return GenSymbol::I(rng.uniform(0, 2), n, m, d);
    case 2: return GenSymbol::E(n, n + m == 0 ? 1 : m, d);
    default: return GenSymbol::F(n, m, d);
  }
}

inline Letters random_word(SampleRng& rng, int length) {
  Letters w;
  for (int i = 0; i < length; ++i) w.push_back(random_letter(rng));
  return w;
}

/// Canonical polynomial with up to four terms, lambda degree <= 3.
inline LambdaPoly random_poly(Calculus& calc, SampleRng& rng) {
  std::vector<Term> raw;
  const int terms = rng.uniform(1, 4);
  for (int i = 0; i < terms; ++i) {
    raw.push_back({rng.uniform(0, 3), 0, random_word(rng, rng.uniform(1, 3)),
                   Scalar(Rational(rng.uniform(-5, 5), rng.uniform(1, 3)))});
  }
  return calc.normal_order(LambdaPoly::from_terms(std::move(raw)));
}

/// Reference normal ordering that always swaps the last descent. Only valid
/// for tables whose brackets are single letters (so N(X, C) = X C literally).
inline LambdaPoly reduce_last_descent(Calculus& calc, const Letters& w) {
  if (is_ordered(w)) return LambdaPoly::word(w);
  std::size_t i = w.size() - 2;
  while (!(w[i + 1] < w[i])) --i;
  Letters swapped = w;
  std::swap(swapped[i], swapped[i + 1]);
  LambdaPoly out = reduce_last_descent(calc, swapped);
  const LambdaPoly corr = calc.integrate_lambda_commutator(calc.bracket(w[i], w[i + 1]));
  for (const auto& t : corr.terms()) {
    if (t.word.size() != 1) throw UsageError("reduce_last_descent needs single-letter brackets");
    Letters v(w.begin(), w.begin() + static_cast<long>(i));
    v.insert(v.end(), t.word.begin(), t.word.end());
    v.insert(v.end(), w.begin() + static_cast<long>(i) + 2, w.end());
    out += reduce_last_descent(calc, v) * t.coeff;
  }
  return out;
}

}  // namespace cva::lambda::fixtures
