#pragma once

// Jacobi defects of generator triples, the constant solver for the deformed
// table, the closed-form constants, and the undeformed Jacobi sweep.

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cva/celestial/rules.hpp"
#include "cva/random.hpp"
#include "cva/report.hpp"

namespace cva::celestial {

using lambda::Calculus;
using lambda::CalculusStats;
using lambda::JacobiTerms;

struct JacobiDefect {
  std::array<GenSymbol, 3> triple;
  JacobiTerms terms;
  [[nodiscard]] const LambdaPoly& defect() const { return terms.defect; }
};

inline std::string triple_str(const std::array<GenSymbol, 3>& t, const std::vector<std::string>* labels) {
  return "(" + t[0].str(labels) + ", " + t[1].str(labels) + ", " + t[2].str(labels) + ")";
}

inline JacobiDefect jacobi_defect(Calculus& calc, GenSymbol a, GenSymbol b, GenSymbol c) {
  try {
    return {{a, b, c}, calc.jacobi(a, b, c)};
  } catch (const UndefinedBracket& e) {
    throw UndefinedBracket(std::string(e.what()) + "\n  while computing the Jacobi defect of " +
                           triple_str({a, b, c}, calc.labels()));
  }
}

/// Checks [b_lambda a] = skew [a_lambda b] in canonical form for all pairs
/// of the given generators whose brackets are defined.
inline Report check_skew_consistency(Calculus& calc, const std::vector<GenSymbol>& gens, const std::string& algebra) {
  Report r{"skew_consistency", algebra, 0, 0, true, std::nullopt};
  for (GenSymbol a : gens) {
    for (GenSymbol b : gens) {
      LambdaPoly ab, ba;
      try {
        ab = calc.bracket(a, b);
        ba = calc.bracket(b, a);
      } catch (const UndefinedBracket&) {
        continue;
      }
      ++r.samples;
      if (!(calc.skew(ab) == ba)) r.fail("[" + a.str(calc.labels()) + " _lambda " + b.str(calc.labels()) + "]");
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Closed forms

inline bool is_admissible(const std::string& name) {
  static const std::set<std::string> admissible{"A1", "A2", "D4", "G2", "F4", "E6", "E7", "E8"};
  return admissible.count(name) > 0;
}

/// (D, C) = (-beta^2 (2+dim)/(20 h), 3 beta^2 (2+dim)/(20 h^2)).
inline std::pair<Scalar, Scalar> closed_form_constants(const LieAlgebra& L, const Scalar& beta = Scalar::var(Param::Beta)) {
  if (!is_admissible(L.name())) throw DomainError(L.name() + " is not in the admissible list");
  const Rational dim(static_cast<std::int64_t>(L.dim()));
  const Rational h(L.dual_coxeter());
  const Scalar b2 = beta * beta;
  return {b2 * (-(Rational(2) + dim) / (Rational(20) * h)), b2 * (Rational(3) * (Rational(2) + dim) / (Rational(20) * h * h))};
}

/// (D, C) = (-beta^2/(8 h alpha), 3 beta^2/(8 h^2 alpha)).
inline std::pair<Scalar, Scalar> constants_from_alpha(const LieAlgebra& L, const Rational& alpha,
                                                      const Scalar& beta = Scalar::var(Param::Beta)) {
  if (alpha.is_zero()) throw DomainError("alpha must be nonzero");
  const Rational h(L.dual_coxeter());
  const Scalar b2 = beta * beta;
  return {b2 * (Rational(-1) / (Rational(8) * h * alpha)), b2 * (Rational(3) / (Rational(8) * h * h * alpha))};
}

// ---------------------------------------------------------------------------
// Constant solver

enum class SolutionStatus { Unique, TrivialOnly, Inconsistent, Underdetermined };

inline const char* status_name(SolutionStatus s) {
  switch (s) {
    case SolutionStatus::Unique: return "unique";
    case SolutionStatus::TrivialOnly: return "trivial_only";
    case SolutionStatus::Inconsistent: return "inconsistent";
    case SolutionStatus::Underdetermined: return "underdetermined";
  }
  return "?";
}

struct ConstantSolution {
  SolutionStatus status = SolutionStatus::Underdetermined;
  std::optional<Rational> D_over_beta2;
  std::optional<Rational> C_over_beta2;
  std::size_t triples = 0;
  std::size_t rank = 0;
  bool sampled = false;
};

/// Row echelon basis of the constraint rows over (beta^2, D, C). The span is
/// independent of the order rows arrive in.
class ConstraintSpan {
 public:
  using Row = std::array<Rational, 3>;

  void add(Row r) {
    for (const Row& b : basis_) {
      const std::size_t p = pivot(b);
      if (!r[p].is_zero()) {
        const Rational f = r[p];
        for (std::size_t i = 0; i < 3; ++i) r[i] -= f * b[i];
      }
    }
    const std::size_t p = pivot(r);
    if (p == 3) return;
    const Rational inv = Rational(1) / r[p];
    for (auto& x : r) x *= inv;
    for (Row& b : basis_) {
      if (!b[p].is_zero()) {
        const Rational f = b[p];
        for (std::size_t i = 0; i < 3; ++i) b[i] -= f * r[i];
      }
    }
    basis_.push_back(r);
  }
  [[nodiscard]] std::size_t rank() const { return basis_.size(); }
  [[nodiscard]] const std::vector<Row>& basis() const { return basis_; }

  /// A spanning vector of the null space when the rank is 2.
  [[nodiscard]] Row kernel_vector() const {
    if (basis_.size() != 2) throw UsageError("kernel_vector needs rank 2");
    std::array<bool, 3> is_pivot{false, false, false};
    for (const Row& b : basis_) is_pivot[pivot(b)] = true;
    std::size_t free = 0;
    while (is_pivot[free]) ++free;
    Row v{Rational(0), Rational(0), Rational(0)};
    v[free] = Rational(1);
    for (const Row& b : basis_) v[pivot(b)] = -b[free];
    return v;
  }

 private:
  static std::size_t pivot(const Row& r) {
    std::size_t p = 0;
    while (p < 3 && r[p].is_zero()) ++p;
    return p;
  }
  std::vector<Row> basis_;
};

inline ConstraintSpan::Row constraint_row(const Scalar& s) {
  static const Monomial b2(2, 0, 0), d(0, 1, 0), c(0, 0, 1);
  for (const auto& [m, v] : s.terms()) {
    if (!(m == b2 || m == d || m == c)) {
      throw ModelError("defect coefficient " + s.str() + " leaves span{beta^2, D, C}");
    }
  }
  return {s.coefficient(b2), s.coefficient(d), s.coefficient(c)};
}

/// The triples (J_i[1,0], J_j[0,1], J_k[0,0]) in index order.
inline std::array<GenSymbol, 3> solve_triple(std::size_t dim, std::size_t index) {
  const auto i = static_cast<int>(index / (dim * dim)), j = static_cast<int>((index / dim) % dim),
             k = static_cast<int>(index % dim);
  return {GenSymbol::J(i, 1, 0), GenSymbol::J(j, 0, 1), GenSymbol::J(k, 0, 0)};
}

struct SolveOptions {
  std::uint64_t seed = 0;
  std::size_t sample_threshold_dim = 30;
  std::size_t sample_size = 500;
  std::ostream* progress = nullptr;
  CalculusStats* stats = nullptr;
};

namespace detail {

inline void add_defect_rows(ConstraintSpan& span, const LambdaPoly& defect) {
  for (const auto& t : defect.terms()) span.add(constraint_row(t.coeff));
}

inline ConstantSolution classify_span(const ConstraintSpan& span) {
  ConstantSolution out;
  out.rank = span.rank();
  if (span.rank() == 3) {
    out.status = SolutionStatus::TrivialOnly;
  } else if (span.rank() == 2) {
    const auto v = span.kernel_vector();
    if (v[0].is_zero()) {
      out.status = SolutionStatus::Inconsistent;
    } else {
      out.status = SolutionStatus::Unique;
      out.D_over_beta2 = v[1] / v[0];
      out.C_over_beta2 = v[2] / v[0];
    }
  }
  return out;
}

inline ConstantSolution solve_on(Calculus& calc, std::size_t dim, const std::vector<std::size_t>& indices,
                                 std::ostream* progress) {
  ConstraintSpan span;
  std::size_t done = 0;
  for (std::size_t idx : indices) {
    const auto t = solve_triple(dim, idx);
    add_defect_rows(span, jacobi_defect(calc, t[0], t[1], t[2]).defect());
    if (progress && ++done % 2000 == 0) *progress << "  solve: " << done << "/" << indices.size() << " triples\n";
  }
  ConstantSolution out = classify_span(span);
  out.triples = indices.size();
  return out;
}

inline std::vector<std::size_t> sample_indices(std::size_t total, std::size_t count, SampleRng& rng) {
  std::vector<std::size_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(static_cast<std::size_t>(rng.next() % total));
  return out;
}

}  // namespace detail

/// Solves the Jacobi identities of the deformed table for D, C as multiples
/// of beta^2, over the triples (J[1,0], J[0,1], J[0,0]).
inline ConstantSolution solve_constants(const LieAlgebra& L, const SolveOptions& opt = {}) {
  const RuleSet rules(L, Level::Deformed);
  Calculus calc(rules);
  const std::size_t dim = L.dim();
  const std::size_t total = dim * dim * dim;
  ConstantSolution out;
  if (dim > opt.sample_threshold_dim) {
    std::uint64_t tag = 0x736f6c7665ULL;
    for (char ch : L.name()) tag = tag * 131 + static_cast<unsigned char>(ch);
    SampleRng rng(derive_seed(opt.seed, tag));
    const auto first = detail::sample_indices(total, opt.sample_size, rng);
    const auto second = detail::sample_indices(total, opt.sample_size, rng);
    const ConstantSolution a = detail::solve_on(calc, dim, first, opt.progress);
    const ConstantSolution b = detail::solve_on(calc, dim, second, opt.progress);
    if (a.status == b.status && a.D_over_beta2 == b.D_over_beta2 && a.C_over_beta2 == b.C_over_beta2) {
      out = a;
      out.triples = a.triples + b.triples;
      out.sampled = true;
    }
  }
  if (out.triples == 0) {
    std::vector<std::size_t> all(total);
    for (std::size_t i = 0; i < total; ++i) all[i] = i;
    out = detail::solve_on(calc, dim, all, opt.progress);
  }
  if (opt.stats) *opt.stats = calc.stats();
  return out;
}

/// Recomputes every solver triple with D = d beta^2, C = c beta^2 and
/// reports whether all defects vanish identically.
inline Report verify_constants(const LieAlgebra& L, const Rational& d, const Rational& c, CalculusStats* stats = nullptr) {
  const Scalar beta = Scalar::var(Param::Beta);
  const RuleSet rules(L, Level::Deformed, beta, beta * beta * d, beta * beta * c);
  Calculus calc(rules);
  const std::size_t dim = L.dim();
  Report r{"substituted_defects", L.name(), 0, 0, true, std::nullopt};
  for (std::size_t idx = 0; idx < dim * dim * dim; ++idx) {
    const auto t = solve_triple(dim, idx);
    const JacobiDefect j = jacobi_defect(calc, t[0], t[1], t[2]);
    ++r.samples;
    if (!j.defect().is_zero()) r.fail(triple_str(j.triple, calc.labels()) + "\n" + j.defect().dump(calc.labels()));
  }
  if (stats) *stats = calc.stats();
  return r;
}

// ---------------------------------------------------------------------------
// Undeformed sweep

/// J_a[n,m], I_a[n,m], E[n,m] (not [0,0]) and F[n,m] with n, m <= grid.
inline std::vector<GenSymbol> sweep_generators(const LieAlgebra& L, int grid, bool with_ef = true) {
  std::vector<GenSymbol> out;
  for (Kind k : {Kind::J, Kind::I}) {
    for (std::size_t a = 0; a < L.dim(); ++a) {
      for (int n = 0; n <= grid; ++n) {
        for (int m = 0; m <= grid; ++m) out.push_back(GenSymbol::make(k, static_cast<int>(a), n, m));
      }
    }
  }
  if (with_ef) {
    for (int n = 0; n <= grid; ++n) {
      for (int m = 0; m <= grid; ++m) {
        if (n + m > 0) out.push_back(GenSymbol::E(n, m));
      }
    }
    for (int n = 0; n <= grid; ++n) {
      for (int m = 0; m <= grid; ++m) out.push_back(GenSymbol::F(n, m));
    }
  }
  return out;
}

struct SweepOptions {
  bool with_ef = true;
  Scalar beta = Scalar::var(Param::Beta);
  std::ostream* progress = nullptr;
  CalculusStats* stats = nullptr;
  RuleSet::Tamper tamper;
};

/// Jacobi defect of every ordered triple of sweep generators under the
/// undeformed table; passes iff all vanish.
inline Report verify_extended_jacobi(const LieAlgebra& L, int grid, const SweepOptions& opt = {}) {
  if (grid < 0) throw ConfigurationError("grid must be nonnegative");
  RuleSet rules(L, opt.with_ef ? Level::Extended : Level::Base, opt.beta);
  if (opt.tamper) rules.set_tamper(opt.tamper);
  Calculus calc(rules);
  const auto gens = sweep_generators(L, grid, opt.with_ef);
  Report r{"extended_jacobi", L.name(), 0, 0, true, std::nullopt};
  std::size_t row = 0;
  for (GenSymbol a : gens) {
    for (GenSymbol b : gens) {
      for (GenSymbol c : gens) {
        const JacobiDefect j = jacobi_defect(calc, a, b, c);
        ++r.samples;
        if (!j.defect().is_zero() && r.pass) {
          r.fail(triple_str(j.triple, calc.labels()) + "\n" + j.defect().dump(calc.labels()));
        }
      }
    }
    if (opt.progress && ++row % 16 == 0) *opt.progress << "  jacobi " << L.name() << ": " << row << "/" << gens.size() << '\n';
  }
  if (opt.stats) *opt.stats = calc.stats();
  return r;
}

}  // namespace cva::celestial
