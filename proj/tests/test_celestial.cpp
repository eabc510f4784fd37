#include <gtest/gtest.h>

#include "cva/adinv/quartic.hpp"
#include "cva/celestial/jacobi.hpp"
#include "cva/liealg/chevalley.hpp"

using namespace cva;
using namespace cva::celestial;
using cva::lambda::Calculus;
using cva::lambda::Term;

namespace cva::lambda {
void PrintTo(const LambdaPoly& p, std::ostream* os) { *os << "\n" << p.dump(); }
}  // namespace cva::lambda

namespace {

const LieAlgebra& sl2() {
  static const LieAlgebra L = liealg::make_algebra("A1");
  return L;
}

constexpr int kH = 0, kE = 1, kF = 2;

const Scalar kBeta = Scalar::var(Param::Beta);
const Scalar kD = Scalar::var(Param::D);
const Scalar kC = Scalar::var(Param::C);

LambdaPoly poly(std::vector<Term> terms) { return LambdaPoly::from_terms(std::move(terms)); }

Letters w(std::initializer_list<GenSymbol> g) { return Letters(g); }

}  // namespace

TEST(BaseRules, Examples) {
  const RuleSet rules(sl2(), Level::Base);
  Calculus calc(rules);
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 1, 2), GenSymbol::J(kF, 3, 4)), LambdaPoly::letter(GenSymbol::J(kH, 4, 6)));
  EXPECT_EQ(calc.bracket(GenSymbol::J(kH, 1, 2), GenSymbol::J(kE, 0, 1)),
            LambdaPoly::letter(GenSymbol::J(kE, 1, 3), Scalar(Rational(2))));
  EXPECT_TRUE(calc.bracket(GenSymbol::I(kE, 1, 0), GenSymbol::I(kF, 0, 3)).is_zero());
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 0, 0), GenSymbol::I(kF, 0, 0)), LambdaPoly::letter(GenSymbol::I(kH, 0, 0)));
  EXPECT_EQ(calc.bracket(GenSymbol::I(kF, 0, 0), GenSymbol::J(kE, 0, 0)),
            LambdaPoly::letter(GenSymbol::I(kH, 0, 0), Scalar(Rational(-1))));
  EXPECT_THROW(calc.bracket(GenSymbol::J(kE, 0, 0), GenSymbol::E(0, 1)), UndefinedBracket);
}

TEST(ExtendedRules, Examples) {
  const RuleSet rules(sl2(), Level::Extended);
  Calculus calc(rules);
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 1, 0), GenSymbol::E(0, 1)), LambdaPoly::letter(GenSymbol::I(kE, 0, 0), kBeta));
  EXPECT_TRUE(calc.bracket(GenSymbol::J(kE, 0, 0), GenSymbol::E(1, 1)).is_zero());
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 0, 0), GenSymbol::F(0, 0)),
            LambdaPoly::letter(GenSymbol::I(kE, 0, 0), -kBeta, 1));
  // (u m - t n)/(t+u) with m,n = 2,1 and t,u = 1,2: (4 - 1)/3
  EXPECT_EQ(calc.bracket(GenSymbol::J(kH, 2, 1), GenSymbol::E(1, 2)), LambdaPoly::letter(GenSymbol::I(kH, 2, 2), kBeta));
  // negative output bidegree only ever carries a zero coefficient
  EXPECT_TRUE(calc.bracket(GenSymbol::J(kH, 0, 3), GenSymbol::E(0, 2)).is_zero());
  // E/F against I, E, F vanish in both orders
  EXPECT_TRUE(calc.bracket(GenSymbol::E(0, 1), GenSymbol::F(2, 0)).is_zero());
  EXPECT_TRUE(calc.bracket(GenSymbol::F(0, 1), GenSymbol::I(kE, 1, 1)).is_zero());
  EXPECT_TRUE(calc.bracket(GenSymbol::I(kE, 1, 1), GenSymbol::E(3, 0)).is_zero());
  EXPECT_TRUE(calc.bracket(GenSymbol::F(0, 0), GenSymbol::F(1, 1)).is_zero());
}

TEST(ExtendedRules, ReversedPairsAreSkewImages) {
  const RuleSet rules(sl2(), Level::Extended);
  Calculus calc(rules);
  // [F_lambda J_a] = -[J_a_{-lambda-d} F] = -beta (1+r) lambda I - beta d I with r = (m+n)/(t+u+2)
  const LambdaPoly got = calc.bracket(GenSymbol::F(0, 0), GenSymbol::J(kE, 1, 1));
  EXPECT_EQ(got, poly({{1, 0, w({GenSymbol::I(kE, 1, 1)}), kBeta * Rational(-2)},
                       {0, 0, w({GenSymbol::I(kE, 1, 1, 1)}), -kBeta}}));
  const Report r = check_skew_consistency(calc, sweep_generators(sl2(), 1), "A1");
  EXPECT_TRUE(r.pass) << r.first_counterexample.value_or("");
  EXPECT_EQ(r.samples, 31u * 31u);
}

TEST(DeformedRules, FirstFamilyOnSl2) {
  const RuleSet rules(sl2(), Level::Deformed);
  Calculus calc(rules);
  // dual basis of sl2 under (h,h)=2, (e,f)=1: h -> h/2, e -> f, f -> e, so
  // sum_i J_[e,e_i] I_[f,e^i] = -2 J_e I_f - J_h I_h and
  // sum_i J_[f,e_i] I_[e,e^i] = -2 J_f I_e - J_h I_h
  const GenSymbol jh = GenSymbol::J(kH, 0, 0), je = GenSymbol::J(kE, 0, 0), jf = GenSymbol::J(kF, 0, 0);
  const GenSymbol ih = GenSymbol::I(kH, 0, 0), ie = GenSymbol::I(kE, 0, 0), i_f = GenSymbol::I(kF, 0, 0);
  const LambdaPoly expected = poly({
      {0, 0, w({GenSymbol::J(kH, 1, 1)}), Scalar(Rational(1))},
      {1, 0, w({GenSymbol::E(1, 1)}), kBeta * Rational(-2)},
      {0, 0, w({GenSymbol::E(1, 1, 1)}), -kBeta},
      {0, 0, w({GenSymbol::F(0, 0)}), -kBeta},
      {1, 0, w({ih}), kD * Rational(2)},
      {0, 0, w({ih.derived()}), kD},
      {0, 0, w({je, i_f}), kC * Rational(-2)},
      {0, 0, w({jf, ie}), kC * Rational(-2)},
      {0, 0, w({jh, ih}), kC * Rational(-2)},
  });
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 1, 0), GenSymbol::J(kF, 0, 1)), expected);
}

TEST(DeformedRules, OtherFamilies) {
  const RuleSet rules(sl2(), Level::Deformed);
  Calculus calc(rules);
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 0, 0), GenSymbol::J(kF, 0, 0)), LambdaPoly::letter(GenSymbol::J(kH, 0, 0)));
  // second family, n+m = 2: -beta (a,b) 2 (lambda + d) E[1,1]
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 1, 1), GenSymbol::J(kF, 0, 0)),
            poly({{0, 0, w({GenSymbol::J(kH, 1, 1)}), Scalar(Rational(1))},
                  {1, 0, w({GenSymbol::E(1, 1)}), kBeta * Rational(-2)},
                  {0, 0, w({GenSymbol::E(1, 1, 1)}), kBeta * Rational(-2)}}));
  // third and fourth families: I_[a,b][1,1] -+ C sum_i I_[a,e_i] I_[b,e^i]
  const GenSymbol ih = GenSymbol::I(kH, 0, 0), ie = GenSymbol::I(kE, 0, 0), i_f = GenSymbol::I(kF, 0, 0);
  const LambdaPoly quad = poly({{0, 0, w({ie, i_f}), Scalar(Rational(-2))}, {0, 0, w({ih, ih}), Scalar(Rational(-1))}});
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 1, 0), GenSymbol::I(kF, 0, 1)),
            LambdaPoly::letter(GenSymbol::I(kH, 1, 1)) - quad * kC);
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 0, 1), GenSymbol::I(kF, 1, 0)),
            LambdaPoly::letter(GenSymbol::I(kH, 1, 1)) + quad * kC);
  EXPECT_THROW(calc.bracket(GenSymbol::J(kE, 1, 0), GenSymbol::J(kF, 1, 0)), UndefinedBracket);
  EXPECT_THROW(calc.bracket(GenSymbol::J(kE, 2, 0), GenSymbol::J(kF, 0, 1)), UndefinedBracket);
  // the reverse orientation of the first family is its skew image
  EXPECT_EQ(calc.bracket(GenSymbol::J(kE, 0, 1), GenSymbol::J(kF, 1, 0)),
            calc.skew(calc.bracket(GenSymbol::J(kF, 1, 0), GenSymbol::J(kE, 0, 1))));
}

TEST(DeformedRules, SkewConsistency) {
  for (const char* name : {"A1", "A2"}) {
    const LieAlgebra L = liealg::make_algebra(name);
    const RuleSet rules(L, Level::Deformed);
    Calculus calc(rules);
    std::vector<GenSymbol> gens;
    for (int a = 0; a < static_cast<int>(L.dim()); ++a) {
      for (auto [n, m] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}, {2, 0}}) {
        gens.push_back(GenSymbol::J(a, n, m));
        gens.push_back(GenSymbol::I(a, n, m));
      }
    }
    gens.push_back(GenSymbol::E(1, 1));
    gens.push_back(GenSymbol::F(0, 0));
    const Report r = check_skew_consistency(calc, gens, name);
    EXPECT_TRUE(r.pass) << r.first_counterexample.value_or("");
    EXPECT_GT(r.samples, 0u);
  }
}

TEST(JacobiDefect, BaseCurrentsVanish) {
  const RuleSet rules(sl2(), Level::Base);
  Calculus calc(rules);
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        EXPECT_TRUE(jacobi_defect(calc, GenSymbol::J(a, 1, 2), GenSymbol::J(b, 0, 1), GenSymbol::J(c, 2, 0))
                        .defect()
                        .is_zero());
      }
    }
  }
}

TEST(JacobiDefect, ExtendedJJEGridVanishes) {
  const RuleSet rules(sl2(), Level::Extended);
  Calculus calc(rules);
  int count = 0;
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n)
      for (int r = 0; r <= 2; ++r)
        for (int s = 0; s <= 2; ++s)
          for (int t = 0; t <= 2; ++t)
            for (int u = 0; u <= 2; ++u) {
              if (t + u == 0) continue;
              for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                  const auto j = jacobi_defect(calc, GenSymbol::J(a, m, n), GenSymbol::J(b, r, s), GenSymbol::E(t, u));
                  ASSERT_TRUE(j.defect().is_zero()) << triple_str(j.triple, nullptr);
                  ++count;
                }
              }
            }
  EXPECT_EQ(count, 81 * 8 * 9);
}

TEST(JacobiDefect, DeformedGenericConstantsGiveLinearNonzeroDefect) {
  const RuleSet rules(sl2(), Level::Deformed);
  Calculus calc(rules);
  const auto j = jacobi_defect(calc, GenSymbol::J(kE, 1, 0), GenSymbol::J(kF, 0, 1), GenSymbol::J(kH, 0, 0));
  ASSERT_FALSE(j.defect().is_zero());
  for (const auto& t : j.defect().terms()) EXPECT_NO_THROW(constraint_row(t.coeff)) << t.coeff;
  EXPECT_EQ(j.terms.defect, j.terms.term1 - j.terms.term2 - j.terms.term3);
}

TEST(JacobiDefect, UndefinedBracketCarriesTheTriple) {
  const RuleSet rules(sl2(), Level::Deformed);
  Calculus calc(rules);
  try {
    (void)jacobi_defect(calc, GenSymbol::J(kE, 2, 0), GenSymbol::J(kF, 0, 1), GenSymbol::J(kH, 0, 0));
    FAIL() << "expected UndefinedBracket";
  } catch (const UndefinedBracket& e) {
    EXPECT_NE(std::string(e.what()).find("(J_e1[2,0], J_f1[0,1], J_h1[0,0])"), std::string::npos) << e.what();
  }
}

TEST(ConstraintSpan, RankKernelAndOrderIndependence) {
  using Row = ConstraintSpan::Row;
  const std::vector<Row> rows{{Rational(1), Rational(8), Rational(0)},
                              {Rational(3), Rational(0), Rational(16)},
                              {Rational(4), Rational(8), Rational(16)}};
  ConstraintSpan fwd, bwd;
  for (const auto& r : rows) fwd.add(r);
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) bwd.add(*it);
  EXPECT_EQ(fwd.rank(), 2u);
  EXPECT_EQ(fwd.basis(), bwd.basis());
  const Row v = fwd.kernel_vector();
  EXPECT_EQ(v[1] / v[0], Rational(-1, 8));
  EXPECT_EQ(v[2] / v[0], Rational(-3, 16));
  EXPECT_THROW(constraint_row(kBeta * kD), ModelError);
  EXPECT_THROW(constraint_row(kBeta), ModelError);
  EXPECT_THROW(constraint_row(Scalar(Rational(1))), ModelError);
}

struct Expected {
  const char* name;
  Rational d;
  Rational c;
};

class SolveConstants : public ::testing::TestWithParam<Expected> {};

TEST_P(SolveConstants, MatchesClosedForm) {
  const auto& [name, d, c] = GetParam();
  const LieAlgebra L = liealg::make_algebra(name);
  lambda::CalculusStats stats;
  SolveOptions opt;
  opt.stats = &stats;
  const ConstantSolution s = solve_constants(L, opt);
  ASSERT_EQ(s.status, SolutionStatus::Unique) << status_name(s.status);
  EXPECT_EQ(*s.D_over_beta2, d);
  EXPECT_EQ(*s.C_over_beta2, c);
  EXPECT_EQ(s.triples, L.dim() * L.dim() * L.dim());
  EXPECT_FALSE(s.sampled);
  EXPECT_EQ(stats.left_bracket_disagreements, 0u);
  const auto [td, tc] = closed_form_constants(L);
  EXPECT_EQ(td, kBeta * kBeta * d);
  EXPECT_EQ(tc, kBeta * kBeta * c);
}

INSTANTIATE_TEST_SUITE_P(Admissible, SolveConstants,
                         ::testing::Values(Expected{"A1", Rational(-1, 8), Rational(3, 16)},
                                           Expected{"A2", Rational(-1, 6), Rational(1, 6)},
                                           Expected{"G2", Rational(-1, 5), Rational(3, 20)},
                                           Expected{"D4", Rational(-1, 4), Rational(1, 8)}),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(SolveConstantsNonAdmissible, TrivialOnly) {
  for (const char* name : {"A3", "B2"}) {
    const ConstantSolution s = solve_constants(liealg::make_algebra(name));
    EXPECT_EQ(s.status, SolutionStatus::TrivialOnly) << name;
    EXPECT_EQ(s.rank, 3u);
    EXPECT_FALSE(s.D_over_beta2.has_value());
  }
}

TEST(SolveConstantsSampled, F4UsesTwoSeededBatches) {
  const LieAlgebra L = liealg::make_algebra("F4");
  SolveOptions opt;
  opt.seed = 5;
  const ConstantSolution s = solve_constants(L, opt);
  ASSERT_EQ(s.status, SolutionStatus::Unique);
  EXPECT_TRUE(s.sampled);
  EXPECT_EQ(s.triples, 1000u);
  EXPECT_EQ(*s.D_over_beta2, Rational(-3, 10));
  EXPECT_EQ(*s.C_over_beta2, Rational(1, 10));
}

TEST(Substitution, SolvedConstantsKillEveryDefect) {
  for (const char* name : {"A1", "A2"}) {
    const LieAlgebra L = liealg::make_algebra(name);
    const ConstantSolution s = solve_constants(L);
    ASSERT_EQ(s.status, SolutionStatus::Unique);
    const Report ok = verify_constants(L, *s.D_over_beta2, *s.C_over_beta2);
    EXPECT_TRUE(ok.pass) << ok.first_counterexample.value_or("");
    EXPECT_EQ(ok.samples, L.dim() * L.dim() * L.dim());
    EXPECT_FALSE(verify_constants(L, *s.D_over_beta2, *s.C_over_beta2 + Rational(1, 100)).pass);
    EXPECT_FALSE(verify_constants(L, Rational(0), Rational(0)).pass);
  }
}

TEST(ClosedForm, ClosedFormsAndDomain) {
  const auto [d, c] = closed_form_constants(sl2());
  EXPECT_EQ(d, kBeta * kBeta * Rational(-1, 8));
  EXPECT_EQ(c, kBeta * kBeta * Rational(3, 16));
  const auto [dg, cg] = closed_form_constants(liealg::make_algebra("G2"), Scalar(Rational(2)));
  EXPECT_EQ(dg, Scalar(Rational(-4, 5)));
  EXPECT_EQ(cg, Scalar(Rational(3, 5)));
  EXPECT_THROW(closed_form_constants(liealg::make_algebra("A3")), DomainError);
  EXPECT_THROW(closed_form_constants(liealg::make_algebra("B2")), DomainError);
}

TEST(ClosedForm, AgreesWithAlphaForm) {
  for (const char* name : {"A1", "A2", "D4", "G2"}) {
    const LieAlgebra L = liealg::make_algebra(name);
    const auto alpha = adinv::quartic_alpha(L, 20, 3);
    ASSERT_TRUE(alpha.has_value()) << name;
    EXPECT_EQ(constants_from_alpha(L, *alpha), closed_form_constants(L)) << name;
  }
}

TEST(ExtendedJacobi, GridZeroCurrentsOnly) {
  SweepOptions opt;
  opt.with_ef = false;
  const Report r = verify_extended_jacobi(liealg::make_algebra("A2"), 0, opt);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.samples, 16u * 16u * 16u);
}

TEST(ExtendedJacobi, Sl2AndSl3GridTwo) {
  lambda::CalculusStats stats;
  SweepOptions opt;
  opt.stats = &stats;
  const Report a1 = verify_extended_jacobi(sl2(), 2, opt);
  EXPECT_TRUE(a1.pass) << a1.first_counterexample.value_or("");
  EXPECT_EQ(a1.samples, 71u * 71u * 71u);
  EXPECT_EQ(stats.left_bracket_disagreements, 0u);
  const Report a2 = verify_extended_jacobi(liealg::make_algebra("A2"), 2);
  EXPECT_TRUE(a2.pass) << a2.first_counterexample.value_or("");
}

TEST(ExtendedJacobi, RationalBeta) {
  SweepOptions opt;
  opt.beta = Scalar(Rational(3, 7));
  EXPECT_TRUE(verify_extended_jacobi(sl2(), 1, opt).pass);
}

TEST(ExtendedJacobi, TamperedJFCoefficientIsCaught) {
  SweepOptions opt;
  opt.tamper = [](GenSymbol a, GenSymbol b, LambdaPoly p) {
    if (a.kind() != Kind::J || b.kind() != Kind::F) return p;
    std::vector<Term> t(p.terms().begin(), p.terms().end());
    for (auto& term : t) {
      if (term.lam == 0) term.coeff = -term.coeff;
    }
    return LambdaPoly::from_terms(std::move(t));
  };
  const Report r = verify_extended_jacobi(sl2(), 1, opt);
  ASSERT_FALSE(r.pass);
  const std::string& witness = *r.first_counterexample;
  EXPECT_EQ(witness.rfind("(J_", 0), 0u) << witness;
  const std::string head = witness.substr(0, witness.find('\n'));
  EXPECT_NE(head.find(", J_"), std::string::npos) << head;
  EXPECT_NE(head.find(", F["), std::string::npos) << head;
}
