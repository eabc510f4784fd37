// Acceptance gate. One PASS/FAIL line per criterion; exit status is nonzero
// if any criterion fails. All comparisons are exact over Q; the only
// tolerances are the wall-clock budgets below.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "cva/adinv/quartic.hpp"
#include "cva/celestial/jacobi.hpp"
#include "cva/celestial/rules.hpp"
#include "cva/liealg/chevalley.hpp"
#include "lambda_fixtures.hpp"

using namespace cva;
using liealg::LieAlgebra;
using liealg::make_algebra;

namespace {

constexpr std::uint64_t kSeed = 20240917;
constexpr std::size_t kClassifySamples = 20;
constexpr std::size_t kIdentitySamples = 100;
constexpr std::size_t kTableSamples = 50;
constexpr int kJacobiGrid = 3;
constexpr std::size_t kEngineSamples = 500;

constexpr double kBudgetClassify = 120;
constexpr double kBudgetSolve = 600;
constexpr double kBudgetJacobi = 300;

const std::map<std::string, Rational> kAlpha{{"A1", Rational(1, 2)},  {"A2", Rational(1, 4)},
                                             {"D4", Rational(1, 12)}, {"G2", Rational(5, 32)},
                                             {"F4", Rational(5, 108)}, {"E6", Rational(1, 32)}};

const std::map<std::string, std::pair<Rational, Rational>> kConstants{{"A1", {Rational(-1, 8), Rational(3, 16)}},
                                                                      {"A2", {Rational(-1, 6), Rational(1, 6)}},
                                                                      {"G2", {Rational(-1, 5), Rational(3, 20)}}};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const LieAlgebra& algebra(const std::string& name) {
  static std::map<std::string, LieAlgebra> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, make_algebra(name)).first;
  return it->second;
}

lambda::CalculusStats engine_totals;

void absorb(const lambda::CalculusStats& s) {
  engine_totals.left_bracket_invocations += s.left_bracket_invocations;
  engine_totals.left_bracket_path_checks += s.left_bracket_path_checks;
  engine_totals.left_bracket_disagreements += s.left_bracket_disagreements;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  std::set<std::string> marked;
  for (const auto& name : adinv::default_classify_types(false)) {
    const adinv::ClassificationRow row = adinv::classify_one(algebra(name), kClassifySamples, kSeed);
    if (!row.satisfies) continue;
    marked.insert(name);
    const auto it = kAlpha.find(name);
    if (it != kAlpha.end()) o.check(*row.alpha == it->second, name + " alpha " + row.alpha->str());
  }
  std::set<std::string> expected;
  for (const auto& [k, v] : kAlpha) expected.insert(k);
  o.check(marked == expected, "marked set differs");
  const double s = seconds_since(t0);
  o.check(s < kBudgetClassify, "over time budget");
  o.detail << (o.pass ? "" : "; ") << marked.size() << " types marked, " << s << " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto solve = [&](const std::string& name) {
    celestial::SolveOptions opt;
    opt.seed = kSeed;
    lambda::CalculusStats stats;
    opt.stats = &stats;
    const auto t0 = Clock::now();
    celestial::ConstantSolution sol = celestial::solve_constants(algebra(name), opt);
    absorb(stats);
    o.check(seconds_since(t0) < kBudgetSolve, name + " over time budget");
    return sol;
  };
  for (const auto& [name, dc] : kConstants) {
    const auto sol = solve(name);
    o.check(sol.status == celestial::SolutionStatus::Unique && *sol.D_over_beta2 == dc.first &&
                *sol.C_over_beta2 == dc.second,
            name + " solution differs");
  }
  {
    const auto sol = solve("D4");
    const auto [d, c] = celestial::closed_form_constants(algebra("D4"), Scalar(Rational(1)));
    o.check(sol.status == celestial::SolutionStatus::Unique && Scalar(*sol.D_over_beta2) == d &&
                Scalar(*sol.C_over_beta2) == c,
            "D4 differs from closed form");
  }
  for (const char* name : {"A3", "B2"}) {
    o.check(solve(name).status == celestial::SolutionStatus::TrivialOnly, std::string(name) + " not trivial_only");
  }
  if (o.pass) o.detail << "A1 A2 G2 D4 unique, A3 B2 trivial_only";
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (const auto& [name, expected] : kAlpha) {
    const LieAlgebra& L = algebra(name);
    const auto alpha = adinv::quartic_alpha(L, kClassifySamples, kSeed);
    if (!alpha) {
      o.check(false, name + " has no alpha");
      continue;
    }
    o.check(celestial::constants_from_alpha(L, *alpha) == celestial::closed_form_constants(L), name + " differs");
  }
  if (o.pass) o.detail << kAlpha.size() << " admissible types, identical as polynomials in beta";
  return o;
}

Outcome criterion4() {
  Outcome o;
  for (const char* name : {"A1", "A2"}) {
    celestial::SweepOptions opt;
    lambda::CalculusStats stats;
    opt.stats = &stats;
    const auto t0 = Clock::now();
    const Report r = celestial::verify_extended_jacobi(algebra(name), kJacobiGrid, opt);
    const double s = seconds_since(t0);
    absorb(stats);
    o.check(r.pass, std::string(name) + ": " + r.first_counterexample.value_or(""));
    o.check(s < kBudgetJacobi, std::string(name) + " over time budget");
    o.detail << (o.pass ? "" : "; ") << name << " " << r.samples << " triples " << s << " s";
    if (o.pass && std::string(name) == "A1") o.detail << ", ";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::size_t reports = 0;
  for (const char* name : {"A1", "A2", "A3", "B2", "G2", "D4"}) {
    const LieAlgebra& L = algebra(name);
    std::vector<Report> rs{adinv::contract_suite(L, kIdentitySamples, kSeed), adinv::dihedral_suite(L, kIdentitySamples, kSeed),
                           adinv::commutator_suite(L, kIdentitySamples, kSeed)};
    const auto it = kAlpha.find(name);
    if (it != kAlpha.end()) rs.push_back(adinv::polarized_suite(L, it->second, kIdentitySamples, kSeed));
    for (const Report& r : rs) {
      ++reports;
      o.check(r.pass, r.check + " " + r.algebra + ": " + r.first_counterexample.value_or(""));
    }
  }
  const auto refutations = adinv::refute_candidates(algebra("A3"), kIdentitySamples, kSeed);
  o.check(!refutations.empty(), "A3 produced no candidates");
  for (const auto& c : refutations) o.check(c.counterexample.has_value(), "A3 candidate " + c.alpha.str() + " survives");
  if (o.pass) o.detail << reports << " suites, " << refutations.size() << " A3 candidates refuted";
  return o;
}

Outcome criterion6() {
  Outcome o;
  for (const char* name : {"A1", "A2", "A3", "B2", "C3", "D4", "D5"}) {
    const Report r = adinv::classical_table_suite(algebra(name), kTableSamples, kSeed);
    o.check(r.pass, std::string(name) + ": " + r.first_counterexample.value_or(""));
  }
  const auto row = liealg::DefiningRep(algebra("D4")).trace_table_row();
  o.check(row.first.is_zero(), "D4 Tr(a^4) coefficient " + row.first.str());
  if (o.pass) o.detail << "7 types, D4 row (" << row.first << ", " << row.second << ")";
  return o;
}

Outcome criterion7() {
  Outcome o;
  using namespace lambda;
  using namespace lambda::fixtures;
  const celestial::RuleSet rules(algebra("A1"), celestial::Level::Extended);
  Calculus calc(rules);
  SampleRng rng(derive_seed(kSeed, 7));
  std::size_t skew_bad = 0, order_bad = 0;
  for (std::size_t t = 0; t < kEngineSamples; ++t) {
    const LambdaPoly p = random_poly(calc, rng);
    if (calc.skew(calc.skew(p)) != p) ++skew_bad;
    const Letters w = random_word(rng, 3);
    const LambdaPoly first = calc.normal_order(w);
    bool ok = calc.normal_order(first) == first && reduce_last_descent(calc, w) == first;
    for (const auto& term : first.terms()) ok = ok && is_ordered(term.word);
    if (!ok) ++order_bad;
    const Letters lw = first.terms().empty() ? Letters{} : first.terms().back().word;
    calc.left_bracket(lw, random_letter(rng));
  }
  absorb(calc.stats());
  o.check(skew_bad == 0, std::to_string(skew_bad) + " skew failures");
  o.check(order_bad == 0, std::to_string(order_bad) + " normal order failures");
  o.check(engine_totals.left_bracket_path_checks > 0, "no left bracket path checks ran");
  o.check(engine_totals.left_bracket_disagreements == 0,
          std::to_string(engine_totals.left_bracket_disagreements) + " left bracket disagreements");
  o.detail << (o.pass ? "" : "; ") << engine_totals.left_bracket_path_checks << " path checks, "
           << engine_totals.left_bracket_disagreements << " disagreements, " << kEngineSamples << " random inputs";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<std::string> names{"A1", "A2", "A3", "B2", "C3", "D4", "D5", "G2", "F4", "E6"};
  for (const auto& name : names) {
    const Rational w = adinv::sl2_triple_witness(algebra(name));
    o.check(!w.is_zero(), name + " witness vanishes");
  }
  if (o.pass) o.detail << names.size() << " types, all nonzero";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"classification of the default type list", criterion1},
      {"exact D, C from the Jacobi constraints", criterion2},
      {"constants from alpha match the closed form", criterion3},
      {"extended Jacobi identities on grid 3 for A1, A2", criterion4},
      {"trace identity suites and A3 refutation", criterion5},
      {"classical trace table", criterion6},
      {"lambda-calculus engine properties", criterion7},
      {"highest-root witness is nonzero", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << o.detail.str()
              << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
