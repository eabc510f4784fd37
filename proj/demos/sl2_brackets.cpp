// A few lambda-brackets, Wick expansions and normal orderings for sl2.

#include <iostream>

#include "cva/celestial/jacobi.hpp"
#include "cva/celestial/rules.hpp"
#include "cva/liealg/chevalley.hpp"

using namespace cva;
using namespace cva::lambda;

namespace {

void show(const std::string& title, const LambdaPoly& p, const std::vector<std::string>* labels) {
  std::cout << "== " << title << '\n' << (p.is_zero() ? "0\n" : p.dump(labels));
}

}  // namespace

int main() {
  const liealg::LieAlgebra L = liealg::make_algebra("A1");
  const celestial::RuleSet rules(L, celestial::Level::Extended);
  Calculus calc(rules);
  const auto* labels = calc.labels();
  const int h = 0, e = 1, f = 2;

  const GenSymbol je = GenSymbol::J(e, 1, 0), jf = GenSymbol::J(f, 0, 1), ih = GenSymbol::I(h, 0, 0);
  show("[J_e[1,0] _lambda J_f[0,1]]", calc.bracket(je, jf), labels);
  show("[J_e[1,0] _lambda E[0,1]]", calc.generator_bracket(je, GenSymbol::E(0, 1)), labels);
  show("[J_h[1,1] _lambda F[0,0]]", calc.generator_bracket(GenSymbol::J(h, 1, 1), GenSymbol::F(0, 0)), labels);
  show("normal order of I_h J_e[1,0]", calc.normal_order(Letters{ih, je}), labels);
  show("[J_f[0,1] _lambda :J_e[1,0] I_h:]", calc.wick(jf, Letters{je, ih}), labels);
  show("[:J_e[1,0] I_h: _lambda J_f[0,1]]", calc.left_bracket(Letters{je, ih}, jf), labels);

  const celestial::RuleSet deformed(L, celestial::Level::Deformed);
  Calculus dcalc(deformed);
  show("deformed [J_e[1,0] _lambda J_f[0,1]]",
       dcalc.generator_bracket(GenSymbol::J(e, 1, 0), GenSymbol::J(f, 0, 1)), labels);

  const auto sol = celestial::solve_constants(L);
  std::cout << "== constants\nD/beta^2 = " << *sol.D_over_beta2 << "\nC/beta^2 = " << *sol.C_over_beta2 << '\n';
}
