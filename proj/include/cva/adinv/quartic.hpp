#pragma once

// Quartic adjoint traces Tr(ad_a ad_b ad_c ad_d) and the trace identities
// built from them.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cva/errors.hpp"
#include "cva/liealg/chevalley.hpp"
#include "cva/liealg/defining_rep.hpp"
#include "cva/liealg/lie_algebra.hpp"
#include "cva/matrix.hpp"
#include "cva/random.hpp"
#include "cva/report.hpp"

namespace cva::adinv {

using liealg::Element;
using liealg::LieAlgebra;

namespace detail {

/// Square int64 matrix; products are accumulated in __int128 and refused
/// when an entry leaves int64.
struct IntMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> d;

  std::int64_t operator()(std::size_t r, std::size_t c) const { return d[r * n + c]; }
};

inline constexpr std::int64_t kEntryLimit = std::int64_t(1) << 55;

inline std::optional<IntMatrix> to_int(const RationalMatrix& m) {
  IntMatrix z{m.rows(), std::vector<std::int64_t>(m.rows() * m.cols())};
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& v = m(r, c);
      if (!v.is_integer() || !v.is_small()) return std::nullopt;
      const std::int64_t x = v.small_num();
      if (x >= kEntryLimit || x <= -kEntryLimit) return std::nullopt;
      z.d[r * z.n + c] = x;
    }
  }
  return z;
}

inline std::optional<IntMatrix> multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.n;
  IntMatrix out{n, std::vector<std::int64_t>(n * n)};
  std::vector<__int128> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t x = a.d[i * n + k];
      if (x == 0) continue;
      const std::int64_t* row = &b.d[k * n];
      for (std::size_t j = 0; j < n; ++j) acc[j] += static_cast<__int128>(x) * row[j];
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (acc[j] >= kEntryLimit || acc[j] <= -static_cast<__int128>(kEntryLimit)) return std::nullopt;
      out.d[i * n + j] = static_cast<std::int64_t>(acc[j]);
    }
  }
  return out;
}

inline Rational trace_of_product(const IntMatrix& a, const IntMatrix& b) {
  __int128 t = 0;
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = 0; j < a.n; ++j) t += static_cast<__int128>(a.d[i * a.n + j]) * b.d[j * a.n + i];
  }
  return Rational::from_i128(t);
}

}  // namespace detail

/// ad_x in both exact representations; the integer one is present when all
/// entries are small integers.
class AdMatrix {
 public:
  AdMatrix(const LieAlgebra& L, const Element& x) : q_(L.ad_matrix(x)), z_(detail::to_int(q_)) {}
  explicit AdMatrix(RationalMatrix m) : q_(std::move(m)), z_(detail::to_int(q_)) {}

  [[nodiscard]] const RationalMatrix& exact() const { return q_; }
  [[nodiscard]] const std::optional<detail::IntMatrix>& integral() const { return z_; }

 private:
  RationalMatrix q_;
  std::optional<detail::IntMatrix> z_;
};

inline Rational trace2(const AdMatrix& a, const AdMatrix& b) {
  if (a.integral() && b.integral()) return detail::trace_of_product(*a.integral(), *b.integral());
  return cva::trace_of_product(a.exact(), b.exact());
}

inline Rational trace4(const AdMatrix& a, const AdMatrix& b, const AdMatrix& c, const AdMatrix& d) {
  if (a.integral() && b.integral() && c.integral() && d.integral()) {
    auto ab = detail::multiply(*a.integral(), *b.integral());
    auto cd = detail::multiply(*c.integral(), *d.integral());
    if (ab && cd) return detail::trace_of_product(*ab, *cd);
  }
  return cva::trace_of_product(a.exact() * b.exact(), c.exact() * d.exact());
}

inline Rational quartic_trace(const LieAlgebra& L, const Element& a, const Element& b, const Element& c,
                              const Element& d) {
  return trace4(AdMatrix(L, a), AdMatrix(L, b), AdMatrix(L, c), AdMatrix(L, d));
}

/// Lazily cached quartic traces on basis 4-tuples. Keys are reduced to a
/// representative of their dihedral orbit.
class QuarticForm {
 public:
  explicit QuarticForm(const LieAlgebra& L) : L_(&L) {}

  using Key = std::array<std::uint32_t, 4>;

  static Key canonical(Key k) {
    Key best = k;
    for (int flip = 0; flip < 2; ++flip) {
      for (int rot = 0; rot < 4; ++rot) {
        std::rotate(k.begin(), k.begin() + 1, k.end());
        best = std::min(best, k);
      }
      std::reverse(k.begin(), k.end());
    }
    return best;
  }

  Rational operator()(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    const Key key = canonical({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                               static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(l)});
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Rational v = trace4(ad(key[0]), ad(key[1]), ad(key[2]), ad(key[3]));
    cache_.emplace(key, v);
    return v;
  }

  [[nodiscard]] std::size_t cached() const { return cache_.size(); }

 private:
  const AdMatrix& ad(std::uint32_t i) {
    auto it = basis_ad_.find(i);
    if (it == basis_ad_.end()) it = basis_ad_.emplace(i, AdMatrix(*L_, L_->basis(i))).first;
    return it->second;
  }

  const LieAlgebra* L_;
  std::map<std::uint32_t, AdMatrix> basis_ad_;
  std::map<Key, Rational> cache_;
};

/// [[c,[b,e_i]],[a,e^i]] summed over the dual basis.
inline Element contract_lhs(const LieAlgebra& L, const Element& a, const Element& b, const Element& c) {
  const std::size_t n = L.dim();
  const RationalMatrix X = L.ad_matrix(c) * L.ad_matrix(b);        // column i: [c,[b,e_i]]
  const RationalMatrix Y = L.ad_matrix(a) * L.pairing_inverse();   // column i: [a,e^i]
  const RationalMatrix P = X * Y.transpose();                       // P(p,q) = sum_i X(p,i) Y(q,i)
  Element out(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (P(p, q).is_zero()) continue;
      for (const auto& [r, v] : L.bracket_basis(p, q)) out[r] += P(p, q) * v;
    }
  }
  return out;
}

/// -Tr(ad_a ad_b ad_c ad_{e_i}) e^i
inline Element contract_rhs(const LieAlgebra& L, const Element& a, const Element& b, const Element& c) {
  const std::size_t n = L.dim();
  const RationalMatrix M = L.ad_matrix(a) * L.ad_matrix(b) * L.ad_matrix(c);
  Element out(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Tr(M ad_{e_i}) = sum_j sum_k M(j,k) (ad_{e_i})(k,j), (ad_{e_i})(k,j) = f_{ij}^k
    Rational t(0);
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, v] : L.bracket_basis(i, j)) t += M(j, k) * v;
    }
    if (t.is_zero()) continue;
    for (std::size_t r = 0; r < n; ++r) out[r] -= t * L.pairing_inverse()(i, r);
  }
  return out;
}

inline bool contract_identity_holds(const LieAlgebra& L, const Element& a, const Element& b, const Element& c) {
  return contract_lhs(L, a, b, c) == contract_rhs(L, a, b, c);
}

/// The eight permutations of D4 = <(1 2 3 4), (1 2)(3 4)> acting on slots.
inline std::vector<std::array<int, 4>> dihedral_group() {
  std::vector<std::array<int, 4>> group{{0, 1, 2, 3}};
  const std::array<int, 4> rot{1, 2, 3, 0};
  const std::array<int, 4> swp{1, 0, 3, 2};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const auto& g : {rot, swp}) {
      std::array<int, 4> h{};
      for (int s = 0; s < 4; ++s) h[static_cast<std::size_t>(s)] = group[i][static_cast<std::size_t>(g[static_cast<std::size_t>(s)])];
      if (std::find(group.begin(), group.end(), h) == group.end()) group.push_back(h);
    }
  }
  return group;
}

inline bool dihedral_holds(const LieAlgebra& L, const std::array<Element, 4>& x) {
  const std::array<AdMatrix, 4> ad{AdMatrix(L, x[0]), AdMatrix(L, x[1]), AdMatrix(L, x[2]), AdMatrix(L, x[3])};
  const Rational base = trace4(ad[0], ad[1], ad[2], ad[3]);
  for (const auto& s : dihedral_group()) {
    if (trace4(ad[static_cast<std::size_t>(s[0])], ad[static_cast<std::size_t>(s[1])],
               ad[static_cast<std::size_t>(s[2])], ad[static_cast<std::size_t>(s[3])]) != base) {
      return false;
    }
  }
  return true;
}

/// Both sides of 2Tr([a,d][b,c]) + Tr([a,b][c,d]) = 4(T(abcd)+T(acdb)+T(adbc)) - 6(T(abcd)+T(bacd)).
inline std::pair<Rational, Rational> commutator_sides(const LieAlgebra& L, const Element& a, const Element& b,
                                                      const Element& c, const Element& d) {
  const AdMatrix A(L, a), B(L, b), C(L, c), D(L, d);
  const auto comm = [](const AdMatrix& x, const AdMatrix& y) {
    return AdMatrix(x.exact() * y.exact() - y.exact() * x.exact());
  };
  const Rational lhs = Rational(2) * trace2(comm(A, D), comm(B, C)) + trace2(comm(A, B), comm(C, D));
  const Rational abcd = trace4(A, B, C, D);
  const Rational rhs = Rational(4) * (abcd + trace4(A, C, D, B) + trace4(A, D, B, C)) -
                       Rational(6) * (abcd + trace4(B, A, C, D));
  return {lhs, rhs};
}

/// Both sides of T(abcd)+T(acdb)+T(adbc) = alpha (k(a,b)k(c,d) + k(a,c)k(d,b) + k(a,d)k(b,c)).
inline std::pair<Rational, Rational> polarized_sides(const LieAlgebra& L, const Element& a, const Element& b,
                                                     const Element& c, const Element& d, const Rational& alpha) {
  const AdMatrix A(L, a), B(L, b), C(L, c), D(L, d);
  const Rational lhs = trace4(A, B, C, D) + trace4(A, C, D, B) + trace4(A, D, B, C);
  const Rational rhs = alpha * (trace2(A, B) * trace2(C, D) + trace2(A, C) * trace2(D, B) + trace2(A, D) * trace2(B, C));
  return {lhs, rhs};
}

inline Report check_contract_identity(const LieAlgebra& L, const Element& a, const Element& b, const Element& c) {
  Report r{"contract_identity", L.name(), 1, 0, true, std::nullopt};
  if (!contract_identity_holds(L, a, b, c)) {
    r.fail("a=" + coefficient_list(a) + " b=" + coefficient_list(b) + " c=" + coefficient_list(c));
  }
  return r;
}

inline Report check_dihedral(const LieAlgebra& L, const Element& a1, const Element& a2, const Element& a3,
                             const Element& a4) {
  Report r{"dihedral", L.name(), 1, 0, true, std::nullopt};
  if (!dihedral_holds(L, {a1, a2, a3, a4})) {
    r.fail("a1=" + coefficient_list(a1) + " a2=" + coefficient_list(a2) + " a3=" + coefficient_list(a3) +
           " a4=" + coefficient_list(a4));
  }
  return r;
}

inline Report check_commutator_identity(const LieAlgebra& L, const Element& a, const Element& b, const Element& c,
                                        const Element& d) {
  Report r{"commutator_identity", L.name(), 1, 0, true, std::nullopt};
  const auto [lhs, rhs] = commutator_sides(L, a, b, c, d);
  if (lhs != rhs) {
    r.fail("lhs=" + lhs.str() + " rhs=" + rhs.str() + " a=" + coefficient_list(a) + " b=" + coefficient_list(b) +
           " c=" + coefficient_list(c) + " d=" + coefficient_list(d));
  }
  return r;
}

inline Report check_polarized(const LieAlgebra& L, const Element& a, const Element& b, const Element& c,
                              const Element& d, const Rational& alpha) {
  Report r{"polarized", L.name(), 1, 0, true, std::nullopt};
  const auto [lhs, rhs] = polarized_sides(L, a, b, c, d, alpha);
  if (lhs != rhs) {
    r.fail("alpha=" + alpha.str() + " lhs=" + lhs.str() + " rhs=" + rhs.str() + " a=" + coefficient_list(a) +
           " b=" + coefficient_list(b) + " c=" + coefficient_list(c) + " d=" + coefficient_list(d));
  }
  return r;
}

/// Stream ids for seeded sampling; each batch draws from its own stream.
enum class Stream : std::uint64_t {
  Contract = 1,
  Dihedral = 2,
  Commutator = 3,
  Ratio = 4,
  Polarized = 5,
  Table = 6,
  Witness = 7,
};

inline SampleRng stream_rng(std::uint64_t seed, Stream s, const LieAlgebra& L) {
  std::uint64_t tag = static_cast<std::uint64_t>(s);
  for (char ch : L.name()) tag = tag * 131 + static_cast<unsigned char>(ch);
  return SampleRng(derive_seed(seed, tag));
}

inline Report contract_suite(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  Report r{"contract_identity", L.name(), samples, seed, true, std::nullopt};
  SampleRng rng = stream_rng(seed, Stream::Contract, L);
  for (std::size_t s = 0; s < samples && r.pass; ++s) {
    const Element a = L.random_element(rng), b = L.random_element(rng), c = L.random_element(rng);
    const Report one = check_contract_identity(L, a, b, c);
    if (!one.pass) r.fail(*one.first_counterexample);
  }
  return r;
}

inline Report dihedral_suite(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  Report r{"dihedral_symmetry", L.name(), samples, seed, true, std::nullopt};
  SampleRng rng = stream_rng(seed, Stream::Dihedral, L);
  for (std::size_t s = 0; s < samples && r.pass; ++s) {
    const Element a = L.random_element(rng), b = L.random_element(rng), c = L.random_element(rng),
                  d = L.random_element(rng);
    const Report one = check_dihedral(L, a, b, c, d);
    if (!one.pass) r.fail(*one.first_counterexample);
  }
  return r;
}

inline Report commutator_suite(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  Report r{"commutator_identity", L.name(), samples, seed, true, std::nullopt};
  SampleRng rng = stream_rng(seed, Stream::Commutator, L);
  for (std::size_t s = 0; s < samples && r.pass; ++s) {
    const Element a = L.random_element(rng), b = L.random_element(rng), c = L.random_element(rng),
                  d = L.random_element(rng);
    const Report one = check_commutator_identity(L, a, b, c, d);
    if (!one.pass) r.fail(*one.first_counterexample);
  }
  return r;
}

inline Report polarized_suite(const LieAlgebra& L, const Rational& alpha, std::size_t samples, std::uint64_t seed) {
  Report r{"polarized_identity", L.name(), samples, seed, true, std::nullopt};
  SampleRng rng = stream_rng(seed, Stream::Polarized, L);
  for (std::size_t s = 0; s < samples && r.pass; ++s) {
    const Element a = L.random_element(rng), b = L.random_element(rng), c = L.random_element(rng),
                  d = L.random_element(rng);
    const Report one = check_polarized(L, a, b, c, d, alpha);
    if (!one.pass) r.fail(*one.first_counterexample);
  }
  return r;
}

/// Distinct ratios Tr(ad_a^4) / Tr(ad_a^2)^2 over seeded samples, in order
/// of first appearance.
inline std::vector<Rational> sampled_ratios(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  SampleRng rng = stream_rng(seed, Stream::Ratio, L);
  std::vector<Rational> out;
  std::size_t nondegenerate = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const AdMatrix A(L, L.random_element(rng));
    const Rational t2 = trace2(A, A);
    if (t2.is_zero()) continue;
    ++nondegenerate;
    const Rational r = trace4(A, A, A, A) / (t2 * t2);
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  if (nondegenerate == 0) throw SamplingError("every sampled element of " + L.name() + " has Tr(ad^2) = 0");
  return out;
}

/// alpha with Tr(ad_a^4) = alpha Tr(ad_a^2)^2, certified by the ratio test
/// and the polarized identity; absent when either fails.
inline std::optional<Rational> quartic_alpha(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  if (samples < 20) throw UsageError("quartic_alpha needs at least 20 samples");
  const std::vector<Rational> ratios = sampled_ratios(L, samples, seed);
  if (ratios.size() != 1) return std::nullopt;
  if (!polarized_suite(L, ratios.front(), samples, seed).pass) return std::nullopt;
  return ratios.front();
}

/// 5 / (2 (2 + dim g))
inline Rational alpha_closed_form(std::size_t dim) {
  return Rational(5) / (Rational(2) * Rational(2 + static_cast<long long>(dim)));
}

inline Report check_classical_table(const LieAlgebra& L, const liealg::DefiningRep& rep, const Element& a) {
  Report r{"classical_table", L.name(), 1, 0, true, std::nullopt};
  const auto [c4, c22] = rep.trace_table_row();
  const RationalMatrix X = rep.image(a);
  const RationalMatrix X2 = X * X;
  const Rational tr2 = X2.trace();
  const Rational rhs = c4 * cva::trace_of_product(X2, X2) + c22 * tr2 * tr2;
  const AdMatrix A(L, a);
  const Rational lhs = trace4(A, A, A, A);
  if (lhs != rhs) r.fail("a=" + coefficient_list(a) + " Tr(ad^4)=" + lhs.str() + " table=" + rhs.str());
  return r;
}

inline Report check_classical_table(const LieAlgebra& L, const Element& a) {
  if (!L.root_system() || !L.root_system()->type.is_classical()) {
    throw UnsupportedError("classical trace table requested for " + L.name());
  }
  return check_classical_table(L, liealg::DefiningRep(L), a);
}

inline Report classical_table_suite(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  if (!L.root_system() || !L.root_system()->type.is_classical()) {
    throw UnsupportedError("classical trace table requested for " + L.name());
  }
  const liealg::DefiningRep rep(L);
  Report r{"classical_table", L.name(), samples, seed, true, std::nullopt};
  SampleRng rng = stream_rng(seed, Stream::Table, L);
  for (std::size_t s = 0; s < samples && r.pass; ++s) {
    const Report one = check_classical_table(L, rep, L.random_element(rng));
    if (!one.pass) r.fail(*one.first_counterexample);
  }
  return r;
}

/// Tr(ad_{[e,f]} ad_e ad_f) for the highest-root sl2-triple.
inline Rational sl2_triple_witness(const LieAlgebra& L) {
  const liealg::Sl2Triple t = liealg::highest_root_triple(L);
  const AdMatrix H(L, L.bracket(t.e, t.f)), E(L, t.e), F(L, t.f);
  return cva::trace_of_product(H.exact() * E.exact(), F.exact());
}

/// For each candidate alpha from the ratio test, the first seeded tuple
/// violating the polarized identity (absent if none found in `samples`).
struct CandidateRefutation {
  Rational alpha;
  std::optional<std::string> counterexample;
};

inline std::vector<CandidateRefutation> refute_candidates(const LieAlgebra& L, std::size_t samples,
                                                          std::uint64_t seed) {
  std::vector<CandidateRefutation> out;
  for (const Rational& alpha : sampled_ratios(L, samples, seed)) {
    const Report r = polarized_suite(L, alpha, samples, seed);
    out.push_back({alpha, r.first_counterexample});
  }
  return out;
}

struct ClassificationRow {
  std::string type;
  std::size_t dim = 0;
  int h_dual = 0;
  bool satisfies = false;
  std::optional<Rational> alpha;
};

inline std::vector<std::string> default_classify_types(bool include_e78) {
  std::vector<std::string> t{"A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E6"};
  if (include_e78) {
    t.emplace_back("E7");
    t.emplace_back("E8");
  }
  return t;
}

/// Every simple type of rank <= max_rank together with the exceptional ones.
inline std::vector<std::string> classify_types_up_to(int max_rank, bool include_e78) {
  std::vector<std::string> t;
  for (const char s : {'A', 'B', 'C', 'D'}) {
    for (int r = 1; r <= max_rank; ++r) {
      if (liealg::is_valid_type(static_cast<liealg::Series>(s), r)) t.push_back(std::string(1, s) + std::to_string(r));
    }
  }
  for (const char* e : {"G2", "F4", "E6"}) t.emplace_back(e);
  if (include_e78) {
    t.emplace_back("E7");
    t.emplace_back("E8");
  }
  return t;
}

inline ClassificationRow classify_one(const LieAlgebra& L, std::size_t samples, std::uint64_t seed) {
  ClassificationRow row{L.name(), L.dim(), L.dual_coxeter(), false, std::nullopt};
  row.alpha = quartic_alpha(L, samples, seed);
  row.satisfies = row.alpha.has_value();
  return row;
}

inline std::vector<ClassificationRow> classify(const std::vector<std::string>& types, std::size_t samples,
                                               std::uint64_t seed) {
  std::vector<ClassificationRow> rows;
  for (const auto& name : types) rows.push_back(classify_one(liealg::make_algebra(name), samples, seed));
  return rows;
}

inline std::vector<ClassificationRow> classify(int max_rank, std::size_t samples, std::uint64_t seed,
                                               bool include_e78 = false) {
  return classify(classify_types_up_to(max_rank, include_e78), samples, seed);
}

}  // namespace cva::adinv
