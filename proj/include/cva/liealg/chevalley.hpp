#pragma once

// Chevalley basis structure constants via extraspecial pairs.
//
// Positive roots are totally ordered (height, then the order of
// RootSystem::positive_roots). For each non-simple positive root z the
// extraspecial pair (a, b) has a minimal with z - a positive; we fix
// N_{a,b} = +(p+1). All remaining N_{x,y} follow from
//   N_{y,x} = -N_{x,y},  N_{-x,-y} = -N_{x,y},
//   N_{x,y}/(z,z) = N_{y,z}/(x,x) = N_{z,x}/(y,y)   when x+y+z = 0,
// and the four-root relation for x+y = a+b.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cva/errors.hpp"
#include "cva/liealg/lie_algebra.hpp"
#include "cva/liealg/root_system.hpp"

namespace cva::liealg {

/// Basis index of h_i, e_{alpha}, e_{-alpha} under the canonical order:
/// Cartan generators, positive roots, negative roots (each by height).
inline std::size_t cartan_index(std::size_t i) { return i; }
inline std::size_t positive_root_index(const RootSystem& rs, std::size_t p) {
  return static_cast<std::size_t>(rs.rank()) + p;
}
inline std::size_t negative_root_index(const RootSystem& rs, std::size_t p) {
  return static_cast<std::size_t>(rs.rank()) + rs.positive_roots.size() + p;
}

class ChevalleySigns {
 public:
  explicit ChevalleySigns(const RootSystem& rs) : rs_(rs) {
    const auto& pos = rs_.positive_roots;
    for (std::size_t z = 0; z < pos.size(); ++z) {
      if (height(pos[z]) == 1) continue;
      for (std::size_t a = 0; a < pos.size(); ++a) {
        const int b = rs_.positive_index(sub(pos[z], pos[a]));
        if (b >= 0) {
          extraspecial_[pos[z]] = {pos[a], pos[static_cast<std::size_t>(b)]};
          break;
        }
      }
    }
  }

  /// (a, b) with a + b = z; z must be a non-simple positive root.
  [[nodiscard]] const std::pair<Root, Root>& extraspecial(const Root& z) const { return extraspecial_.at(z); }

  /// Largest p with y - p x a root.
  [[nodiscard]] int string_below(const Root& x, const Root& y) const {
    int p = 0;
    Root r = y;
    while (true) {
      r = sub(r, x);
      if (!rs_.is_root(r)) return p;
      ++p;
    }
  }

  /// N_{x,y} for roots x, y with x + y a root.
  int structure_constant(const Root& x, const Root& y) {
    auto key = std::make_pair(x, y);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const Rational val = compute(x, y);
    if (!val.is_integer()) throw ConstructionError("non-integral Chevalley structure constant");
    const int n = static_cast<int>(val.small_num());
    const int expected = string_below(x, y) + 1;
    if (n != expected && n != -expected) throw ConstructionError("Chevalley structure constant has wrong magnitude");
    memo_[key] = n;
    return n;
  }

 private:
  static Root add(const Root& a, const Root& b) {
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  }
  static Root sub(const Root& a, const Root& b) {
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
  }
  static Root neg(const Root& a) {
    Root r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
  }
  static bool positive(const Root& a) {
    for (int c : a) {
      if (c != 0) return c > 0;
    }
    return false;
  }

  Rational compute(const Root& x, const Root& y) {
    const bool xp = positive(x);
    const bool yp = positive(y);
    if (xp && yp) {
      const Root z = add(x, y);
      const auto& [a, b] = extraspecial(z);
      const int p1 = string_below(a, b) + 1;
      if (x == a) return p1;
      if (y == a) return -p1;
      Rational acc(0);
      const Root ya = sub(y, a);
      if (rs_.is_root(ya)) {
        acc += Rational(structure_constant(y, neg(a)) * structure_constant(x, neg(b))) / rs_.inner(ya, ya);
      }
      const Root xa = sub(x, a);
      if (rs_.is_root(xa)) {
        acc += Rational(structure_constant(neg(a), x) * structure_constant(y, neg(b))) / rs_.inner(xa, xa);
      }
      return rs_.inner(z, z) / Rational(p1) * acc;
    }
    if (!xp && !yp) return Rational(-structure_constant(neg(x), neg(y)));
    const Root z = neg(add(x, y));
    if (positive(z) == xp) return rs_.inner(z, z) / rs_.inner(y, y) * Rational(structure_constant(z, x));
    return rs_.inner(z, z) / rs_.inner(x, x) * Rational(structure_constant(y, z));
  }

  const RootSystem& rs_;
  std::map<Root, std::pair<Root, Root>> extraspecial_;
  std::map<std::pair<Root, Root>, int> memo_;
};

/// Builds g in its Chevalley basis. Basis order: h_1..h_r, e_alpha for
/// positive alpha, then e_{-alpha} in the same order.
inline LieAlgebra chevalley_basis(const RootSystem& rs) {
  const auto r = static_cast<std::size_t>(rs.rank());
  const auto& pos = rs.positive_roots;
  const std::size_t np = pos.size();
  const std::size_t n = r + 2 * np;
  StructureConstants f(n);
  ChevalleySigns signs(rs);

  struct RootRef {
    Root root;
    std::size_t pos_index;
    bool positive;
  };
  std::vector<RootRef> refs;
  std::map<Root, std::size_t> basis_of_root;
  for (std::size_t p = 0; p < np; ++p) {
    basis_of_root[pos[p]] = positive_root_index(rs, p);
    Root m(pos[p].size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = -pos[p][i];
    basis_of_root[m] = negative_root_index(rs, p);
    refs.push_back({pos[p], p, true});
  }
  for (std::size_t p = 0; p < np; ++p) refs.push_back({Root(), p, false});
  for (std::size_t p = 0; p < np; ++p) {
    Root m(pos[p].size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = -pos[p][i];
    refs[np + p].root = m;
  }

  auto put = [&](std::size_t i, std::size_t j, std::size_t k, const Rational& v) {
    if (v.is_zero()) return;
    f.at(i, j).push_back({static_cast<std::uint32_t>(k), v});
  };

  // [h_i, e_x] = <x, a_i^vee> e_x
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t t = 0; t < 2 * np; ++t) {
      const std::size_t bx = r + t;
      const int c = rs.pairing_with_coroot(refs[t].root, static_cast<int>(i));
      put(i, bx, bx, Rational(c));
      put(bx, i, bx, Rational(-c));
    }
  }
  // [e_x, e_y]
  for (std::size_t s = 0; s < 2 * np; ++s) {
    for (std::size_t t = 0; t < 2 * np; ++t) {
      if (s == t) continue;
      const Root& x = refs[s].root;
      const Root& y = refs[t].root;
      Root sum(x.size());
      bool zero = true;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sum[i] = x[i] + y[i];
        zero = zero && sum[i] == 0;
      }
      if (zero) {
        // [e_a, e_{-a}] = h_a = sum_i k_i (a_i, a_i)/(a, a) h_i for positive a
        const Root& a = refs[s].positive ? x : y;
        const Rational aa = rs.inner(a, a);
        const int sign = refs[s].positive ? 1 : -1;
        for (std::size_t i = 0; i < r; ++i) {
          if (a[i] == 0) continue;
          const Rational c = Rational(a[i]) * rs.gram(i, i) / aa;
          if (!c.is_integer()) throw ConstructionError("non-integral coroot coefficient");
          put(r + s, r + t, i, c * Rational(sign));
        }
        continue;
      }
      auto it = basis_of_root.find(sum);
      if (it == basis_of_root.end()) continue;
      put(r + s, r + t, it->second, Rational(signs.structure_constant(x, y)));
    }
  }

  // Invariant form normalized by (theta, theta) = 2:
  // (h_i, h_j) = (a_i^vee, a_j^vee), (e_a, e_{-a}) = 2/(a, a).
  RationalMatrix form(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      form(i, j) = Rational(4) * rs.gram(i, j) / (rs.gram(i, i) * rs.gram(j, j));
    }
  }
  for (std::size_t p = 0; p < np; ++p) {
    const Rational v = Rational(2) / rs.inner(pos[p], pos[p]);
    form(positive_root_index(rs, p), negative_root_index(rs, p)) = v;
    form(negative_root_index(rs, p), positive_root_index(rs, p)) = v;
  }

  std::vector<std::string> labels;
  for (std::size_t i = 0; i < r; ++i) labels.push_back("h" + std::to_string(i + 1));
  auto root_label = [](const Root& a) {
    std::string s;
    for (int c : a) s += std::to_string(c < 0 ? -c : c);
    return s;
  };
  for (std::size_t p = 0; p < np; ++p) labels.push_back("e" + root_label(pos[p]));
  for (std::size_t p = 0; p < np; ++p) labels.push_back("f" + root_label(pos[p]));

  return LieAlgebra(rs, std::move(f), std::move(form), std::move(labels));
}

inline LieAlgebra make_algebra(const CartanType& t) { return chevalley_basis(build_root_system(t)); }
inline LieAlgebra make_algebra(const std::string& name) { return make_algebra(parse_cartan_type(name)); }

/// Bracket/ad/pairing free functions mirroring the member API.
inline Element bracket(const LieAlgebra& L, const Element& x, const Element& y) { return L.bracket(x, y); }
inline RationalMatrix ad_matrix(const LieAlgebra& L, const Element& x) { return L.ad_matrix(x); }
inline int dual_coxeter(const LieAlgebra& L) { return L.dual_coxeter(); }
inline Rational pairing(const LieAlgebra& L, const Element& a, const Element& b) { return L.pairing(a, b); }
inline std::vector<std::pair<Element, Element>> dual_basis(const LieAlgebra& L) { return L.dual_basis(); }

/// The sl2-triple (e_theta, e_{-theta}, h_theta) of the highest root.
struct Sl2Triple {
  Element e;
  Element f;
  Element h;
};

inline Sl2Triple highest_root_triple(const LieAlgebra& L) {
  if (!L.root_system()) throw UnsupportedError("algebra " + L.name() + " carries no root data");
  const auto& rs = *L.root_system();
  const std::size_t top = rs.positive_roots.size() - 1;
  Sl2Triple t{L.basis(positive_root_index(rs, top)), L.basis(negative_root_index(rs, top)), L.zero()};
  t.h = L.bracket(t.e, t.f);
  return t;
}

}  // namespace cva::liealg
