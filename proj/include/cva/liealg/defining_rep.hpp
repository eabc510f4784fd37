#pragma once

// Defining (vector) representations of the classical algebras, transported
// onto the Chevalley basis built by chevalley_basis().

#include <string>
#include <vector>

#include "cva/errors.hpp"
#include "cva/liealg/chevalley.hpp"
#include "cva/liealg/lie_algebra.hpp"
#include "cva/matrix.hpp"

namespace cva::liealg {

class DefiningRep {
 public:
  explicit DefiningRep(const LieAlgebra& L) : L_(&L) {
    if (!L.root_system()) throw UnsupportedError("defining representation needs root data");
    const RootSystem& rs = *L.root_system();
    const CartanType t = rs.type;
    if (!t.is_classical()) throw UnsupportedError("no defining representation table for exceptional type " + t.name());
    const int n = t.rank;
    switch (t.series) {
      case Series::A: size_ = static_cast<std::size_t>(n + 1); break;
      case Series::B: size_ = static_cast<std::size_t>(2 * n + 1); break;
      case Series::C:
      case Series::D: size_ = static_cast<std::size_t>(2 * n); break;
      default: break;
    }
    images_.assign(L.dim(), RationalMatrix(size_, size_));

    const auto r = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < r; ++i) {
      auto [e, f] = generators(t.series, n, static_cast<int>(i));
      images_[positive_root_index(rs, i_pos(rs, i))] = e;
      images_[negative_root_index(rs, i_pos(rs, i))] = f;
      images_[cartan_index(i)] = e * f - f * e;
    }
    ChevalleySigns signs(rs);
    const auto& pos = rs.positive_roots;
    for (std::size_t p = 0; p < pos.size(); ++p) {
      if (height(pos[p]) == 1) continue;
      const auto& [a, b] = signs.extraspecial(pos[p]);
      const auto ia = static_cast<std::size_t>(rs.positive_index(a));
      const auto ib = static_cast<std::size_t>(rs.positive_index(b));
      transport(positive_root_index(rs, ia), positive_root_index(rs, ib), positive_root_index(rs, p));
      transport(negative_root_index(rs, ia), negative_root_index(rs, ib), negative_root_index(rs, p));
    }
    verify_homomorphism();
  }

  [[nodiscard]] std::size_t size() const { return size_; }
  [[nodiscard]] const RationalMatrix& image_of_basis(std::size_t i) const { return images_.at(i); }

  [[nodiscard]] RationalMatrix image(const Element& x) const {
    if (x.size() != L_->dim()) throw UsageError("element dimension mismatch");
    RationalMatrix m(size_, size_);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!x[i].is_zero()) m += images_[i] * x[i];
    }
    return m;
  }

  /// (coefficient of Tr(a^4), coefficient of (Tr a^2)^2) in Tr(ad_a^4).
  [[nodiscard]] std::pair<Rational, Rational> trace_table_row() const {
    const int n = L_->root_system()->type.rank;
    switch (L_->root_system()->type.series) {
      case Series::A: return {Rational(2 * (n + 1)), Rational(6)};
      case Series::B: return {Rational(2 * n - 7), Rational(3)};
      case Series::C: return {Rational(2 * (n + 4)), Rational(3)};
      case Series::D: return {Rational(2 * (n - 4)), Rational(3)};
      default: throw UnsupportedError("no trace table row");
    }
  }

 private:
  static std::size_t i_pos(const RootSystem& rs, std::size_t i) {
    return static_cast<std::size_t>(rs.positive_index(rs.simple_roots[i]));
  }

  static RationalMatrix unit(std::size_t size, std::size_t r, std::size_t c, const Rational& v = Rational(1)) {
    RationalMatrix m(size, size);
    m(r, c) = v;
    return m;
  }

  [[nodiscard]] std::pair<RationalMatrix, RationalMatrix> generators(Series s, int n, int i) const {
    const auto N = size_;
    const auto u = [&](int r, int c, const Rational& v = Rational(1)) {
      return unit(N, static_cast<std::size_t>(r), static_cast<std::size_t>(c), v);
    };
    if (s == Series::A) return {u(i, i + 1), u(i + 1, i)};
    if (i < n - 1) return {u(i, i + 1) - u(n + i + 1, n + i), u(i + 1, i) - u(n + i, n + i + 1)};
    switch (s) {
      case Series::B: return {u(n - 1, 2 * n) - u(2 * n, 2 * n - 1), (u(2 * n, n - 1) - u(2 * n - 1, 2 * n)) * Rational(2)};
      case Series::C: return {u(n - 1, 2 * n - 1), u(2 * n - 1, n - 1)};
      case Series::D: return {u(n - 2, 2 * n - 1) - u(n - 1, 2 * n - 2), u(2 * n - 1, n - 2) - u(2 * n - 2, n - 1)};
      default: throw UnsupportedError("not classical");
    }
  }

  void transport(std::size_t ia, std::size_t ib, std::size_t iz) {
    Rational n(0);
    for (const auto& [k, v] : L_->bracket_basis(ia, ib)) {
      if (k == iz) n = v;
    }
    if (n.is_zero()) throw ConstructionError("extraspecial bracket vanished");
    const RationalMatrix& A = images_[ia];
    const RationalMatrix& B = images_[ib];
    images_[iz] = (A * B - B * A) * (Rational(1) / n);
  }

  void verify_homomorphism() const {
    for (std::size_t i = 0; i < L_->dim(); ++i) {
      for (std::size_t j = i + 1; j < L_->dim(); ++j) {
        RationalMatrix lhs(size_, size_);
        for (const auto& [k, v] : L_->bracket_basis(i, j)) lhs += images_[k] * v;
        const RationalMatrix rhs = images_[i] * images_[j] - images_[j] * images_[i];
        if (!(lhs == rhs)) {
          throw ConstructionError("defining representation is not a homomorphism on (" + L_->labels()[i] + ", " +
                                  L_->labels()[j] + ")");
        }
      }
    }
  }

  const LieAlgebra* L_;
  std::size_t size_ = 0;
  std::vector<RationalMatrix> images_;
};

}  // namespace cva::liealg
