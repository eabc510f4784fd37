#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cva/errors.hpp"
#include "cva/liealg/root_system.hpp"
#include "cva/matrix.hpp"
#include "cva/rational.hpp"
#include "cva/random.hpp"

namespace cva::liealg {

/// A vector of g in the coordinates of the algebra's basis.
class Element {
 public:
  Element() = default;
  explicit Element(std::size_t dim) : coeffs_(dim, Rational(0)) {}
  explicit Element(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  static Element basis(std::size_t dim, std::size_t i) {
    Element e(dim);
    e.coeffs_.at(i) = 1;
    return e;
  }

  [[nodiscard]] std::size_t size() const { return coeffs_.size(); }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return coeffs_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  Element& operator+=(const Element& o) {
    check(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!o.coeffs_[i].is_zero()) coeffs_[i] += o.coeffs_[i];
    }
    return *this;
  }
  Element& operator-=(const Element& o) {
    check(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!o.coeffs_[i].is_zero()) coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
  }
  Element& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Element operator-() const {
    Element e(*this);
    for (auto& c : e.coeffs_) c = -c;
    return e;
  }
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Rational& s) { return a *= s; }
  friend Element operator*(const Rational& s, Element a) { return a *= s; }
  friend bool operator==(const Element&, const Element&) = default;

  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s += (i ? "," : "") + coeffs_[i].str();
    return s + ")";
  }

 private:
  void check(const Element& o) const {
    if (o.coeffs_.size() != coeffs_.size()) throw UsageError("element dimension mismatch");
  }
  std::vector<Rational> coeffs_;
};

/// One component f_{ij}^k of [e_i, e_j].
struct StructureEntry {
  std::uint32_t index;
  Rational value;
  friend bool operator==(const StructureEntry&, const StructureEntry&) = default;
};

/// Sparse table of (i, j, k) -> f_{ij}^k.
struct StructureConstants {
  std::size_t dim = 0;
  std::vector<std::vector<StructureEntry>> table;  // indexed by i * dim + j, sorted by k

  explicit StructureConstants(std::size_t n = 0) : dim(n), table(n * n) {}
  [[nodiscard]] const std::vector<StructureEntry>& at(std::size_t i, std::size_t j) const { return table[i * dim + j]; }
  std::vector<StructureEntry>& at(std::size_t i, std::size_t j) { return table[i * dim + j]; }
};

class LieAlgebra {
 public:
  /// Builds from raw structure constants. The invariant pairing is
  /// Tr(ad ad) / (2 h_dual); antisymmetry and Jacobi are checked exactly.
  LieAlgebra(std::string name, std::size_t rank, int h_dual_coxeter, StructureConstants f,
             std::vector<std::string> labels = {})
      : name_(std::move(name)), rank_(rank), hdual_(h_dual_coxeter), f_(std::move(f)), labels_(std::move(labels)) {
    if (hdual_ <= 0) throw ConstructionError("dual Coxeter number must be positive");
    fill_default_labels();
    validate_structure();
    const RationalMatrix kill = killing_matrix();
    pairing_ = kill * Rational(Rational(1) / Rational(2 * hdual_));
    finish_pairing();
  }

  /// Builds from root data; the pairing is computed from the root lengths
  /// and h_dual from the Killing-form ratio, then cross-checked.
  LieAlgebra(RootSystem rs, StructureConstants f, RationalMatrix normalized_form, std::vector<std::string> labels)
      : name_(rs.type.name()),
        rank_(static_cast<std::size_t>(rs.rank())),
        f_(std::move(f)),
        labels_(std::move(labels)),
        root_system_(std::move(rs)) {
    validate_structure();
    pairing_ = std::move(normalized_form);
    const RationalMatrix kill = killing_matrix();
    std::optional<Rational> ratio;
    for (std::size_t i = 0; i < dim(); ++i) {
      for (std::size_t j = 0; j < dim(); ++j) {
        const Rational& k = pairing_(i, j);
        if (k.is_zero()) {
          if (!kill(i, j).is_zero()) throw ConstructionError("Killing form not proportional to the normalized form");
          continue;
        }
        const Rational r = kill(i, j) / (Rational(2) * k);
        if (ratio && *ratio != r) throw ConstructionError("Killing form not proportional to the normalized form");
        ratio = r;
      }
    }
    if (!ratio || !ratio->is_integer() || ratio->sign() <= 0) {
      throw ConstructionError("dual Coxeter number is not a positive integer (wrong normalization)");
    }
    hdual_ = static_cast<int>(ratio->small_num());
    finish_pairing();
  }

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::size_t dim() const { return f_.dim; }
  [[nodiscard]] std::size_t rank() const { return rank_; }
  [[nodiscard]] int dual_coxeter() const { return hdual_; }
  [[nodiscard]] const StructureConstants& structure_constants() const { return f_; }
  [[nodiscard]] const std::vector<StructureEntry>& bracket_basis(std::size_t i, std::size_t j) const {
    return f_.at(i, j);
  }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::optional<RootSystem>& root_system() const { return root_system_; }
  [[nodiscard]] const RationalMatrix& pairing_matrix() const { return pairing_; }
  [[nodiscard]] const RationalMatrix& pairing_inverse() const { return pairing_inv_; }
  [[nodiscard]] bool integral() const { return integral_; }

  [[nodiscard]] Element basis(std::size_t i) const { return Element::basis(dim(), i); }
  [[nodiscard]] Element zero() const { return Element(dim()); }

  /// e^i = k^{ij} e_j
  [[nodiscard]] const Element& dual(std::size_t i) const { return duals_[i]; }

  [[nodiscard]] Element bracket(const Element& x, const Element& y) const {
    check(x);
    check(y);
    Element out(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j].is_zero()) continue;
        const auto& entries = f_.at(i, j);
        if (entries.empty()) continue;
        const Rational xy = x[i] * y[j];
        for (const auto& [k, v] : entries) out[k] += xy * v;
      }
    }
    return out;
  }

  /// [e_i, y]
  [[nodiscard]] Element bracket_basis_left(std::size_t i, const Element& y) const {
    check(y);
    Element out(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      for (const auto& [k, v] : f_.at(i, j)) out[k] += y[j] * v;
    }
    return out;
  }

  /// Column j is [x, e_j].
  [[nodiscard]] RationalMatrix ad_matrix(const Element& x) const {
    check(x);
    RationalMatrix m(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        for (const auto& [k, v] : f_.at(i, j)) m(k, j) += x[i] * v;
      }
    }
    return m;
  }

  [[nodiscard]] Rational pairing(const Element& a, const Element& b) const {
    check(a);
    check(b);
    Rational s(0);
    for (std::size_t i = 0; i < dim(); ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (b[j].is_zero() || pairing_(i, j).is_zero()) continue;
        s += a[i] * b[j] * pairing_(i, j);
      }
    }
    return s;
  }

  /// Pairs (e_i, e^i) with (e_i, e^j) = delta_ij.
  [[nodiscard]] std::vector<std::pair<Element, Element>> dual_basis() const {
    std::vector<std::pair<Element, Element>> out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) out.emplace_back(basis(i), duals_[i]);
    return out;
  }

  /// Random element with integer coefficients in [lo, hi].
  [[nodiscard]] Element random_element(SampleRng& rng, int lo = -3, int hi = 3) const {
    Element e(dim());
    for (std::size_t i = 0; i < dim(); ++i) e[i] = rng.uniform(lo, hi);
    return e;
  }

  /// Killing form Tr(ad_{e_i} ad_{e_j}) on basis pairs.
  [[nodiscard]] RationalMatrix killing_matrix() const {
    const std::size_t n = dim();
    RationalMatrix kill(n, n);
    // Tr(ad_i ad_j) = sum_{k,l} f_{ik}^l f_{jl}^k
    std::vector<std::vector<std::pair<std::uint32_t, Rational>>> col_by_row(n * n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        for (const auto& [k, v] : f_.at(j, l)) col_by_row[l * n + k].emplace_back(static_cast<std::uint32_t>(j), v);
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        for (const auto& [l, v1] : f_.at(i, k)) {
          for (const auto& [j, v2] : col_by_row[l * n + k]) kill(i, j) += v1 * v2;
        }
      }
    }
    return kill;
  }

 private:
  void check(const Element& x) const {
    if (x.size() != dim()) throw UsageError("element dimension " + std::to_string(x.size()) + " != " + std::to_string(dim()));
  }

  void fill_default_labels() {
    if (labels_.empty()) {
      for (std::size_t i = 0; i < dim(); ++i) labels_.push_back("e" + std::to_string(i));
    }
    if (labels_.size() != dim()) throw ConstructionError("label count does not match dimension");
  }

  void validate_structure() {
    const std::size_t n = dim();
    integral_ = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!f_.at(i, i).empty()) throw ConstructionError("[e_i, e_i] != 0");
      for (std::size_t j = 0; j < n; ++j) {
        auto& e = f_.at(i, j);
        std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
        for (const auto& [k, v] : e) {
          if (k >= n) throw ConstructionError("structure constant index out of range");
          if (v.is_zero()) throw ConstructionError("explicit zero structure constant");
          if (!v.is_integer()) integral_ = false;
        }
        if (j > i) {
          const auto& r = f_.at(j, i);
          if (r.size() != e.size()) throw ConstructionError("structure constants are not antisymmetric");
          for (std::size_t t = 0; t < e.size(); ++t) {
            if (r[t].index != e[t].index || r[t].value != -e[t].value) {
              throw ConstructionError("structure constants are not antisymmetric");
            }
          }
        }
      }
    }
    // Jacobi on i < j < k (the Jacobiator is alternating once f is antisymmetric).
    std::vector<Rational> acc(n);
    std::vector<std::uint32_t> touched;
    auto add_double = [&](std::size_t x, std::size_t y, std::size_t z) {
      // [[e_x, e_y], e_z]
      for (const auto& [m, v1] : f_.at(x, y)) {
        for (const auto& [l, v2] : f_.at(m, z)) {
          if (acc[l].is_zero()) touched.push_back(l);
          acc[l] += v1 * v2;
        }
      }
    };
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          add_double(i, j, k);
          add_double(j, k, i);
          add_double(k, i, j);
          for (auto l : touched) {
            if (!acc[l].is_zero()) {
              throw ConstructionError("structure constants violate the Jacobi identity at (" + std::to_string(i) +
                                      "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
          }
          for (auto l : touched) acc[l] = 0;
          touched.clear();
        }
      }
    }
  }

  void finish_pairing() {
    pairing_inv_ = inverse(pairing_);
    duals_.clear();
    for (std::size_t i = 0; i < dim(); ++i) {
      Element d(dim());
      for (std::size_t j = 0; j < dim(); ++j) d[j] = pairing_inv_(i, j);
      duals_.push_back(std::move(d));
    }
  }

  std::string name_;
  std::size_t rank_ = 0;
  int hdual_ = 0;
  StructureConstants f_;
  std::vector<std::string> labels_;
  std::optional<RootSystem> root_system_;
  RationalMatrix pairing_;
  RationalMatrix pairing_inv_;
  std::vector<Element> duals_;
  bool integral_ = true;
};

}  // namespace cva::liealg
