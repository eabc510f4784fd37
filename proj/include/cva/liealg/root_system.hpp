#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cva/errors.hpp"
#include "cva/matrix.hpp"
#include "cva/rational.hpp"

namespace cva::liealg {

enum class Series : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

/// A root written in the basis of simple roots.
using Root = std::vector<int>;

struct CartanType {
  Series series = Series::A;
  int rank = 1;

  [[nodiscard]] std::string name() const { return std::string(1, static_cast<char>(series)) + std::to_string(rank); }
  [[nodiscard]] bool is_classical() const {
    return series == Series::A || series == Series::B || series == Series::C || series == Series::D;
  }
  friend auto operator<=>(const CartanType&, const CartanType&) = default;
};

inline bool is_valid_type(Series s, int rank) {
  switch (s) {
    case Series::A: return rank >= 1;
    case Series::B: return rank >= 2;
    case Series::C: return rank >= 3;
    case Series::D: return rank >= 4;
    case Series::E: return rank >= 6 && rank <= 8;
    case Series::F: return rank == 4;
    case Series::G: return rank == 2;
  }
  return false;
}

/// Parses "A1", "g2", "E8", ...
inline CartanType parse_cartan_type(const std::string& text) {
  if (text.size() < 2) throw ConfigurationError("malformed algebra type '" + text + "'");
  const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (std::string("ABCDEFG").find(c) == std::string::npos) {
    throw ConfigurationError("unknown series in algebra type '" + text + "'");
  }
  int rank = 0;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ConfigurationError("malformed rank in '" + text + "'");
    rank = rank * 10 + (text[i] - '0');
    if (rank > 1000) throw ConfigurationError("rank too large in '" + text + "'");
  }
  const auto s = static_cast<Series>(c);
  if (!is_valid_type(s, rank)) throw ConfigurationError("invalid simple type " + text);
  return {s, rank};
}

struct RootSystem {
  CartanType type;
  /// Gram matrix of the simple roots, long roots of squared length 2.
  RationalMatrix gram;
  /// cartan_matrix(i, j) = 2 (a_i, a_j) / (a_i, a_i) = <a_j, a_i^vee>.
  Matrix<int> cartan_matrix;
  std::vector<Root> simple_roots;
  /// Ordered by height, then lexicographically descending coefficients.
  std::vector<Root> positive_roots;

  [[nodiscard]] int rank() const { return type.rank; }

  [[nodiscard]] Rational inner(const Root& a, const Root& b) const {
    Rational s(0);
    for (int i = 0; i < rank(); ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; j < rank(); ++j) {
        if (b[j] == 0) continue;
        s += gram(i, j) * Rational(a[i] * b[j]);
      }
    }
    return s;
  }

  /// <a, alpha_i^vee>
  [[nodiscard]] int pairing_with_coroot(const Root& a, int i) const {
    int s = 0;
    for (int j = 0; j < rank(); ++j) s += a[j] * cartan_matrix(i, j);
    return s;
  }

  /// Index into positive_roots, or -1.
  [[nodiscard]] int positive_index(const Root& r) const {
    auto it = index_.find(r);
    return it == index_.end() ? -1 : it->second;
  }
  [[nodiscard]] bool is_root(const Root& r) const {
    if (positive_index(r) >= 0) return true;
    Root neg(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) neg[i] = -r[i];
    return positive_index(neg) >= 0;
  }
  [[nodiscard]] const Root& highest_root() const { return positive_roots.back(); }

  void rebuild_index() {
    index_.clear();
    for (std::size_t i = 0; i < positive_roots.size(); ++i) index_[positive_roots[i]] = static_cast<int>(i);
  }

 private:
  std::map<Root, int> index_;
};

inline int height(const Root& r) {
  int h = 0;
  for (int c : r) h += c;
  return h;
}

namespace detail {

inline RationalMatrix simple_gram(Series s, int n) {
  RationalMatrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  auto link = [&](int i, int j, const Rational& v) {
    g(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
    g(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
  };
  auto diag = [&](int i, const Rational& v) { g(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = v; };
  switch (s) {
    case Series::A:
      for (int i = 0; i < n; ++i) diag(i, 2);
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Series::B:
      for (int i = 0; i + 1 < n; ++i) diag(i, 2);
      diag(n - 1, 1);
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Series::C:
      for (int i = 0; i + 1 < n; ++i) diag(i, 1);
      diag(n - 1, 2);
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, Rational(-1, 2));
      link(n - 2, n - 1, -1);
      break;
    case Series::D:
      for (int i = 0; i < n; ++i) diag(i, 2);
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case Series::E:
      // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
      for (int i = 0; i < n; ++i) diag(i, 2);
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case Series::F:
      diag(0, 2);
      diag(1, 2);
      diag(2, 1);
      diag(3, 1);
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, Rational(-1, 2));
      break;
    case Series::G:
      diag(0, Rational(2, 3));
      diag(1, 2);
      link(0, 1, -1);
      break;
  }
  return g;
}

}  // namespace detail

/// Positive roots by the root-string algorithm: beta + a_i is a root iff
/// q > 0 where q = p - <beta, a_i^vee> and p is the length of the downward
/// a_i-string through beta.
inline RootSystem build_root_system(Series series, int rank) {
  if (!is_valid_type(series, rank)) {
    throw ConfigurationError("invalid simple type " + std::string(1, static_cast<char>(series)) + std::to_string(rank));
  }
  RootSystem rs;
  rs.type = {series, rank};
  rs.gram = detail::simple_gram(series, rank);
  const auto n = static_cast<std::size_t>(rank);
  rs.cartan_matrix = Matrix<int>(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational c = Rational(2) * rs.gram(i, j) / rs.gram(i, i);
      if (!c.is_integer()) throw ConstructionError("non-integral Cartan entry");
      rs.cartan_matrix(i, j) = static_cast<int>(c.small_num());
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Root r(n, 0);
    r[i] = 1;
    rs.simple_roots.push_back(r);
  }

  std::vector<Root> layer = rs.simple_roots;
  std::vector<Root> all;
  std::map<Root, bool> known;
  for (const auto& r : layer) known[r] = true;
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), std::greater<>());
    all.insert(all.end(), layer.begin(), layer.end());
    std::vector<Root> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < rank; ++i) {
        int p = 0;
        Root down = beta;
        while (true) {
          down[static_cast<std::size_t>(i)] -= 1;
          if (!known.count(down)) break;
          ++p;
        }
        const int q = p - rs.pairing_with_coroot(beta, i);
        if (q > 0) {
          Root up = beta;
          up[static_cast<std::size_t>(i)] += 1;
          if (!known.count(up)) {
            known[up] = true;
            next.push_back(up);
          }
        }
      }
    }
    layer = std::move(next);
  }
  rs.positive_roots = std::move(all);
  rs.rebuild_index();
  return rs;
}

inline RootSystem build_root_system(const CartanType& t) { return build_root_system(t.series, t.rank); }

}  // namespace cva::liealg
