#pragma once

// Conformal generators J_a[n,m], I_a[n,m], E[n,m], F[n,m] with a power of
// the translation operator (written T or d; they are the same operator).

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cva/errors.hpp"

namespace cva::lambda {

enum class Kind : std::uint8_t { J = 0, I = 1, E = 2, F = 3 };

inline char kind_char(Kind k) { return "JIEF"[static_cast<int>(k)]; }

/// Packed so that integer order is the canonical letter order
/// (kind J<I<E<F, label, n, m, dpow).
class GenSymbol {
 public:
  static constexpr int kNoLabel = -1;

  constexpr GenSymbol() = default;

  static GenSymbol make(Kind kind, int label, int n, int m, int dpow = 0) {
    const bool labelled = kind == Kind::J || kind == Kind::I;
    if (labelled && label < 0) throw UsageError("J/I generators need a Lie-algebra label");
    if (!labelled && label != kNoLabel) throw UsageError("E/F generators carry no Lie-algebra label");
    if (n < 0 || m < 0 || dpow < 0) throw UsageError("negative bidegree or derivative power");
    if (n >= (1 << 12) || m >= (1 << 12) || dpow >= (1 << 16) || label >= (1 << 21)) {
      throw UsageError("generator index out of range");
    }
    if (kind == Kind::E && n == 0 && m == 0) throw UsageError("E[0,0] is zero and cannot be a generator");
    GenSymbol g;
    g.key_ = (static_cast<std::uint64_t>(kind) << 62) | (static_cast<std::uint64_t>(label + 1) << 40) |
             (static_cast<std::uint64_t>(n) << 28) | (static_cast<std::uint64_t>(m) << 16) |
             static_cast<std::uint64_t>(dpow);
    return g;
  }
  static GenSymbol J(int label, int n, int m, int dpow = 0) { return make(Kind::J, label, n, m, dpow); }
  static GenSymbol I(int label, int n, int m, int dpow = 0) { return make(Kind::I, label, n, m, dpow); }
  static GenSymbol E(int n, int m, int dpow = 0) { return make(Kind::E, kNoLabel, n, m, dpow); }
  static GenSymbol F(int n, int m, int dpow = 0) { return make(Kind::F, kNoLabel, n, m, dpow); }

  [[nodiscard]] Kind kind() const { return static_cast<Kind>(key_ >> 62); }
  [[nodiscard]] int label() const { return static_cast<int>((key_ >> 40) & 0x3fffff) - 1; }
  [[nodiscard]] int n() const { return static_cast<int>((key_ >> 28) & 0xfff); }
  [[nodiscard]] int m() const { return static_cast<int>((key_ >> 16) & 0xfff); }
  [[nodiscard]] int dpow() const { return static_cast<int>(key_ & 0xffff); }
  [[nodiscard]] std::uint64_t key() const { return key_; }

  /// n + m + 1; derivatives do not change the weight.
  [[nodiscard]] int weight() const { return n() + m() + 1; }

  [[nodiscard]] GenSymbol derived(int k = 1) const {
    if (dpow() + k >= (1 << 16)) throw UsageError("derivative power overflow");
    GenSymbol g;
    g.key_ = key_ + static_cast<std::uint64_t>(k);
    return g;
  }
  [[nodiscard]] GenSymbol underived() const {
    GenSymbol g;
    g.key_ = key_ & ~std::uint64_t(0xffff);
    return g;
  }

  [[nodiscard]] std::string str(const std::vector<std::string>* labels = nullptr) const {
    std::string s;
    if (dpow() == 1) s += "d";
    if (dpow() > 1) s += "d^" + std::to_string(dpow());
    s += kind_char(kind());
    if (label() >= 0) {
      s += '_';
      s += labels && static_cast<std::size_t>(label()) < labels->size() ? (*labels)[static_cast<std::size_t>(label())]
                                                                        : std::to_string(label());
    }
    s += '[' + std::to_string(n()) + ',' + std::to_string(m()) + ']';
    return s;
  }

  friend constexpr auto operator<=>(GenSymbol, GenSymbol) = default;

 private:
  std::uint64_t key_ = 0;
};

/// An ordered tensor word; the empty word is the unit.
using Letters = boost::container::small_vector<GenSymbol, 4>;

inline int weight(const Letters& w) {
  int s = 0;
  for (const auto& g : w) s += g.weight();
  return s;
}

inline bool is_ordered(const Letters& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] < w[i - 1]) return false;
  }
  return true;
}

inline std::string word_str(const Letters& w, const std::vector<std::string>* labels = nullptr) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i].str(labels);
  }
  return s;
}

struct LettersHash {
  std::size_t operator()(const Letters& w) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
    for (const auto& g : w) {
      h ^= g.key() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace cva::lambda
