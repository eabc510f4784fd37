#pragma once

// Structure-constant cache files:
//   dim rank h_dual_coxeter
//   i j k p/q        (one line per nonzero f_{ij}^k, sorted by i, j, k)

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cva/errors.hpp"
#include "cva/liealg/chevalley.hpp"
#include "cva/liealg/lie_algebra.hpp"

namespace cva::liealg {

inline void write_structure_constants(const LieAlgebra& L, std::ostream& os) {
  os << L.dim() << ' ' << L.rank() << ' ' << L.dual_coxeter() << '\n';
  for (std::size_t i = 0; i < L.dim(); ++i) {
    for (std::size_t j = 0; j < L.dim(); ++j) {
      for (const auto& [k, v] : L.bracket_basis(i, j)) os << i << ' ' << j << ' ' << k << ' ' << v << '\n';
    }
  }
}

inline LieAlgebra read_structure_constants(std::istream& is, const std::string& name) {
  std::string line;
  if (!std::getline(is, line)) throw ConfigurationError("structure-constant cache is empty");
  std::istringstream head(line);
  std::size_t dim = 0, rank = 0;
  int hdual = 0;
  if (!(head >> dim >> rank >> hdual) || dim == 0) throw ConfigurationError("malformed cache header: " + line);
  StructureConstants f(dim);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t i = 0, j = 0, k = 0;
    std::string value;
    if (!(row >> i >> j >> k >> value) || i >= dim || j >= dim || k >= dim) {
      throw ConfigurationError("malformed cache line " + std::to_string(lineno) + ": " + line);
    }
    f.at(i, j).push_back({static_cast<std::uint32_t>(k), Rational::parse(value)});
  }
  try {
    return LieAlgebra(name, rank, hdual, std::move(f));
  } catch (const ConstructionError& e) {
    throw ConfigurationError(std::string("cached structure constants rejected: ") + e.what());
  }
}

/// Loads `<dir>/<name>.sc` when present and consistent with the requested
/// type; otherwise builds the Chevalley basis and writes the file.
inline LieAlgebra load_or_build(const CartanType& t, const std::filesystem::path& dir) {
  const auto path = dir / (t.name() + ".sc");
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    LieAlgebra cached = read_structure_constants(in, t.name());
    if (cached.rank() != static_cast<std::size_t>(t.rank)) {
      throw ConfigurationError("cache file " + path.string() + " does not describe " + t.name());
    }
    return cached;
  }
  LieAlgebra built = make_algebra(t);
  std::filesystem::create_directories(dir);
  std::ofstream out(path);
  if (!out) throw ConfigurationError("cannot write cache file " + path.string());
  write_structure_constants(built, out);
  return built;
}

}  // namespace cva::liealg
