#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cva/liealg/lie_algebra.hpp"

namespace cva {

using Json = nlohmann::ordered_json;

/// Outcome of one verification batch.
struct Report {
  std::string check;
  std::string algebra;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool pass = true;
  std::optional<std::string> first_counterexample;

  void fail(std::string witness) {
    if (pass) first_counterexample = std::move(witness);
    pass = false;
  }

  [[nodiscard]] Json to_json() const {
    Json j;
    j["check"] = check;
    j["algebra"] = algebra;
    j["samples"] = samples;
    j["seed"] = seed;
    j["pass"] = pass;
    if (first_counterexample) j["first_counterexample"] = *first_counterexample;
    return j;
  }
};

inline std::string coefficient_list(const liealg::Element& x) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ']';
  return os.str();
}

}  // namespace cva
