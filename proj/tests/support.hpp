#pragma once

// Shared fixtures: full analyses are expensive, so each test binary computes
// a given (kappa, sigma, overrides) point once.

#include <map>
#include <memory>
#include <string>

#include "twobody/sweep.hpp"

namespace testing {

using Overrides = std::map<std::string, std::string>;

inline const twobody::PointAnalysis& analysis(twobody::Strength kappa, double sigma,
                                              const Overrides& overrides = {}) {
  static std::map<std::string, std::unique_ptr<twobody::PointAnalysis>> cache;
  std::string key = kappa.to_string() + "|" + twobody::format_real(sigma);
  for (const auto& [k, v] : overrides) key += "|" + k + "=" + v;
  auto& slot = cache[key];
  if (!slot) {
    const auto cfg = twobody::resolve_numerics(overrides, sigma);
    slot = std::make_unique<twobody::PointAnalysis>(twobody::analyze_point({kappa, sigma}, cfg));
  }
  return *slot;
}

inline twobody::Strength hc() { return twobody::Strength::hardcore(); }
inline twobody::Strength k(double v) { return twobody::Strength::finite(v); }

}  // namespace testing
