#pragma once

#include "hvf/io.hpp"
#include "hvf/random.hpp"
#include "hvf/rational.hpp"

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(HVF_FIXTURE_DIR) / name;
}

/// Small random rationals a/b with |a| ≤ 9, 1 ≤ b ≤ 5.
inline std::vector<hvf::Rational> random_rational_point(hvf::Rng& rng, int n) {
  std::vector<hvf::Rational> x;
  for (int i = 0; i < n; ++i) {
    const int a = static_cast<int>(rng.uniform() * 19) - 9;
    const int b = 1 + static_cast<int>(rng.uniform() * 5);
    x.emplace_back(a, b);
  }
  return x;
}

inline std::vector<double> to_doubles(const std::vector<hvf::Rational>& x) {
  std::vector<double> out;
  for (const auto& v : x) out.push_back(hvf::to_double(v));
  return out;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace testing
