#pragma once

#include <vector>

namespace hvf {

struct GaussRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;
};

/// n-point Gauss–Legendre rule on [-1, 1]. Cached; thread-safe.
const GaussRule& gauss_legendre(int n);

}  // namespace hvf
