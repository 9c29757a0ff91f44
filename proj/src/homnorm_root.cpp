#include "hvf/homnorm_root.hpp"

#include "hvf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hvf {

namespace {

double int_pow(double t, int e) {
  double r = 1.0;
  for (; e > 0; e >>= 1, t *= t)
    if (e & 1) r *= t;
  return r;
}

}  // namespace

double homogeneous_norm_residual(std::span<const double> x, std::span<const int> exponents, double t) {
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] * int_pow(t, 2 * exponents[i]);
  return s - 1.0;
}

double homogeneous_norm(std::span<const double> x, std::span<const int> exponents) {
  if (x.size() != exponents.size()) throw DimensionError("point and exponents differ in length");
  const double n = static_cast<double>(x.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a == 0.0) continue;
    const double e = exponents[i];
    // each term ≤ 1/n at lo, the i-th term alone reaches 1 at hi_i
    lo = std::min(lo, std::pow(n * a * a, -0.5 / e));
    hi = std::min(hi, std::pow(a, -1.0 / e));
  }
  if (!std::isfinite(hi)) return 0.0;
  lo = std::min(lo, hi);
  while (hi - lo > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (homogeneous_norm_residual(x, exponents, mid) < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double t = 0.5 * (lo + hi);
  for (int step = 0; step < 5; ++step) {
    double f = -1.0;
    double df = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int e2 = 2 * exponents[i];
      const double term = x[i] * x[i] * int_pow(t, e2);
      f += term;
      df += e2 * term / t;
    }
    if (df <= 0) break;
    const double next = t - f / df;
    if (!(next > 0) || next == t) break;
    t = next;
  }
  return 1.0 / t;
}

}  // namespace hvf
