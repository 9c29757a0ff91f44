#include "hvf/gauss_legendre.hpp"

#include "hvf/errors.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace hvf {

namespace {

GaussRule build_rule(int n) {
  GaussRule rule;
  // boost returns the nonnegative zeros in ascending order
  std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
  std::vector<double> nodes;
  for (double z : zeros)
    if (z != 0.0) nodes.push_back(-z);
  for (double z : zeros) nodes.push_back(z);
  std::sort(nodes.begin(), nodes.end());
  for (double x : nodes) {
    double dp = boost::math::legendre_p_prime(n, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussRule>(build_rule(n));
  return *slot;
}

}  // namespace hvf
