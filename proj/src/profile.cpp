#include "hvf/profile.hpp"

#include "hvf/gauss_legendre.hpp"
#include "hvf/jet.hpp"

#include <cmath>

namespace hvf {

namespace {

double psi(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return std::exp(-1.0 / (t * (1.0 - t)));
}

// ∫_0^b ψ, b ∈ [0, 1/2], composite Gauss–Legendre.
double psi_integral(double b) {
  constexpr int kPanels = 16;
  const GaussRule& rule = gauss_legendre(20);
  double total = 0;
  const double h = b / kPanels;
  for (int p = 0; p < kPanels; ++p) {
    const double mid = (p + 0.5) * h;
    double panel = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) panel += rule.weights[i] * psi(mid + 0.5 * h * rule.nodes[i]);
    total += 0.5 * h * panel;
  }
  return total;
}

double half_mass() {
  static const double value = psi_integral(0.5);
  return value;
}

}  // namespace

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t == 0.5) return 0.5;
  if (t > 0.5) return 1.0 - smoothstep(1.0 - t);
  return 0.5 * psi_integral(t) / half_mass();
}

double chi(double s) { return 1.0 - smoothstep(2.0 * s + 0.5); }

std::vector<double> chi_derivatives(double s, int order) {
  std::vector<double> d(order + 1, 0.0);
  d[0] = chi(s);
  if (order == 0 || chi_is_flat(s)) return d;
  const double t = 2.0 * s + 0.5;
  // ψ^(j)(t) from a univariate jet of exp(-1/(t(1-t)))
  auto tj = Jet<double>::variable(1, order - 1, 0, t);
  auto one = Jet<double>::constant(1, order - 1, 1.0);
  auto inner = -(tj * (one - tj)).reciprocal();
  std::vector<double> exp_derivs(order, std::exp(inner.value()));
  auto psi_jet = inner.compose(exp_derivs);
  const double z = 2.0 * half_mass();
  double scale = 1.0;
  double fact = 1.0;
  for (int j = 1; j <= order; ++j) {
    scale *= 2.0;
    if (j > 1) fact *= (j - 1);
    // χ^(j)(s) = -2^j S^(j)(t), S^(j) = ψ^(j-1)/Z
    d[j] = -scale * psi_jet.coeff(static_cast<std::size_t>(j - 1)) * fact / z;
  }
  return d;
}

}  // namespace hvf
