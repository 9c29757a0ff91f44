#pragma once

#include <span>
#include <vector>

namespace hvf {

/// Normalized bump-integral smoothstep S(t) = ∫_0^t ψ / ∫_0^1 ψ with
/// ψ(t) = exp(-1/(t(1-t))). S = 0 for t ≤ 0 and S = 1 for t ≥ 1.
double smoothstep(double t);

/// Cutoff profile χ(s) = 1 - S(2s + 1/2): smooth, nonincreasing, χ ≡ 1 on
/// (-∞, -1/4], χ ≡ 0 on [1/4, ∞), χ(0) = 1/2, χ(-s) = 1 - χ(s).
double chi(double s);

/// χ^(j)(s) for j = 0..order.
std::vector<double> chi_derivatives(double s, int order);

/// True when s lies where χ is locally constant (all derivatives vanish).
inline bool chi_is_flat(double s) { return s <= -0.25 || s >= 0.25; }

}  // namespace hvf
