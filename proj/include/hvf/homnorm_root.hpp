#pragma once

#include <span>

namespace hvf {

/// Homogeneous norm ‖x‖ for the dilation δ_λ(x) = (λ^{e_1} x_1, …, λ^{e_n} x_n):
/// 0 at the origin, otherwise 1/t* where t* > 0 solves Σ x_i² t^{2 e_i} = 1.
/// Bracketed bisection to relative width 1e-14, then at most 5 Newton steps.
double homogeneous_norm(std::span<const double> x, std::span<const int> exponents);

/// Σ x_i² t^{2 e_i} - 1, the defining residual.
double homogeneous_norm_residual(std::span<const double> x, std::span<const int> exponents, double t);

}  // namespace hvf
