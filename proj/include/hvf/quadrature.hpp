#pragma once

#include "hvf/geometry.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace hvf {

enum class QuadratureScheme {
  /// Homogeneous polar coordinates x = δ_ρ(ω), |ω| = 1: Gauss–Legendre in ρ,
  /// trapezoid/Gauss–Legendre angles on the sphere. Radial profiles such as
  /// cutoffs only vary along one axis of the grid.
  Polar,
  /// Product Gauss–Legendre on the unit Euclidean ball in nested sine
  /// coordinates, pushed forward by δ_r. Smooth integrands converge spectrally.
  Ellipsoidal,
  /// Tensor Gauss–Legendre on the bounding box, points outside the ball dropped.
  Masked,
  /// Uniform samples in the bounding box, points outside dropped.
  MonteCarlo,
};

QuadratureScheme parse_scheme(const std::string& name);
std::string to_string(QuadratureScheme s);

struct QuadratureSettings {
  QuadratureScheme scheme = QuadratureScheme::Polar;
  /// Nodes per axis (Monte Carlo: resolution^dim samples).
  int resolution = 24;
  std::uint64_t seed = 20240101;
  /// Norm routines keep doubling the resolution while some relative error
  /// estimate exceeds this (0 disables refinement).
  double target_error = 0.0;
  /// Refinement stops at this resolution or at 2^22 nodes per level.
  int max_resolution = 192;
};

/// Nodes (row-major, dim per node) and weights.
struct QuadratureRule {
  int dim = 0;
  std::vector<double> points;
  std::vector<double> weights;
  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> point(std::size_t i) const { return {points.data() + i * dim, static_cast<std::size_t>(dim)}; }
};

/// Rule for the Euclidean unit ball in R^dim (Ellipsoidal scheme).
QuadratureRule unit_ball_rule(int dim, int resolution);
/// Rule for the Euclidean unit sphere S^{dim-1} (dim ≥ 1) with surface weights.
QuadratureRule unit_sphere_rule(int dim, int resolution);
/// Rule for the anisotropic ball of `ball`.
QuadratureRule ball_rule(const Ball& ball, const QuadratureSettings& settings);

/// Σ_k w_k f(x_k) for `outputs` integrands at once; deterministic sharded reduction.
/// f(point, values) writes `outputs` numbers.
std::vector<double> integrate(const QuadratureRule& rule, std::size_t outputs,
                              const std::function<void(std::span<const double>, std::span<double>)>& f);

/// A value computed at two resolutions; `value` is the finer one.
struct Estimate {
  double value = 0;
  double coarse = 0;
  double error = 0;  // |fine − coarse|, floored at a few ulps of |value|
};

Estimate make_estimate(double coarse, double fine);

}  // namespace hvf
