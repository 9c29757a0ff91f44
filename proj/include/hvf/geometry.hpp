#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hvf {

/// Homogeneous norm induced by δ_λ(x) = (λ^{e_1} x_1, …, λ^{e_n} x_n).
class HomNorm {
 public:
  explicit HomNorm(std::vector<int> exponents);

  int dimension() const noexcept { return static_cast<int>(exponents_.size()); }
  const std::vector<int>& exponents() const noexcept { return exponents_; }
  /// Σ e_i, the homogeneous dimension.
  int homogeneous_dimension() const noexcept;

  double operator()(std::span<const double> x) const;
  /// δ_λ(x).
  std::vector<double> dilate(std::span<const double> x, double lambda) const;

 private:
  std::vector<int> exponents_;
};

double hom_norm(const HomNorm& norm, std::span<const double> x);

/// Origin-centred anisotropic ball {x : ‖x‖ < r} = {Σ x_i²/r^{2e_i} < 1}.
class Ball {
 public:
  Ball(HomNorm norm, double radius);

  const HomNorm& norm() const noexcept { return norm_; }
  double radius() const noexcept { return radius_; }
  /// Σ x_i² / r^{2e_i} (membership iff < 1).
  double ellipsoid_level(std::span<const double> x) const;
  bool contains(std::span<const double> x) const { return ellipsoid_level(x) < 1.0; }
  /// Half-widths r^{e_i} of the bounding box.
  std::vector<double> semi_axes() const;
  double measure() const;

 private:
  HomNorm norm_;
  double radius_;
};

/// Volume of the Euclidean unit ball in R^d.
double unit_ball_volume(int d);

/// Lebesgue measure r^{Σσ_i}·V_n of B_r(0).
double ball_measure(std::span<const int> sigma, double r);

struct InclusionReport {
  double radius = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t lifted_hits = 0;    // sampled points that fell in the lifted ball
  std::size_t product_hits = 0;   // sampled points that fell in B_{r/2} × B*_{r/2}
  std::size_t outer_violations = 0;  // lifted-ball points outside B_r × B*_r
  std::size_t inner_violations = 0;  // half-radius product points outside the lifted ball
  std::vector<std::vector<double>> counterexamples;  // first few, if any
  bool passed() const { return outer_violations == 0 && inner_violations == 0; }
};

/// Samples the bounding boxes of the lifted ball and of B_{r/2} × B*_{r/2}
/// (`samples` points each) and checks both inclusions pointwise.
InclusionReport ball_inclusions_check(double r, std::span<const int> sigma, std::span<const int> tau,
                                      std::size_t samples, std::uint64_t seed);

}  // namespace hvf
