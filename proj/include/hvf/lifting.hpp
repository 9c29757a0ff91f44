#pragma once

#include "hvf/hormander.hpp"
#include "hvf/quadrature.hpp"
#include "hvf/scalar_field.hpp"
#include "hvf/vector_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hvf {

/// Candidate Carnot-group lift of a homogeneous system: R^N = R^n × R^s with
/// a polynomial group law, dilations D_λ(x, ξ) = (δ_λ x, δ*_λ ξ) and lifted fields.
class CarnotGroupSpec {
 public:
  /// law: N polynomials in 2N variables ((x, ξ) then (x', ξ')).
  CarnotGroupSpec(VectorFieldSystem base, std::vector<int> tau, std::vector<Poly> law,
                  std::vector<VectorField> lifted_fields);

  const VectorFieldSystem& base() const noexcept { return base_; }
  int N() const noexcept { return static_cast<int>(weights_.size()); }
  int n() const noexcept { return base_.n(); }
  int s() const noexcept { return static_cast<int>(tau_.size()); }
  const std::vector<int>& tau() const noexcept { return tau_; }
  /// (σ_1, …, σ_n, τ_1, …, τ_s).
  const std::vector<int>& weights() const noexcept { return weights_; }
  const std::vector<Poly>& law() const noexcept { return law_; }
  const std::vector<VectorField>& lifted_fields() const noexcept { return lifted_; }
  /// Σσ_i + Στ_j.
  int homogeneous_dimension() const noexcept;

 private:
  VectorFieldSystem base_;
  std::vector<int> tau_;
  std::vector<int> weights_;
  std::vector<Poly> law_;
  std::vector<VectorField> lifted_;
};

/// One exact identity; `residual` is empty or all-zero when it holds.
struct IdentityCheck {
  std::string name;
  bool passed = false;
  std::vector<Poly> residual;
  std::string detail;
};

struct GroupCertificate {
  bool passed = false;
  std::vector<IdentityCheck> checks;  // associativity, identity, inverse, dilation_automorphism
  std::optional<std::vector<Poly>> inverse;  // x^{-1} as N polynomials in N variables
};

struct LiftCertificate {
  bool passed = false;
  /// projection, xi_only_remainder, homogeneity, left_invariance, lie_generation
  std::vector<IdentityCheck> items;
  HormanderCertificate generation;
};

/// x ∗ y composed with polynomial maps (each N polys in a common ring).
std::vector<Poly> compose_law(const std::vector<Poly>& law, std::span<const Poly> x, std::span<const Poly> y);

/// Inverse map solved by weighted-degree induction; nullopt with reason when the law is not triangular.
std::optional<std::vector<Poly>> solve_inverse(const CarnotGroupSpec& spec, std::string* reason = nullptr);

GroupCertificate verify_group(const CarnotGroupSpec& spec);
LiftCertificate verify_lift(const CarnotGroupSpec& spec);

struct SandwichReport {
  double r = 0;
  double p = 0;
  double c1 = 0;               // meas(B*_{r/2})^{1/p}
  double c2 = 0;               // meas(B*_r)^{1/p}
  Estimate inner;              // ‖u‖_{L^p(B_{r/2})}
  Estimate lifted;             // ‖ũ‖_{L^p(B̃_r)}
  Estimate outer;              // ‖u‖_{L^p(B_r)}
  bool lower_holds = false;    // c1·inner ≤ lifted (within error)
  bool upper_holds = false;    // lifted ≤ c2·outer (within error)
  double max_relative_error = 0;
  bool holds() const { return lower_holds && upper_holds; }
};

/// c1‖u‖_{L^p(B_{r/2})} ≤ ‖ũ‖_{L^p(B̃_r)} ≤ c2‖u‖_{L^p(B_r)} with ũ(x, ξ) = u(x), by quadrature.
SandwichReport projected_norm_sandwich(const CarnotGroupSpec& spec, const ScalarField& u, double r, double p,
                                       const QuadratureSettings& settings = {});

}  // namespace hvf
