#pragma once

#include "hvf/geometry.hpp"
#include "hvf/quadrature.hpp"
#include "hvf/scalar_field.hpp"
#include "hvf/vector_field.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hvf {

// ------------------------------------------------------------------ cutoffs

/// φ(x) = χ(‖x‖/(2(r2−r1)) − (r1+r2)/(4(r2−r1))): φ ≡ 1 on B_{r1}, φ ≡ 0 off B_{r2}.
struct CutoffSpec {
  double r1 = 0;
  double r2 = 0;
  std::vector<int> sigma;
  ScalarField phi;
};

CutoffSpec make_cutoff(double r1, double r2, std::span<const int> sigma);

struct CutoffBound {
  int order = 0;
  double sup = 0;         // max over samples of Σ_{|I|=j} |X_I φ|
  double normalized = 0;  // sup·(r2 − r1)^j
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Samples δ_{r2}(y) for y uniform in the Euclidean unit ball, so runs at
/// dilated radii see dilated sample sets.
CutoffBound cutoff_derivative_bounds(const CutoffSpec& cutoff, const VectorFieldSystem& sys, int order,
                                     std::size_t samples, std::uint64_t seed);

// ------------------------------------------------------------------ norms

/// Linear combination Σ c·X_W u of iterated derivatives; an empty word means u.
struct WordCombination {
  std::vector<std::pair<std::vector<int>, double>> terms;
  static WordCombination single(std::vector<int> word) { return {{{std::move(word), 1.0}}}; }
};

/// ‖Σ c·X_W u‖_{L^p(ball)} for each combination, at resolutions r and 2r.
std::vector<Estimate> combination_norms(std::span<const VectorField> fields, const ScalarField& u, const Ball& ball,
                                        std::span<const WordCombination> combos, double p,
                                        const QuadratureSettings& settings);

Estimate lp_norm(const ScalarField& u, const Ball& ball, double p, const QuadratureSettings& settings = {});

struct WordNorm {
  std::vector<int> word;  // 1-based; empty for u itself
  Estimate norm;
};

struct SobolevReport {
  double p = 0;
  int k = 0;
  std::vector<WordNorm> terms;
  std::vector<double> seminorms;        // ‖D^i u‖ for i = 0..k
  std::vector<double> seminorm_errors;
  double total = 0;                     // Σ_i seminorms[i]
  double total_error = 0;
  double max_relative_error = 0;
  bool flagged = false;                 // an error estimate exceeded the tolerance
};

SobolevReport sobolev_norm(const VectorFieldSystem& sys, const ScalarField& u, const Ball& omega, int k, double p,
                           const QuadratureSettings& settings = {}, double tolerance = 1e-3);

/// {0.05, 0.10, …, 0.95}.
std::vector<double> default_sigma_grid();

struct PhiReport {
  double value = 0;           // max over the grid (a lower bound for the supremum)
  double argmax_sigma = 0;
  std::vector<double> sigma_grid;
  std::vector<double> terms;  // ((1−σ)R)^k ‖D^k u‖_{L^p(B_{σR})}
  double max_relative_error = 0;
};

PhiReport phi_functional(const VectorFieldSystem& sys, const ScalarField& u, double R, int k, double p,
                         std::span<const double> sigma_grid, const QuadratureSettings& settings = {});

// ------------------------------------------------------------------ harnesses

struct FamilyMember {
  std::string name;
  ScalarField u;
  double support_radius = 0;  // supp u ⊂ closure of B_{support_radius}
};

/// Weighted monomials of degree ≤ 4 times exp(−|x|²) times φ_{(r, 2r)}, r ∈ {1, 2}.
std::vector<FamilyMember> default_family(const VectorFieldSystem& sys);

struct RatioRow {
  std::string inequality;  // "global", "ball", "phi", "theta", "lambda"
  std::string function;
  int index = 0;           // field index (1-based) or derivative order, 0 if unused
  double R = 0;
  double epsilon = 0;
  double lhs = 0;
  double second = 0;       // second-order (or right-hand) term
  double zeroth = 0;
  double ratio = 0;
};

struct InequalityReport {
  std::string id;
  double p = 0;
  int k = 0;
  std::vector<double> eps_grid;
  std::vector<double> R_grid;
  std::map<std::string, double> constants;
  std::vector<RatioRow> rows;
  double max_relative_error = 0;
  bool quadrature_ok = true;
  bool passed = false;
};

/// Both harnesses refine quadrature to `tolerance` unless settings.target_error is set.
/// Empirical constants for ‖X_i u‖ ≤ ε‖X_i²u‖ + (c/ε)‖u‖ (on R^n and on B_{R/4}/B_R)
/// and for Φ_1 ≤ εΦ_2 + (α/ε)Φ_0 with ε ∈ (0, 1].
InequalityReport interpolation_harness(const VectorFieldSystem& sys, std::span<const FamilyMember> family, double p,
                                       std::span<const double> eps_grid, std::span<const double> R_grid,
                                       const QuadratureSettings& settings = {},
                                       std::span<const double> sigma_grid = {}, double tolerance = 1e-3);

/// Empirical Θ_{k,p} (‖D^{i+2}u‖ ≤ Θ‖D^i(Lu)‖, i ≤ k) and Λ_{k,p}
/// (‖u‖_{W^{k+2,p}} ≤ Λ(‖Lu‖_{W^{k,p}} + ‖u‖_{L^p})).
InequalityReport apriori_harness(const VectorFieldSystem& sys, std::span<const FamilyMember> family, double p, int k,
                                 const QuadratureSettings& settings = {}, double tolerance = 1e-3);

/// max_i of |X_i²(φu) − (u X_i²φ + 2 X_iφ X_iu + φ X_i²u)| relative to the size of the terms.
double leibniz_identity_error(const VectorFieldSystem& sys, const ScalarField& phi, const ScalarField& u,
                              std::span<const double> x);

/// Σ_j X_j² u at x.
double sub_laplacian(const VectorFieldSystem& sys, const ScalarField& u, std::span<const double> x);

}  // namespace hvf
