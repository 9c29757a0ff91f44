#pragma once

#include "hvf/vector_field.hpp"

#include <optional>
#include <vector>

namespace hvf {

/// Spanning data for the rank condition at the origin.
struct HormanderCertificate {
  bool passed = false;
  int depth_bound = 0;
  int depth_used = 0;
  int dimension = 0;
  std::vector<MultiIndex> basis_words;
  /// matrix_at_origin[i][j] = i-th component of X_{[I_j]}(0).
  std::vector<std::vector<Rational>> matrix_at_origin;
  int rank = 0;
};

/// Greedy shortlex selection of left-nested brackets whose values at 0 raise the rank.
HormanderCertificate check_rank_at_origin(std::span<const VectorField> fields, int max_depth);
HormanderCertificate check_rank_at_origin(const VectorFieldSystem& sys, int max_depth);
/// Uses the default depth bound σ_n.
HormanderCertificate check_rank_at_origin(const VectorFieldSystem& sys);

/// M(x) with columns X_{[I_j]}(x).
std::vector<std::vector<Rational>> bracket_matrix(const VectorFieldSystem& sys, std::span<const MultiIndex> words,
                                                  std::span<const Rational> x);

struct PointRankResult {
  bool nonsingular = false;      // det M(x) ≠ 0 with the given words
  Rational determinant;
  /// Rescaled check: det M(δ_λ x) at λ = fallback_lambda.
  Rational fallback_lambda;
  Rational fallback_determinant;
  bool fallback_nonsingular = false;
};

/// det M(x) for arbitrary words.
PointRankResult check_words_at_point(const VectorFieldSystem& sys, std::span<const MultiIndex> words,
                                     std::span<const Rational> x);
/// det M(x) for the certified words; requires cert.passed.
PointRankResult check_rank_at_point(const HormanderCertificate& cert, const VectorFieldSystem& sys,
                                    std::span<const Rational> x);

/// Smallest d ≤ max_depth such that brackets of length ≤ d span R^n at 0.
std::optional<int> minimal_depth(const VectorFieldSystem& sys, int max_depth);

/// det M(δ_λ x) as a polynomial in λ (one variable) for rational x.
Poly determinant_along_dilation(const VectorFieldSystem& sys, std::span<const MultiIndex> words,
                                std::span<const Rational> x);

}  // namespace hvf
