#pragma once

#include "hvf/jet.hpp"
#include "hvf/poly.hpp"
#include "hvf/scalar_field.hpp"

#include <span>
#include <string>
#include <vector>

namespace hvf {

/// Σ_k b_k(x) ∂_{x_k} with exact polynomial coefficients.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Poly> coefficients);

  static VectorField zero(int dim);
  /// ∂_{x_k} in dim variables (k 0-based).
  static VectorField coordinate(int dim, int k);

  int dim() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Poly& operator[](int k) const { return coeffs_.at(k); }
  const std::vector<Poly>& coefficients() const noexcept { return coeffs_; }
  bool is_zero() const;

  /// Derivation applied to a polynomial: Σ b_k ∂_k p.
  Poly apply(const Poly& p) const;
  /// Applied to a jet (order drops by one); coefficient jets expanded at the jet's base point.
  template <class T>
  Jet<T> apply(const Jet<T>& u, std::span<const Jet<T>> coefficient_jets) const;

  std::vector<Rational> evaluate(std::span<const Rational> x) const;
  std::vector<double> evaluate(std::span<const double> x) const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator*(const Rational& c, VectorField a);
  friend bool operator==(const VectorField&, const VectorField&) = default;

  std::string to_string() const;

 private:
  std::vector<Poly> coeffs_;
};

/// [a, b] = a∘b − b∘a as a derivation, component-wise exact.
VectorField lie_bracket(const VectorField& a, const VectorField& b);

/// Word I = (i_1, ..., i_k) over {0, ..., m-1} (stored 0-based; printed 1-based).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> word);
  MultiIndex(std::initializer_list<int> word) : MultiIndex(std::vector<int>(word)) {}
  /// From 1-based indices as written by users.
  static MultiIndex one_based(std::span<const int> word);

  std::size_t size() const noexcept { return word_.size(); }
  int operator[](std::size_t i) const { return word_[i]; }
  const std::vector<int>& word() const noexcept { return word_; }
  std::vector<int> one_based() const;
  void validate(int m) const;
  std::string to_string() const;  // "(1,2)"

  /// Shortlex: shorter first, then lexicographic.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> word_;
};

/// All words of length 1..max_len over m letters, shortlex order.
std::vector<MultiIndex> enumerate_words(int m, int max_len);

/// Violation of δ-homogeneity for one coefficient b_{j,k}.
struct H1Violation {
  int field = 0;       // j (0-based)
  int coordinate = 0;  // k (0-based)
  Exponent monomial;
  int weighted_degree = 0;
  int expected_degree = 0;
};

struct H1Certificate {
  bool passed = false;
  /// Every b_{j,k} depends only on x_i with σ_i ≤ σ_k − 1.
  bool triangular = false;
  std::vector<H1Violation> violations;
};

/// n polynomial vector fields with dilation exponents σ (the pair (X, δ_λ)).
class VectorFieldSystem {
 public:
  /// Validates 1 = σ_1 ≤ … ≤ σ_n, coefficient rings, and rational linear
  /// independence of the fields as differential operators.
  VectorFieldSystem(std::string name, std::vector<int> sigma, std::vector<VectorField> fields);

  const std::string& name() const noexcept { return name_; }
  int n() const noexcept { return static_cast<int>(sigma_.size()); }
  int m() const noexcept { return static_cast<int>(fields_.size()); }
  const std::vector<int>& sigma() const noexcept { return sigma_; }
  const std::vector<VectorField>& fields() const noexcept { return fields_; }
  const VectorField& field(int j) const { return fields_.at(j); }
  /// Homogeneous dimension Σ_k σ_k.
  int q() const noexcept { return q_; }

 private:
  std::string name_;
  std::vector<int> sigma_;
  std::vector<VectorField> fields_;
  int q_ = 0;
};

/// Rank of the fields as elements of the rational vector space of derivations.
int operator_rank(std::span<const VectorField> fields);

H1Certificate check_h1(const VectorFieldSystem& sys);

/// Left-nested bracket X_{[I]} = [[X_{i1}, X_{i2}], …, X_{ik}].
VectorField nested_bracket(const VectorFieldSystem& sys, const MultiIndex& word);
VectorField nested_bracket(std::span<const VectorField> fields, const MultiIndex& word);

/// Memoized left-nested brackets of all words up to max_len (shortlex order).
std::vector<std::pair<MultiIndex, VectorField>> all_nested_brackets(std::span<const VectorField> fields,
                                                                     int max_len);

/// Checks X_{[I]}(δ_λ x) = λ^{-|I|} δ_λ(X_{[I]}(x)) as a polynomial identity in (x, λ);
/// returns the residual (zero when the identity holds).
std::vector<Poly> bracket_homogeneity_residual(const VectorField& bracket, int length, std::span<const int> sigma);

/// X_I u at x for polynomial u, exact (sequential symbolic application).
Rational apply_operator(const VectorFieldSystem& sys, const MultiIndex& word, const Poly& u,
                        std::span<const Rational> x);
/// X_I u at x from the order-|I| jet of u (|I| ≤ 6).
double apply_operator(const VectorFieldSystem& sys, const MultiIndex& word, const ScalarField& u,
                      std::span<const double> x);
/// Exact variant for rational u.
Rational apply_operator(const VectorFieldSystem& sys, const MultiIndex& word, const ScalarField& u,
                        std::span<const Rational> x);

/// Jets of X_I u for every word with |I| ≤ max_len, computed from a single jet of u.
/// Index k lists the words of length k in lexicographic order; k = 0 holds u
/// itself under a default-constructed (empty) MultiIndex.
template <class T>
struct WordJets {
  std::vector<std::vector<std::pair<MultiIndex, Jet<T>>>> by_length;
};

template <class T>
WordJets<T> word_jets(std::span<const VectorField> fields, const Jet<T>& u, std::span<const T> x, int max_len);

/// Divergence Σ_k ∂_k b_k.
Poly divergence(const VectorField& f);

}  // namespace hvf
