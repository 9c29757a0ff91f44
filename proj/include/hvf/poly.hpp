#pragma once

#include "hvf/rational.hpp"

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hvf {

using Exponent = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are keyed by exponent vectors of length n_vars(); no stored
/// coefficient is zero. Iteration order is lexicographic in the exponent,
/// which makes every serialization deterministic.
class Poly {
 public:
  using Terms = std::map<Exponent, Rational>;

  explicit Poly(int n_vars = 1);

  static Poly constant(int n_vars, const Rational& c);
  /// The coordinate x_{index} (0-based) in n_vars variables.
  static Poly variable(int n_vars, int index);
  static Poly monomial(Exponent exponent, const Rational& c);

  int n_vars() const noexcept { return n_vars_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Exponent& e) const;
  /// Adds c·x^e, dropping the term if it cancels.
  void add_term(const Exponent& e, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly pow(int e) const;

  /// ∂/∂x_{var}.
  Poly derivative(int var) const;

  /// p(q_0, ..., q_{n-1}); all q_i must share one variable count, which becomes the result's.
  Poly substitute(std::span<const Poly> values) const;

  /// Re-indexes variables: variable i becomes variable map[i] of a ring with new_n_vars.
  Poly embed(int new_n_vars, std::span<const int> map) const;
  /// Embeds into new_n_vars variables keeping indices (offset added).
  Poly embed(int new_n_vars, int offset = 0) const;

  Rational evaluate(std::span<const Rational> x) const;
  double evaluate(std::span<const double> x) const;
  /// Value at the origin (the constant term).
  Rational constant_term() const;

  /// Weighted degrees Σ w_i α_i of all terms.
  std::set<int> weighted_degrees(std::span<const int> weights) const;

  /// True when some term has a nonzero exponent in variable `var`.
  bool depends_on(int var) const;
  int total_degree() const;

  /// Human-readable form, e.g. "x1^2*x3 - 1/2*x2".
  std::string to_string() const;

 private:
  int n_vars_;
  Terms terms_;
};

/// Weighted degrees of p for exponent vector sigma (entries ≥ 1).
/// p is δ-homogeneous of degree d iff the result is {d} or empty.
std::set<int> poly_weighted_degree(const Poly& p, std::span<const int> sigma);

/// p(λ^{w_1} x_1, ..., λ^{w_n} x_n) in n+1 variables, λ being the last one.
Poly dilate(const Poly& p, std::span<const int> weights);

/// Exact determinant of a square matrix of polynomials (cofactor expansion).
Poly determinant(const std::vector<std::vector<Poly>>& m);

/// Exact rank of a rational matrix (rows × cols) by Gaussian elimination.
int rank(std::vector<std::vector<Rational>> m);
Rational determinant(std::vector<std::vector<Rational>> m);

}  // namespace hvf
