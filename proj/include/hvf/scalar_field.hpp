#pragma once

#include "hvf/jet.hpp"
#include "hvf/poly.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hvf {

/// Immutable expression tree for a scalar function on R^n.
///
/// Text form is prefix notation (s-expressions):
///
///     expr   := number | var | '(' op expr... ')'
///     number := integer | integer '/' integer | decimal   (exact rational)
///     var    := 'x' index                                (1-based)
///     op     := '+' | '*'                  n-ary, n ≥ 1
///             | '-'                        unary negation or binary difference
///             | '/'                        binary quotient
///             | '^'                        (^ expr integer)
///             | 'exp'                      unary
///             | 'chi'                      unary cutoff profile χ
///             | 'norm:' e1 ',' e2 ...      homogeneous norm of its n arguments
///                                          for the dilation exponents e_i
///
/// Example: "(* (exp (- (+ (^ x1 2) (^ x2 2)))) (chi (norm:1,2 x1 x2)))".
class ScalarField {
 public:
  enum class Kind { Constant, Variable, Add, Mul, Neg, Div, Pow, Exp, Chi, Norm };

  struct Node {
    Kind kind;
    Rational constant;              // Constant
    double approx = 0;              // Constant, rounded once
    int index = 0;                  // Variable (0-based) or Pow exponent
    std::vector<int> exponents;     // Norm
    std::vector<std::shared_ptr<const Node>> children;
  };

  ScalarField(int n_vars, std::shared_ptr<const Node> root);

  static ScalarField constant(int n_vars, const Rational& c);
  static ScalarField variable(int n_vars, int index);
  static ScalarField from_poly(const Poly& p);
  static ScalarField parse(std::string_view text, int n_vars);
  /// ‖(args)‖ for the dilation with the given exponents.
  static ScalarField hom_norm(std::span<const int> exponents, std::span<const ScalarField> args);
  /// ‖x‖ of the coordinates themselves.
  static ScalarField hom_norm(int n_vars, std::span<const int> exponents);

  int n_vars() const noexcept { return n_vars_; }
  const Node& root() const noexcept { return *root_; }
  std::shared_ptr<const Node> root_ptr() const noexcept { return root_; }

  /// True when only +, -, *, /, integer powers, constants and variables occur.
  bool is_rational() const;

  /// Prefix-notation text; parse(to_string()) reproduces the tree.
  std::string to_string() const;

  ScalarField operator-() const;
  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  ScalarField pow(int e) const;
  ScalarField exp() const;
  ScalarField chi() const;

  /// f(g_1, ..., g_n): replaces each variable by an expression (all in one ring).
  ScalarField substitute(std::span<const ScalarField> values) const;
  /// f ∘ δ_λ for δ_λ(x) = (λ^{w_1} x_1, ...).
  ScalarField dilate(std::span<const int> weights, const Rational& lambda) const;
  /// The same expression read in a larger ring (lifted variables ignored).
  ScalarField embed(int new_n_vars) const;

  double evaluate(std::span<const double> x) const;

  /// Floating jet of the given order (≤ kMaxJetOrder) at x.
  /// Throws NonSmoothPointError where a profile node is not smooth.
  Jet<double> jet(std::span<const double> x, int order) const;
  /// Exact jet; requires is_rational().
  Jet<Rational> jet(std::span<const Rational> x, int order) const;

 private:
  int n_vars_;
  std::shared_ptr<const Node> root_;
};

}  // namespace hvf
