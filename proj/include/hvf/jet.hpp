#pragma once

#include "hvf/errors.hpp"
#include "hvf/poly.hpp"

#include <boost/container/small_vector.hpp>

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <type_traits>
#include <vector>

namespace hvf {

/// Largest derivative order a jet may carry.
inline constexpr int kMaxJetOrder = 6;

/// Index tables for truncated Taylor polynomials in n variables.
///
/// Multi-indices are ordered by total degree, then lexicographically
/// (descending in the first variable), so the multi-indices of order ≤ k form
/// a prefix of length count(k) for every k ≤ kMaxJetOrder.
class JetLayout {
 public:
  struct Product {
    std::uint16_t a, b, out;
  };

  static const JetLayout& get(int n_vars);

  int n_vars() const noexcept { return n_; }
  std::size_t count(int order) const { return counts_.at(order); }
  const Exponent& multi_index(std::size_t i) const { return indices_[i]; }
  int degree(std::size_t i) const { return degrees_[i]; }
  /// Position of a multi-index, or -1 when its order exceeds kMaxJetOrder.
  int index_of(const Exponent& alpha) const;
  /// Position of alpha_i + e_var (only for degree(i) < kMaxJetOrder).
  int raise(std::size_t i, int var) const { return raise_[i * n_ + var]; }
  /// α! for multi-index i.
  double factorial(std::size_t i) const { return factorials_[i]; }
  /// All (a, b) pairs with deg a + deg b ≤ order.
  std::span<const Product> products(int order) const;

 private:
  explicit JetLayout(int n_vars);

  int n_;
  std::vector<Exponent> indices_;
  std::vector<int> degrees_;
  std::vector<std::size_t> counts_;
  std::vector<int> raise_;
  std::vector<double> factorials_;
  mutable std::array<std::vector<Product>, kMaxJetOrder + 1> products_;
  mutable std::array<std::once_flag, kMaxJetOrder + 1> products_once_;
};

/// Truncated multivariate Taylor polynomial f(x0 + h) ≈ Σ c_α h^α, |α| ≤ order.
///
/// T is either `double` or `Rational`. Arithmetic truncates at the smaller of
/// the operand orders.
template <class T>
class Jet {
 public:
  Jet() = default;
  Jet(int n_vars, int order);

  static Jet constant(int n_vars, int order, const T& value);
  /// x_var expanded at x0: x0 + h_var.
  static Jet variable(int n_vars, int order, int var, const T& x0);

  int n_vars() const noexcept { return layout_->n_vars(); }
  int order() const noexcept { return order_; }
  const JetLayout& layout() const noexcept { return *layout_; }

  const T& value() const { return c_[0]; }
  const T& coeff(std::size_t i) const { return c_[i]; }
  T& coeff(std::size_t i) { return c_[i]; }
  std::size_t size() const noexcept { return c_.size(); }

  /// Taylor coefficient of h^α.
  T coeff(const Exponent& alpha) const;
  /// ∂^α f(x0) = α!·c_α.
  T partial(const Exponent& alpha) const;

  Jet truncated(int order) const;
  /// ∂f/∂x_var, one order lower.
  Jet derivative(int var) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const T& s);
  Jet operator-() const;
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const T& s) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }

  /// f(g) for a univariate f given f^(j)(g.value()) for j = 0..order.
  Jet compose(std::span<const T> derivatives) const;
  Jet reciprocal() const;
  Jet pow(int e) const;

  static Jet multiply(const Jet& a, const Jet& b);

 private:
  const JetLayout* layout_ = nullptr;
  int order_ = 0;
  // floating jets in few variables stay off the heap
  using Storage = std::conditional_t<std::is_same_v<T, double>, boost::container::small_vector<T, 16>, std::vector<T>>;
  Storage c_;
};

/// Expansion of polynomial p at the point carried by `vars` (one jet per variable).
template <class T>
Jet<T> evaluate_on_jets(const Poly& p, std::span<const Jet<T>> vars);

/// Identity jets x0_i + h_i for a point.
template <class T>
std::vector<Jet<T>> point_jets(std::span<const T> x0, int order);

extern template class Jet<double>;
extern template class Jet<Rational>;

}  // namespace hvf
