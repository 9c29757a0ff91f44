#include "doctest.h"
#include "support.hpp"

#include "hvf/errors.hpp"
#include "hvf/homnorm_root.hpp"
#include "hvf/jet.hpp"
#include "hvf/poly.hpp"
#include "hvf/profile.hpp"
#include "hvf/scalar_field.hpp"

#include <cmath>
#include <set>

using namespace hvf;

namespace {

Poly x(int n, int i) { return Poly::variable(n, i); }

// ∂^alpha p by repeated symbolic differentiation.
Poly symbolic_partial(Poly p, const Exponent& alpha) {
  for (std::size_t v = 0; v < alpha.size(); ++v)
    for (int k = 0; k < alpha[v]; ++k) p = p.derivative(static_cast<int>(v));
  return p;
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("weighted degree of single monomials and sums") {
  const std::vector<int> sigma{1, 2};
  CHECK(poly_weighted_degree(x(2, 0).pow(2), sigma) == std::set<int>{2});
  CHECK(poly_weighted_degree(x(2, 0), sigma) == std::set<int>{1});
  CHECK(poly_weighted_degree(x(2, 0) + x(2, 1), sigma) == std::set<int>{1, 2});
  CHECK(poly_weighted_degree(Poly(2), sigma).empty());
}

TEST_CASE("weighted degree rejects mismatched exponent vectors") {
  const std::vector<int> bad{1};
  CHECK_THROWS_AS(poly_weighted_degree(x(2, 0), bad), DimensionError);
  const std::vector<int> zero{1, 0};
  CHECK_THROWS_AS(poly_weighted_degree(x(2, 0), zero), InvalidArgument);
}

TEST_CASE("polynomial ring arithmetic") {
  const Poly a = x(2, 0) + x(2, 1);
  const Poly b = x(2, 0) - x(2, 1);
  CHECK(a * b == x(2, 0).pow(2) - x(2, 1).pow(2));
  CHECK((a - a).is_zero());
  CHECK(a.pow(3).total_degree() == 3);
  CHECK(a.pow(2).coefficient({1, 1}) == Rational(2));
  const Poly p = Poly::monomial({2, 1}, Rational(3, 2));
  CHECK(p.derivative(0) == Poly::monomial({1, 1}, Rational(3)));
  CHECK(p.to_string() == "3/2*x1^2*x2");
}

TEST_CASE("substitution and embedding") {
  // p(x1, x2) = x1*x2 with x1 -> y1 + y2, x2 -> y1 - y2
  const Poly p = x(2, 0) * x(2, 1);
  std::vector<Poly> values{x(2, 0) + x(2, 1), x(2, 0) - x(2, 1)};
  CHECK(p.substitute(values) == x(2, 0).pow(2) - x(2, 1).pow(2));
  CHECK(x(2, 1).embed(4, 2) == x(4, 3));
}

TEST_CASE("dilation of a homogeneous polynomial factors out lambda^d") {
  const std::vector<int> sigma{1, 2, 3};
  const Poly p = x(3, 0) * x(3, 1) + x(3, 2);
  const Poly d = dilate(p, sigma);
  const Poly lambda = Poly::variable(4, 3);
  CHECK(d == lambda.pow(3) * p.embed(4));
}

TEST_CASE("exact determinant and rank") {
  std::vector<std::vector<Rational>> m{{1, 2}, {3, 4}};
  CHECK(determinant(m) == Rational(-2));
  std::vector<std::vector<Rational>> singular{{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  CHECK(rank(singular) == 2);
  CHECK(determinant(singular) == Rational(0));
  std::vector<std::vector<Poly>> pm{{x(1, 0), Poly::constant(1, 1)}, {Poly::constant(1, 1), x(1, 0)}};
  CHECK(determinant(pm) == x(1, 0).pow(2) - Poly::constant(1, 1));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("7") == Rational(7));
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("jet of x1*x2 at (1,1)") {
  const auto f = ScalarField::parse("(* x1 x2)", 2);
  const std::vector<double> pt{1.0, 1.0};
  const auto j = f.jet(pt, 2);
  CHECK(j.partial({1, 1}) == doctest::Approx(1.0));
  CHECK(j.partial({2, 0}) == doctest::Approx(0.0));
  CHECK(j.value() == doctest::Approx(1.0));
}

TEST_CASE("Gaussian jet at the origin") {
  const auto f = ScalarField::parse("(exp (- (^ x1 2)))", 1);
  const std::vector<double> pt{0.0};
  const auto j = f.jet(pt, 2);
  CHECK(j.value() == doctest::Approx(1.0));
  CHECK(j.partial({1}) == doctest::Approx(0.0));
  CHECK(j.partial({2}) == doctest::Approx(-2.0));
}

TEST_CASE("norm node against the closed form") {
  const auto f = ScalarField::hom_norm(2, std::vector<int>{1, 2});
  const std::vector<double> pt{1.0, 1.0};
  const double closed = std::sqrt(std::sqrt(5.0) + 1.0) / std::sqrt(2.0);
  CHECK(std::abs(f.evaluate(pt) - closed) < 1e-12);
  CHECK(std::abs(f.jet(pt, 0).value() - 1.2720196495140689) < 1e-12);
}

TEST_CASE("exact jets agree with symbolic partials at random rational points") {
  Rng rng(11);
  const Poly p = x(3, 0).pow(3) * x(3, 1) - Poly::monomial({0, 2, 2}, Rational(5, 3)) + x(3, 2).pow(4) +
                 Poly::monomial({1, 1, 1}, Rational(-7, 2)) + Poly::constant(3, 2);
  const auto f = ScalarField::from_poly(p);
  const auto& layout = JetLayout::get(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pt = testing::random_rational_point(rng, 3);
    const auto j = f.jet(std::span<const Rational>(pt), 4);
    for (std::size_t i = 0; i < layout.count(4); ++i) {
      const auto& alpha = layout.multi_index(i);
      REQUIRE(j.partial(alpha) == symbolic_partial(p, alpha).evaluate(pt));
    }
  }
}

TEST_CASE("floating jets agree with exact jets for rational expressions") {
  Rng rng(12);
  const auto f = ScalarField::parse("(/ (+ (* x1 x2) 3) (+ 2 (^ x1 2)))", 2);
  const auto& layout = JetLayout::get(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pt = testing::random_rational_point(rng, 2);
    const auto exact = f.jet(std::span<const Rational>(pt), 5);
    const auto ptd = testing::to_doubles(pt);
    const auto approx = f.jet(std::span<const double>(ptd), 5);
    for (std::size_t i = 0; i < layout.count(5); ++i) {
      const double e = to_double(exact.coeff(i));
      REQUIRE(std::abs(approx.coeff(i) - e) <= 1e-12 * std::max(1.0, std::abs(e)));
    }
  }
}

TEST_CASE("jets of transcendental expressions match central differences") {
  Rng rng(13);
  const auto f = ScalarField::parse("(* (exp (- (+ (^ x1 2) (* 1/2 x2)))) (chi (- (norm:1,2 x1 x2) 1)))", 2);
  const double h = 1e-4;
  int checked = 0;
  while (checked < 50) {
    const std::vector<double> pt{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    const double s = homogeneous_norm(pt, std::vector<int>{1, 2}) - 1.0;
    if (std::abs(std::abs(s) - 0.25) < 0.05) continue;  // near the flat/transition seam
    const auto j = f.jet(pt, 2);
    for (int v = 0; v < 2; ++v) {
      auto plus = pt, minus = pt;
      plus[v] += h;
      minus[v] -= h;
      const double fd1 = (f.evaluate(plus) - f.evaluate(minus)) / (2 * h);
      const double fd2 = (f.evaluate(plus) - 2 * f.evaluate(pt) + f.evaluate(minus)) / (h * h);
      Exponent e1{0, 0}, e2{0, 0};
      e1[v] = 1;
      e2[v] = 2;
      REQUIRE(j.partial(e1) == doctest::Approx(fd1).epsilon(1e-5).scale(1.0));
      REQUIRE(j.partial(e2) == doctest::Approx(fd2).epsilon(1e-3).scale(1.0));
    }
    ++checked;
  }
}

TEST_CASE("jets refuse non-smooth points and excessive orders") {
  const auto norm = ScalarField::hom_norm(2, std::vector<int>{1, 2});
  const std::vector<double> origin{0.0, 0.0};
  CHECK_THROWS_AS(norm.jet(origin, 1), NonSmoothPointError);
  const auto f = ScalarField::parse("x1", 1);
  const std::vector<double> pt{0.5};
  CHECK_THROWS(f.jet(pt, kMaxJetOrder + 1));
}

TEST_CASE("scalar field text round trip") {
  const std::string text = "(* (exp (- (+ (^ x1 2) (^ x2 2)))) (chi (norm:1,2 x1 x2)))";
  const auto f = ScalarField::parse(text, 2);
  const auto g = ScalarField::parse(f.to_string(), 2);
  CHECK(g.to_string() == f.to_string());
  const std::vector<double> pt{0.3, -0.2};
  CHECK(f.evaluate(pt) == g.evaluate(pt));
  CHECK_THROWS_AS(ScalarField::parse("(+ x1", 1), ParseError);
  CHECK_THROWS_AS(ScalarField::parse("x3", 2), ParseError);
}

TEST_CASE("dilated scalar field equals composition with the dilation") {
  const auto f = ScalarField::parse("(+ (* x1 x2) (exp x2))", 2);
  const std::vector<int> w{1, 2};
  const auto g = f.dilate(w, Rational(3, 2));
  const std::vector<double> pt{0.4, 0.7};
  const std::vector<double> scaled{0.4 * 1.5, 0.7 * 2.25};
  CHECK(g.evaluate(pt) == doctest::Approx(f.evaluate(scaled)).epsilon(1e-14));
}

TEST_CASE("cutoff profile") {
  CHECK(chi(0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(chi(-0.25) == 1.0);
  CHECK(chi(0.25) == 0.0);
  for (double s = -0.3; s < 0.3; s += 0.01) {
    CHECK(chi(-s) == doctest::Approx(1.0 - chi(s)).epsilon(1e-12));
    CHECK(chi(s) >= chi(s + 0.01));
  }
}

TEST_CASE("homogeneous norm root") {
  const std::vector<int> e{1, 2};
  CHECK(homogeneous_norm(std::vector<double>{0.0, 0.0}, e) == 0.0);
  const std::vector<double> unit{0.6, 0.8};
  CHECK(homogeneous_norm(unit, e) == doctest::Approx(1.0).epsilon(1e-14));
  const double n = homogeneous_norm(std::vector<double>{1.0, 1.0}, e);
  CHECK(std::abs(homogeneous_norm_residual(std::vector<double>{1.0, 1.0}, e, 1.0 / n)) < 1e-13);
}

}  // TEST_SUITE
