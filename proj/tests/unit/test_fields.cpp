#include "doctest.h"
#include "support.hpp"

#include "hvf/errors.hpp"
#include "hvf/hormander.hpp"
#include "hvf/io.hpp"
#include "hvf/vector_field.hpp"

using namespace hvf;

namespace {

Poly x(int n, int i) { return Poly::variable(n, i); }
Poly one(int n) { return Poly::constant(n, 1); }

VectorField field(std::vector<Poly> c) { return VectorField(std::move(c)); }

// X1 = ∂1, X2 = x1^k ∂2 written out by hand, independent of grushin_system().
VectorFieldSystem grushin_by_hand(int k, std::vector<int> sigma) {
  return VectorFieldSystem("hand", std::move(sigma),
                           {field({one(2), Poly(2)}), field({Poly(2), x(2, 0).pow(k)})});
}

std::vector<VectorFieldSystem> all_fixtures() {
  std::vector<VectorFieldSystem> out;
  out.push_back(load_system(testing::fixture("grushin.json")));
  for (int k : {2, 3}) out.push_back(grushin_system(k));
  for (int n : {3, 4}) out.push_back(chain_system(n));
  return out;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("H1 on the Grushin family") {
  CHECK(check_h1(grushin_by_hand(1, {1, 2})).passed);
  CHECK(check_h1(grushin_by_hand(2, {1, 3})).passed);
  const auto cert = check_h1(grushin_by_hand(2, {1, 2}));
  CHECK_FALSE(cert.passed);
  REQUIRE(cert.violations.size() == 1);
  CHECK(cert.violations[0].field == 1);
  CHECK(cert.violations[0].coordinate == 1);
  CHECK(cert.violations[0].weighted_degree == 2);
  CHECK(cert.violations[0].expected_degree == 1);
}

TEST_CASE("system construction validates its data") {
  CHECK_THROWS_AS(VectorFieldSystem("bad", {2, 2}, {field({one(2), Poly(2)})}), InvalidArgument);
  CHECK_THROWS_AS(VectorFieldSystem("bad", {1, 2}, {field({one(2), Poly(2)}), field({one(2), Poly(2)})}),
                  InvalidArgument);
  CHECK_THROWS_AS(VectorFieldSystem("bad", {1, 2}, {field({one(3), Poly(3), Poly(3)})}), DimensionError);
  CHECK(grushin_by_hand(1, {1, 2}).q() == 3);
}

TEST_CASE("Lie brackets") {
  const auto g = grushin_by_hand(1, {1, 2});
  CHECK(lie_bracket(g.field(0), g.field(1)) == VectorField::coordinate(2, 1));
  CHECK(lie_bracket(g.field(1), g.field(1)).is_zero());
  const auto g2 = grushin_by_hand(2, {1, 3});
  CHECK(lie_bracket(g2.field(0), g2.field(1)) == field({Poly(2), Rational(2) * x(2, 0)}));
}

TEST_CASE("brackets are antisymmetric and satisfy Jacobi") {
  const VectorField a = field({x(3, 1), x(3, 0) * x(3, 2), one(3)});
  const VectorField b = field({x(3, 2).pow(2), Poly(3), x(3, 0)});
  const VectorField c = field({one(3), x(3, 0) * x(3, 1), x(3, 1).pow(3)});
  CHECK(lie_bracket(a, b) + lie_bracket(b, a) == VectorField::zero(3));
  const auto jacobi = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                      lie_bracket(c, lie_bracket(a, b));
  CHECK(jacobi.is_zero());
}

TEST_CASE("bracket agrees with the commutator of derivations") {
  const VectorField a = field({x(2, 1), x(2, 0).pow(2)});
  const VectorField b = field({one(2), x(2, 0) * x(2, 1)});
  const Poly u = x(2, 0).pow(3) * x(2, 1) + x(2, 1).pow(2);
  CHECK(lie_bracket(a, b).apply(u) == a.apply(b.apply(u)) - b.apply(a.apply(u)));
}

TEST_CASE("left-nested brackets") {
  const auto g = grushin_by_hand(1, {1, 2});
  CHECK(nested_bracket(g, MultiIndex{0, 1}) == VectorField::coordinate(2, 1));
  CHECK(nested_bracket(g, MultiIndex{0}) == g.field(0));
  const auto g2 = grushin_by_hand(2, {1, 3});
  // [[X1, X1], X2] vanishes in the left-nested convention.
  CHECK(nested_bracket(g2, MultiIndex{0, 0, 1}).is_zero());
  // [[X1, X2], X1] = -2 ∂2; the right-nested [X1, [X1, X2]] is its negative.
  CHECK(nested_bracket(g2, MultiIndex{0, 1, 0}) == field({Poly(2), Poly::constant(2, -2)}));
  CHECK(lie_bracket(g2.field(0), lie_bracket(g2.field(0), g2.field(1))) == field({Poly(2), Poly::constant(2, 2)}));
}

TEST_CASE("multi-index validation and ordering") {
  CHECK_THROWS_AS(MultiIndex({0, 2}).validate(2), InvalidArgument);
  CHECK_NOTHROW(MultiIndex({0, 1}).validate(2));
  CHECK(MultiIndex({1}) < MultiIndex({0, 0}));
  CHECK(MultiIndex({0, 1}).to_string() == "(1,2)");
  CHECK(enumerate_words(2, 3).size() == 2 + 4 + 8);
}

TEST_CASE("apply_operator on Grushin") {
  const auto g = grushin_by_hand(1, {1, 2});
  const Poly u = x(2, 1);
  const std::vector<Rational> p{3, 0};
  CHECK(apply_operator(g, MultiIndex{1}, u, p) == Rational(3));
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pt = testing::random_rational_point(rng, 2);
    CHECK(apply_operator(g, MultiIndex{1, 1}, u, pt) == Rational(0));
    CHECK(apply_operator(g, MultiIndex{0, 1}, u, pt) == Rational(1));
  }
}

TEST_CASE("jet-based operators agree with symbolic application") {
  const auto g = chain_system(3);
  const Poly u = x(3, 0).pow(2) * x(3, 2) + x(3, 1).pow(3) - x(3, 0) * x(3, 1);
  const auto su = ScalarField::from_poly(u);
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pt = testing::random_rational_point(rng, 3);
    const auto ptd = testing::to_doubles(pt);
    for (const auto& w : enumerate_words(2, 3)) {
      const Rational exact = apply_operator(g, w, u, pt);
      CHECK(apply_operator(g, w, su, std::span<const Rational>(pt)) == exact);
      CHECK(apply_operator(g, w, su, std::span<const double>(ptd)) ==
            doctest::Approx(to_double(exact)).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("bracket homogeneity holds exactly up to length 5 on every fixture") {
  for (const auto& sys : all_fixtures()) {
    for (const auto& [word, br] : all_nested_brackets(sys.fields(), 5)) {
      const auto residual = bracket_homogeneity_residual(br, static_cast<int>(word.size()), sys.sigma());
      for (const auto& r : residual) REQUIRE(r.is_zero());
    }
  }
}

TEST_CASE("homogeneity residual detects a non-homogeneous field") {
  const VectorField f = field({one(2), x(2, 0).pow(2)});
  const std::vector<int> sigma{1, 2};
  const auto residual = bracket_homogeneity_residual(f, 1, sigma);
  bool nonzero = false;
  for (const auto& r : residual) nonzero = nonzero || !r.is_zero();
  CHECK(nonzero);
}

TEST_CASE("fixture systems are divergence free") {
  for (const auto& sys : all_fixtures())
    for (const auto& f : sys.fields()) CHECK(divergence(f).is_zero());
  CHECK(divergence(field({x(2, 0), Poly(2)})) == one(2));
}

TEST_CASE("rank condition at the origin") {
  const auto g = grushin_by_hand(1, {1, 2});
  const auto cert = check_rank_at_origin(g, 2);
  CHECK(cert.passed);
  CHECK(cert.depth_used == 2);
  CHECK(cert.basis_words == std::vector<MultiIndex>{MultiIndex{0}, MultiIndex{0, 1}});
  const auto shallow = check_rank_at_origin(g, 1);
  CHECK_FALSE(shallow.passed);
  CHECK(shallow.rank == 1);
  for (int n = 2; n <= 5; ++n) {
    const auto c = check_rank_at_origin(chain_system(n), n);
    CHECK(c.passed);
    CHECK(c.basis_words.back().size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("minimal depth") {
  CHECK(minimal_depth(grushin_by_hand(1, {1, 2}), 6) == 2);
  for (int k = 1; k <= 4; ++k) CHECK(minimal_depth(grushin_system(k), 8) == k + 1);
  for (int n = 2; n <= 5; ++n) CHECK(minimal_depth(chain_system(n), 8) == n);
  CHECK_FALSE(minimal_depth(grushin_system(3), 3).has_value());
}

TEST_CASE("passing depth bound is monotone") {
  for (const auto& sys : all_fixtures()) {
    bool seen = false;
    for (int d = 1; d <= 6; ++d) {
      const bool ok = check_rank_at_origin(sys, d).passed;
      if (seen) CHECK(ok);
      seen = seen || ok;
    }
    CHECK(seen);
  }
}

TEST_CASE("rank at points") {
  const auto g = grushin_by_hand(1, {1, 2});
  const auto cert = check_rank_at_origin(g, 2);
  const std::vector<Rational> p{5, 7};
  CHECK(check_rank_at_point(cert, g, p).nonsingular);

  const auto g2 = grushin_by_hand(2, {1, 3});
  const auto cert2 = check_rank_at_origin(g2);
  const std::vector<Rational> origin{0, 0};
  CHECK(check_rank_at_point(cert2, g2, origin).nonsingular);

  const std::vector<Rational> q{0, 1};
  const std::vector<MultiIndex> short_words{MultiIndex{0}, MultiIndex{0, 1}};
  CHECK_FALSE(check_words_at_point(g2, short_words, q).nonsingular);
  const std::vector<MultiIndex> long_words{MultiIndex{0}, MultiIndex{0, 1, 0}};
  CHECK(check_words_at_point(g2, long_words, q).nonsingular);
}

TEST_CASE("determinant along the dilation scales by lambda to q minus the word lengths") {
  // det M(δ_λ x) = λ^{q − Σ|I_j|} det M(x); graded bases have Σ|I_j| = q.
  Rng rng(8);
  for (const auto& sys : all_fixtures()) {
    const auto cert = check_rank_at_origin(sys);
    REQUIRE(cert.passed);
    int total = 0;
    for (const auto& w : cert.basis_words) total += static_cast<int>(w.size());
    const auto pt = testing::random_rational_point(rng, sys.n());
    const Poly d = determinant_along_dilation(sys, cert.basis_words, pt);
    const Rational base = determinant(bracket_matrix(sys, cert.basis_words, pt));
    CHECK(total == sys.q());
    const Poly expected = Poly::constant(1, base);
    CHECK(d == expected);
  }
}

}  // TEST_SUITE
