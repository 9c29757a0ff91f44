#include "doctest.h"
#include "support.hpp"

#include "hvf/analysis.hpp"
#include "hvf/errors.hpp"
#include "hvf/homnorm_root.hpp"
#include "hvf/io.hpp"

#include <cmath>
#include <numbers>

using namespace hvf;

namespace {

const std::vector<int> kGrushin{1, 2};

QuadratureSettings coarse(int res = 12) {
  QuadratureSettings q;
  q.resolution = res;
  return q;
}

double grushin_norm(double a, double b) { return homogeneous_norm(std::vector<double>{a, b}, kGrushin); }

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("cutoff values") {
  const auto c = make_cutoff(1.0, 2.0, kGrushin);
  CHECK(c.phi.evaluate(std::vector<double>{0.0, 0.0}) == 1.0);
  // a point of norm 3/2 sits at χ(0)
  const auto mid = HomNorm(kGrushin).dilate(std::vector<double>{0.6, 0.8}, 1.5);
  CHECK(c.phi.evaluate(mid) == doctest::Approx(0.5).epsilon(1e-12));
  Rng rng(41);
  for (int i = 0; i < 500; ++i) {
    const std::vector<double> v{rng.uniform(-3, 3), rng.uniform(-9, 9)};
    const double n = grushin_norm(v[0], v[1]);
    const double f = c.phi.evaluate(v);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    if (n >= 2.0) CHECK(f == 0.0);
    if (n <= 1.0) CHECK(f == 1.0);
  }
  CHECK_THROWS_AS(make_cutoff(2.0, 1.0, kGrushin), InvalidArgument);
}

TEST_CASE("cutoff derivatives vanish where it is flat") {
  const auto sys = grushin_system(1);
  const auto c = make_cutoff(1.0, 2.0, kGrushin);
  const std::vector<double> inside{0.3, 0.2};
  const auto j = c.phi.jet(inside, 2);
  for (std::size_t i = 1; i < j.size(); ++i) CHECK(j.coeff(i) == 0.0);
  CHECK(sub_laplacian(sys, c.phi, inside) == 0.0);
}

TEST_CASE("cutoff derivative bounds scale with the gap") {
  const auto sys = grushin_system(1);
  const auto b0 = cutoff_derivative_bounds(make_cutoff(1, 2, kGrushin), sys, 0, 2000, 3);
  CHECK(b0.sup <= 1.0);
  const auto b1 = cutoff_derivative_bounds(make_cutoff(1, 2, kGrushin), sys, 1, 2000, 3);
  const auto b2 = cutoff_derivative_bounds(make_cutoff(2, 4, kGrushin), sys, 1, 2000, 3);
  CHECK(b1.normalized > 0);
  CHECK(b1.normalized / b2.normalized <= 2.0);
  CHECK(b2.normalized / b1.normalized <= 2.0);
}

TEST_CASE("Lp norms of simple functions") {
  const Ball ball(HomNorm(kGrushin), 1.0);
  const auto one = ScalarField::constant(2, 1);
  CHECK(lp_norm(one, ball, 2.0, coarse()).value == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  // ∫ x1² over the ellipse with semi-axes 1, 1 is π/4
  const auto x1 = ScalarField::parse("x1", 2);
  CHECK(lp_norm(x1, ball, 2.0, coarse()).value == doctest::Approx(std::sqrt(std::numbers::pi / 4)).epsilon(1e-10));
  // ∫ x1² over B_r is π r^5 / 4
  const Ball big(HomNorm(kGrushin), 1.7);
  CHECK(lp_norm(x1, big, 2.0, coarse()).value ==
        doctest::Approx(std::sqrt(std::numbers::pi * std::pow(1.7, 5) / 4)).epsilon(1e-10));
}

TEST_CASE("every scheme agrees on a smooth integrand") {
  const Ball ball(HomNorm(kGrushin), 1.3);
  const auto u = ScalarField::parse("(exp (- (+ (^ x1 2) x2)))", 2);
  QuadratureSettings ref = coarse(32);
  const double truth = lp_norm(u, ball, 2.0, ref).value;
  QuadratureSettings ell = coarse(32);
  ell.scheme = QuadratureScheme::Ellipsoidal;
  CHECK(lp_norm(u, ball, 2.0, ell).value == doctest::Approx(truth).epsilon(1e-10));
  // masking converges only to first order at the boundary
  QuadratureSettings masked = coarse(64);
  masked.scheme = QuadratureScheme::Masked;
  CHECK(lp_norm(u, ball, 2.0, masked).value == doctest::Approx(truth).epsilon(1e-2));
  QuadratureSettings mc = coarse(300);
  mc.scheme = QuadratureScheme::MonteCarlo;
  CHECK(lp_norm(u, ball, 2.0, mc).value == doctest::Approx(truth).epsilon(2e-2));
}

TEST_CASE("doubling resolution moves a norm by less than its error estimate") {
  const auto sys = grushin_system(1);
  const auto family = default_family(sys);
  for (std::size_t i = 0; i < family.size(); i += 7) {
    const Ball ball(HomNorm(kGrushin), family[i].support_radius);
    const auto a = lp_norm(family[i].u, ball, 2.0, coarse(16));
    const auto b = lp_norm(family[i].u, ball, 2.0, coarse(32));
    CHECK_MESSAGE(std::abs(b.value - a.value) <= a.error, family[i].name);
  }
}

TEST_CASE("Sobolev norms") {
  const auto sys = grushin_system(1);
  const Ball ball(HomNorm(kGrushin), 1.0);
  const auto one = ScalarField::constant(2, 1);
  const auto r1 = sobolev_norm(sys, one, ball, 1, 2.0, coarse());
  CHECK(r1.seminorms[0] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  CHECK(r1.seminorms[1] == 0.0);

  const auto x1 = ScalarField::parse("x1", 2);
  const auto r2 = sobolev_norm(sys, x1, ball, 2, 2.0, coarse());
  CHECK(r2.seminorms[1] == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-10));
  CHECK(r2.seminorms[2] == 0.0);
  double sum = 0;
  for (double s : r2.seminorms) sum += s;
  CHECK(r2.total == sum);

  const auto g = ScalarField::parse("(exp (- (+ (^ x1 2) (^ x2 2))))", 2);
  const auto r0 = sobolev_norm(sys, g, ball, 0, 3.0, coarse());
  CHECK(r0.total == lp_norm(g, ball, 3.0, coarse()).value);
  CHECK_THROWS_AS(sobolev_norm(sys, g, ball, 5, 2.0), InvalidArgument);
  CHECK_THROWS_AS(sobolev_norm(sys, g, ball, 1, 1.0), InvalidArgument);
}

TEST_CASE("phi functional") {
  const auto sys = grushin_system(1);
  const auto grid = default_sigma_grid();
  CHECK(grid.size() == 19);
  const auto c = ScalarField::constant(2, 3);
  const auto p0 = phi_functional(sys, c, 2.0, 0, 2.0, grid, coarse());
  CHECK(p0.argmax_sigma == doctest::Approx(0.95));
  CHECK(p0.value == doctest::Approx(3.0 * std::sqrt(ball_measure(kGrushin, 0.95 * 2.0))).epsilon(1e-10));
  for (std::size_t i = 1; i < p0.terms.size(); ++i) CHECK(p0.terms[i] >= p0.terms[i - 1]);
  CHECK(phi_functional(sys, c, 2.0, 1, 2.0, grid, coarse()).value == 0.0);

  const auto g = ScalarField::parse("(* (exp (- (^ x1 2))) (- 1 (* x1 x2)))", 2);
  const auto pg = phi_functional(sys, g, 1.5, 0, 2.0, grid, coarse());
  for (std::size_t i = 1; i < pg.terms.size(); ++i) CHECK(pg.terms[i] >= pg.terms[i - 1]);
}

TEST_CASE("phi functional under dilation") {
  // Φ_k(u∘δ_2, R) = 2^{-q/p} Φ_k(u, 2R) term by term; the radius weight absorbs the 2^k of D^k.
  const auto sys = grushin_system(1);
  const auto u = ScalarField::parse("(* (exp (- (^ x1 2))) (+ x2 (* x1 x1)))", 2);
  const auto ud = u.dilate(kGrushin, Rational(2));
  const std::vector<double> grid{0.3, 0.6, 0.9};
  QuadratureSettings q = coarse(16);
  q.target_error = 1e-9;
  const double p = 2.0;
  for (int k = 0; k <= 2; ++k) {
    const auto a = phi_functional(sys, ud, 1.0, k, p, grid, q);
    const auto b = phi_functional(sys, u, 2.0, k, p, grid, q);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(a.terms[i] == doctest::Approx(std::pow(2.0, -3.0 / p) * b.terms[i]).epsilon(1e-7));
      // the bare seminorms carry the extra 2^k
      const Ball small(HomNorm(kGrushin), grid[i]), large(HomNorm(kGrushin), 2 * grid[i]);
      const auto sa = sobolev_norm(sys, ud, small, k, p, q);
      const auto sb = sobolev_norm(sys, u, large, k, p, q);
      CHECK(sa.seminorms[k] == doctest::Approx(std::pow(2.0, k - 3.0 / p) * sb.seminorms[k]).epsilon(1e-7));
    }
  }
}

TEST_CASE("default family") {
  const auto sys = grushin_system(1);
  const auto family = default_family(sys);
  // weighted monomials of degree ≤ 4 in (1,2): 1, x1, x1², x2, x1³, x1x2, x1⁴, x1²x2, x2² → 9, times two radii
  CHECK(family.size() == 18);
  for (const auto& f : family) {
    CHECK(f.support_radius > 0);
    // vanishes outside its support ball
    const auto out = HomNorm(kGrushin).dilate(std::vector<double>{0.6, 0.8}, f.support_radius * 1.01);
    CHECK(f.u.evaluate(out) == 0.0);
  }
}

TEST_CASE("interpolation harness basics") {
  const auto sys = grushin_system(1);
  const std::vector<double> eps{0.25, 0.5, 1.0};
  const std::vector<double> radii{2.0};
  const std::vector<double> sgrid{0.25, 0.5, 0.75};
  const auto cut = make_cutoff(1, 2, kGrushin);
  std::vector<FamilyMember> fam{{"phi", cut.phi, 2.0}};
  const auto rep = interpolation_harness(sys, fam, 2.0, eps, radii, coarse(12), sgrid, 1e-3);
  CHECK(rep.passed);
  for (const char* key : {"c_p", "c_p_ball", "alpha_p"}) CHECK(std::isfinite(rep.constants.at(key)));
  // every row satisfies its inequality with the reported constant
  for (const auto& row : rep.rows) {
    const double c = row.inequality == "global" ? rep.constants.at("c_p")
                     : row.inequality == "ball" ? rep.constants.at("c_p_ball")
                                                : rep.constants.at("alpha_p");
    CHECK(row.lhs <= row.epsilon * row.second + c / row.epsilon * row.zeroth + 1e-12 * row.lhs);
  }

  std::vector<FamilyMember> zero{{"zero", ScalarField::constant(2, 0), 1.0}};
  const auto rz = interpolation_harness(sys, zero, 2.0, eps, radii, coarse(8), sgrid, 1e-3);
  for (const auto& [name, value] : rz.constants) CHECK(value == 0.0);

  std::vector<FamilyMember> none;
  CHECK_THROWS_WITH_AS(interpolation_harness(sys, none, 2.0, eps, radii), "empty family", InvalidArgument);
}

TEST_CASE("interpolation constants are invariant under scaling the family") {
  const auto sys = grushin_system(1);
  const std::vector<double> eps{0.1, 0.5, 1.0};
  const std::vector<double> radii{2.0, 4.0};
  const std::vector<double> sgrid{0.5, 0.9};
  auto fam = default_family(sys);
  fam.erase(fam.begin() + 4, fam.end());
  auto scaled = fam;
  for (auto& f : scaled) f.u = ScalarField::constant(2, Rational(7, 3)) * f.u;
  const auto a = interpolation_harness(sys, fam, 2.0, eps, radii, coarse(12), sgrid, 1e-3);
  const auto b = interpolation_harness(sys, scaled, 2.0, eps, radii, coarse(12), sgrid, 1e-3);
  for (const auto& [name, value] : a.constants)
    CHECK(testing::rel_diff(value, b.constants.at(name)) <= 1e-6);
}

TEST_CASE("phi-form constant agrees for u and its dilate") {
  const auto sys = grushin_system(1);
  const std::vector<double> eps{0.2, 0.6, 1.0};
  const std::vector<double> sgrid{0.4, 0.8};
  const auto u = make_cutoff(1, 2, kGrushin).phi * ScalarField::parse("(+ 1 x1)", 2);
  std::vector<FamilyMember> fam{{"u", u, 2.0}};
  std::vector<FamilyMember> dil{{"u_d", u.dilate(kGrushin, Rational(2)), 1.0}};
  QuadratureSettings q = coarse(16);
  q.target_error = 1e-7;
  const std::vector<double> r_big{4.0}, r_small{2.0};
  const auto a = interpolation_harness(sys, fam, 2.0, eps, r_big, q, sgrid, 1e-6);
  const auto b = interpolation_harness(sys, dil, 2.0, eps, r_small, q, sgrid, 1e-6);
  CHECK(a.constants.at("alpha_p") == doctest::Approx(b.constants.at("alpha_p")).epsilon(1e-5));
}

TEST_CASE("a priori harness") {
  const auto sys = grushin_system(1);
  const auto g = ScalarField::parse("(exp (- (+ (^ x1 2) (^ x2 2))))", 2) * make_cutoff(2, 3, kGrushin).phi;
  std::vector<FamilyMember> fam{{"gauss", g, 3.0}, {"x1phi", ScalarField::parse("x1", 2) * make_cutoff(1, 2, kGrushin).phi, 2.0}};
  const auto coarse_rep = apriori_harness(sys, fam, 2.0, 0, coarse(16), 1e-3);
  CHECK(coarse_rep.passed);
  const double theta = coarse_rep.constants.at("theta_k_p"), lambda = coarse_rep.constants.at("lambda_k_p");
  CHECK(std::isfinite(theta));
  CHECK(std::isfinite(lambda));
  CHECK(lambda > 0);
  const auto fine_rep = apriori_harness(sys, fam, 2.0, 0, coarse(32), 1e-3);
  CHECK(std::abs(fine_rep.constants.at("lambda_k_p") / lambda - 1) <= 0.2);
  CHECK(std::abs(fine_rep.constants.at("theta_k_p") / theta - 1) <= 0.2);

  std::vector<FamilyMember> zero{{"zero", ScalarField::constant(2, 0), 1.0}};
  const auto rz = apriori_harness(sys, zero, 2.0, 0, coarse(8));
  for (const auto& [name, value] : rz.constants) CHECK(value == 0.0);
}

TEST_CASE("Leibniz identity at random points") {
  const auto sys = grushin_system(1);
  const auto phi = make_cutoff(1, 2, kGrushin).phi;
  const auto u = ScalarField::parse("(* (exp (- (+ (^ x1 2) (^ x2 2)))) (+ x1 (* x2 x2)))", 2);
  Rng rng(42);
  int checked = 0;
  while (checked < 1000) {
    const std::vector<double> x{rng.uniform(-2.2, 2.2), rng.uniform(-4.5, 4.5)};
    if (grushin_norm(x[0], x[1]) < 1e-6) continue;
    REQUIRE(leibniz_identity_error(sys, phi, u, x) <= 1e-8);
    ++checked;
  }
}

TEST_CASE("sub-Laplacian of polynomials") {
  // L(x1² x2) on Grushin: X1² gives 2x2, X2² gives x1·∂2(x1·x1²) = 0.
  const auto sys = grushin_system(1);
  const auto u = ScalarField::parse("(* (^ x1 2) x2)", 2);
  CHECK(sub_laplacian(sys, u, std::vector<double>{0.7, -1.3}) == doctest::Approx(-2.6));
  // L(x2²) = 2x1²
  CHECK(sub_laplacian(sys, ScalarField::parse("(^ x2 2)", 2), std::vector<double>{1.5, 0.2}) == doctest::Approx(4.5));
}

}  // TEST_SUITE
