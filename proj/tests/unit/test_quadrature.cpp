#include "doctest.h"

#include "hvf/errors.hpp"
#include "hvf/gauss_legendre.hpp"
#include "hvf/geometry.hpp"
#include "hvf/quadrature.hpp"

#include <cmath>
#include <numbers>

using namespace hvf;

namespace {

double weight_sum(const QuadratureRule& r) {
  double s = 0;
  for (double w : r.weights) s += w;
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  const auto& rule = gauss_legendre(5);
  double s0 = 0, s8 = 0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    s0 += rule.weights[i];
    s8 += rule.weights[i] * std::pow(rule.nodes[i], 8);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s8 == doctest::Approx(2.0 / 9).epsilon(1e-14));
}

TEST_CASE("unit ball and sphere rules converge spectrally") {
  for (int d = 1; d <= 5; ++d) {
    CHECK(weight_sum(unit_ball_rule(d, 16)) == doctest::Approx(unit_ball_volume(d)).epsilon(1e-10));
    // surface area d·V_d
    CHECK(weight_sum(unit_sphere_rule(d, 16)) == doctest::Approx(d * unit_ball_volume(d)).epsilon(1e-10));
  }
  CHECK(weight_sum(unit_ball_rule(3, 4)) != doctest::Approx(unit_ball_volume(3)).epsilon(1e-10));
  const auto s = unit_sphere_rule(3, 8);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto p = s.point(i);
    CHECK(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("anisotropic ball rules reproduce the measure") {
  const Ball ball(HomNorm({1, 2, 2}), 1.4);
  for (auto scheme : {QuadratureScheme::Polar, QuadratureScheme::Ellipsoidal}) {
    QuadratureSettings q;
    q.scheme = scheme;
    q.resolution = 16;
    CHECK(weight_sum(ball_rule(ball, q)) == doctest::Approx(ball.measure()).epsilon(1e-10));
  }
  QuadratureSettings masked;
  masked.scheme = QuadratureScheme::Masked;
  masked.resolution = 48;
  CHECK(weight_sum(ball_rule(ball, masked)) == doctest::Approx(ball.measure()).epsilon(2e-2));
}

TEST_CASE("integration is deterministic") {
  QuadratureSettings q;
  q.scheme = QuadratureScheme::MonteCarlo;
  q.resolution = 40;
  const Ball ball(HomNorm({1, 2}), 1.0);
  auto f = [](std::span<const double> x, std::span<double> out) { out[0] = std::exp(x[0] * x[1]); };
  const auto a = integrate(ball_rule(ball, q), 1, f);
  const auto b = integrate(ball_rule(ball, q), 1, f);
  CHECK(a == b);
}

TEST_CASE("scheme names") {
  for (auto s : {QuadratureScheme::Polar, QuadratureScheme::Ellipsoidal, QuadratureScheme::Masked,
                 QuadratureScheme::MonteCarlo})
    CHECK(parse_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_scheme("simpson"), Error);
}

TEST_CASE("estimates") {
  const auto e = make_estimate(1.0, 1.5);
  CHECK(e.value == 1.5);
  CHECK(e.error == doctest::Approx(0.5));
  CHECK(make_estimate(2.0, 2.0).error > 0);
}

}  // TEST_SUITE
