#include "hvf/geometry.hpp"

#include "hvf/errors.hpp"
#include "hvf/homnorm_root.hpp"
#include "hvf/parallel.hpp"
#include "hvf/random.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>

namespace hvf {

HomNorm::HomNorm(std::vector<int> exponents) : exponents_(std::move(exponents)) {
  if (exponents_.empty()) throw InvalidArgument("norm needs at least one exponent");
  for (int e : exponents_)
    if (e < 1) throw InvalidArgument("dilation exponents must be ≥ 1");
}

int HomNorm::homogeneous_dimension() const noexcept {
  return std::accumulate(exponents_.begin(), exponents_.end(), 0);
}

double HomNorm::operator()(std::span<const double> x) const { return homogeneous_norm(x, exponents_); }

std::vector<double> HomNorm::dilate(std::span<const double> x, double lambda) const {
  if (static_cast<int>(x.size()) != dimension()) throw DimensionError("point dimension differs from norm");
  std::vector<double> out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::pow(lambda, exponents_[i]);
  return out;
}

double hom_norm(const HomNorm& norm, std::span<const double> x) { return norm(x); }

Ball::Ball(HomNorm norm, double radius) : norm_(std::move(norm)), radius_(radius) {
  if (!(radius > 0)) throw InvalidArgument("ball radius must be positive");
}

double Ball::ellipsoid_level(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != norm_.dimension()) throw DimensionError("point dimension differs from ball");
  double s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * x[i] / std::pow(radius_, 2 * norm_.exponents()[i]);
  return s;
}

std::vector<double> Ball::semi_axes() const {
  std::vector<double> a;
  for (int e : norm_.exponents()) a.push_back(std::pow(radius_, e));
  return a;
}

double Ball::measure() const { return ball_measure(norm_.exponents(), radius_); }

double unit_ball_volume(int d) {
  if (d < 0) throw InvalidArgument("negative dimension");
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double ball_measure(std::span<const int> sigma, double r) {
  if (!(r > 0)) throw InvalidArgument("ball radius must be positive");
  const int q = std::accumulate(sigma.begin(), sigma.end(), 0);
  return std::pow(r, q) * unit_ball_volume(static_cast<int>(sigma.size()));
}

InclusionReport ball_inclusions_check(double r, std::span<const int> sigma, std::span<const int> tau,
                                      std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("samples must be ≥ 1");
  std::vector<int> weights(sigma.begin(), sigma.end());
  weights.insert(weights.end(), tau.begin(), tau.end());
  const Ball base(HomNorm({sigma.begin(), sigma.end()}), r);
  const Ball base_half(HomNorm({sigma.begin(), sigma.end()}), r / 2);
  const Ball lifted(HomNorm(weights), r);
  const bool has_xi = !tau.empty();
  std::optional<Ball> fibre, fibre_half;
  if (has_xi) {
    fibre.emplace(HomNorm({tau.begin(), tau.end()}), r);
    fibre_half.emplace(HomNorm({tau.begin(), tau.end()}), r / 2);
  }
  const std::size_t n = sigma.size();
  const std::size_t dim = weights.size();

  struct Partial {
    std::size_t lifted_hits = 0, product_hits = 0, outer = 0, inner = 0;
    std::vector<std::vector<double>> examples;
  };
  std::vector<Partial> partial(kShards);
  for_each_shard(samples, [&](std::size_t shard, std::size_t begin, std::size_t end) {
    Rng rng = Rng::for_shard(seed, shard);
    Partial& out = partial[shard];
    std::vector<double> p(dim);
    auto x = std::span<double>(p).first(n);
    auto xi = std::span<double>(p).subspan(n);
    auto in_fibre = [&](const std::optional<Ball>& b) { return !has_xi || b->contains(xi); };
    for (std::size_t s = begin; s < end; ++s) {
      // (a) bounding box of the lifted ball
      for (std::size_t i = 0; i < dim; ++i) {
        const double a = std::pow(r, weights[i]);
        p[i] = rng.uniform(-a, a);
      }
      if (lifted.contains(p)) {
        ++out.lifted_hits;
        if (!(base.contains(x) && in_fibre(fibre))) {
          ++out.outer;
          if (out.examples.size() < 4) out.examples.push_back(p);
        }
      }
      // (b) bounding box of the half-radius product
      for (std::size_t i = 0; i < dim; ++i) {
        const double a = std::pow(r / 2, weights[i]);
        p[i] = rng.uniform(-a, a);
      }
      if (base_half.contains(x) && in_fibre(fibre_half)) {
        ++out.product_hits;
        if (!lifted.contains(p)) {
          ++out.inner;
          if (out.examples.size() < 4) out.examples.push_back(p);
        }
      }
    }
  });
  InclusionReport report;
  report.radius = r;
  report.seed = seed;
  report.samples = samples;
  for (auto& part : partial) {
    report.lifted_hits += part.lifted_hits;
    report.product_hits += part.product_hits;
    report.outer_violations += part.outer;
    report.inner_violations += part.inner;
    for (auto& e : part.examples)
      if (report.counterexamples.size() < 8) report.counterexamples.push_back(std::move(e));
  }
  return report;
}

}  // namespace hvf
