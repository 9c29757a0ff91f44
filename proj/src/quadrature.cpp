#include "hvf/quadrature.hpp"

#include "hvf/errors.hpp"
#include "hvf/gauss_legendre.hpp"
#include "hvf/parallel.hpp"
#include "hvf/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hvf {

QuadratureScheme parse_scheme(const std::string& name) {
  if (name == "polar") return QuadratureScheme::Polar;
  if (name == "gauss_legendre" || name == "ellipsoidal") return QuadratureScheme::Ellipsoidal;
  if (name == "masked") return QuadratureScheme::Masked;
  if (name == "monte_carlo") return QuadratureScheme::MonteCarlo;
  throw InvalidArgument("unknown quadrature scheme '" + name + "'");
}

std::string to_string(QuadratureScheme s) {
  switch (s) {
    case QuadratureScheme::Polar:
      return "polar";
    case QuadratureScheme::Ellipsoidal:
      return "gauss_legendre";
    case QuadratureScheme::Masked:
      return "masked";
    case QuadratureScheme::MonteCarlo:
      return "monte_carlo";
  }
  return "?";
}

QuadratureRule unit_ball_rule(int dim, int resolution) {
  if (dim < 1 || resolution < 1) throw InvalidArgument("unit ball rule needs dim ≥ 1 and resolution ≥ 1");
  const GaussRule& g = gauss_legendre(resolution);
  const double half_pi = 0.5 * std::numbers::pi;
  QuadratureRule rule;
  rule.dim = dim;
  // y_1 = sin θ_1, y_2 = cos θ_1 sin θ_2, ..., y_d = (Π cos θ_i) t
  std::vector<double> y(dim);
  std::vector<int> idx(dim, 0);
  const std::size_t total = static_cast<std::size_t>(std::pow(resolution, dim));
  rule.points.reserve(total * dim);
  rule.weights.reserve(total);
  for (std::size_t count = 0; count < total; ++count) {
    double radius = 1.0;  // radius of the remaining slice
    double w = 1.0;
    for (int k = 0; k < dim; ++k) {
      const double node = g.nodes[idx[k]];
      const double gw = g.weights[idx[k]];
      if (k == dim - 1) {
        y[k] = radius * node;
        w *= radius * gw;
      } else {
        const double theta = half_pi * node;
        y[k] = radius * std::sin(theta);
        w *= radius * std::cos(theta) * half_pi * gw;
        radius *= std::cos(theta);
      }
    }
    rule.points.insert(rule.points.end(), y.begin(), y.end());
    rule.weights.push_back(w);
    for (int k = dim - 1; k >= 0; --k) {
      if (++idx[k] < resolution) break;
      idx[k] = 0;
    }
  }
  return rule;
}

QuadratureRule unit_sphere_rule(int dim, int resolution) {
  if (dim < 1 || resolution < 1) throw InvalidArgument("sphere rule needs dim ≥ 1 and resolution ≥ 1");
  QuadratureRule rule;
  rule.dim = dim;
  if (dim == 1) {
    rule.points = {-1.0, 1.0};
    rule.weights = {1.0, 1.0};
    return rule;
  }
  if (dim == 2) {
    // periodic trapezoid, twice as many angles as radial nodes
    const int count = 2 * resolution;
    const double h = 2 * std::numbers::pi / count;
    for (int j = 0; j < count; ++j) {
      const double theta = h * (j + 0.5);
      rule.points.push_back(std::cos(theta));
      rule.points.push_back(std::sin(theta));
      rule.weights.push_back(h);
    }
    return rule;
  }
  // ω = (cos ψ · ω', sin ψ), dS = cos^{dim-2} ψ dψ dS'
  const QuadratureRule inner = unit_sphere_rule(dim - 1, resolution);
  const GaussRule& g = gauss_legendre(resolution);
  const double half_pi = 0.5 * std::numbers::pi;
  for (int a = 0; a < resolution; ++a) {
    const double psi = half_pi * g.nodes[a];
    const double c = std::cos(psi);
    const double w = half_pi * g.weights[a] * std::pow(c, dim - 2);
    for (std::size_t i = 0; i < inner.size(); ++i) {
      for (double v : inner.point(i)) rule.points.push_back(c * v);
      rule.points.push_back(std::sin(psi));
      rule.weights.push_back(w * inner.weights[i]);
    }
  }
  return rule;
}

QuadratureRule ball_rule(const Ball& ball, const QuadratureSettings& settings) {
  const int dim = ball.norm().dimension();
  const std::vector<double> axes = ball.semi_axes();
  double jac = 1.0;
  for (double a : axes) jac *= a;
  QuadratureRule rule;
  rule.dim = dim;
  switch (settings.scheme) {
    case QuadratureScheme::Polar: {
      const auto& sigma = ball.norm().exponents();
      const int q = ball.norm().homogeneous_dimension();
      const QuadratureRule sphere = unit_sphere_rule(dim, settings.resolution);
      const GaussRule& g = gauss_legendre(settings.resolution);
      const double R = ball.radius();
      rule.points.reserve(sphere.size() * g.nodes.size() * dim);
      rule.weights.reserve(sphere.size() * g.nodes.size());
      for (std::size_t a = 0; a < g.nodes.size(); ++a) {
        const double rho = 0.5 * R * (1 + g.nodes[a]);
        const double wr = 0.5 * R * g.weights[a] * std::pow(rho, q - 1);
        for (std::size_t i = 0; i < sphere.size(); ++i) {
          const auto omega = sphere.point(i);
          double jac = 0;
          for (int k = 0; k < dim; ++k) {
            rule.points.push_back(std::pow(rho, sigma[k]) * omega[k]);
            jac += sigma[k] * omega[k] * omega[k];
          }
          rule.weights.push_back(wr * sphere.weights[i] * jac);
        }
      }
      return rule;
    }
    case QuadratureScheme::Ellipsoidal: {
      rule = unit_ball_rule(dim, settings.resolution);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        for (int k = 0; k < dim; ++k) rule.points[i * dim + k] *= axes[k];
        rule.weights[i] *= jac;
      }
      return rule;
    }
    case QuadratureScheme::Masked: {
      const GaussRule& g = gauss_legendre(settings.resolution);
      std::vector<int> idx(dim, 0);
      std::vector<double> p(dim);
      const std::size_t total = static_cast<std::size_t>(std::pow(settings.resolution, dim));
      for (std::size_t count = 0; count < total; ++count) {
        double w = jac;
        for (int k = 0; k < dim; ++k) {
          p[k] = axes[k] * g.nodes[idx[k]];
          w *= g.weights[idx[k]];
        }
        if (ball.contains(p)) {
          rule.points.insert(rule.points.end(), p.begin(), p.end());
          rule.weights.push_back(w);
        }
        for (int k = dim - 1; k >= 0; --k) {
          if (++idx[k] < settings.resolution) break;
          idx[k] = 0;
        }
      }
      return rule;
    }
    case QuadratureScheme::MonteCarlo: {
      Rng rng(settings.seed);
      const std::size_t total = static_cast<std::size_t>(std::pow(settings.resolution, dim));
      const double w = jac * std::pow(2.0, dim) / static_cast<double>(total);
      std::vector<double> p(dim);
      for (std::size_t count = 0; count < total; ++count) {
        for (int k = 0; k < dim; ++k) p[k] = rng.uniform(-axes[k], axes[k]);
        if (ball.contains(p)) {
          rule.points.insert(rule.points.end(), p.begin(), p.end());
          rule.weights.push_back(w);
        }
      }
      return rule;
    }
  }
  return rule;
}

std::vector<double> integrate(const QuadratureRule& rule, std::size_t outputs,
                              const std::function<void(std::span<const double>, std::span<double>)>& f) {
  std::vector<std::vector<double>> partial(kShards, std::vector<double>(outputs, 0.0));
  for_each_shard(rule.size(), [&](std::size_t shard, std::size_t begin, std::size_t end) {
    std::vector<double> values(outputs);
    auto& acc = partial[shard];
    for (std::size_t i = begin; i < end; ++i) {
      f(rule.point(i), values);
      for (std::size_t k = 0; k < outputs; ++k) acc[k] += rule.weights[i] * values[k];
    }
  });
  std::vector<double> total(outputs, 0.0);
  for (const auto& part : partial)
    for (std::size_t k = 0; k < outputs; ++k) total[k] += part[k];
  return total;
}

Estimate make_estimate(double coarse, double fine) {
  const double floor = 64 * std::numeric_limits<double>::epsilon() * std::abs(fine);
  return {fine, coarse, std::max(std::abs(fine - coarse), floor)};
}

}  // namespace hvf
