#include "hvf/lifting.hpp"

#include "hvf/analysis.hpp"
#include "hvf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hvf {

namespace {

bool all_zero(const std::vector<Poly>& ps) {
  return std::all_of(ps.begin(), ps.end(), [](const Poly& p) { return p.is_zero(); });
}

IdentityCheck make_check(std::string name, std::vector<Poly> residual, std::string detail = {}) {
  IdentityCheck c;
  c.name = std::move(name);
  c.passed = all_zero(residual);
  c.residual = std::move(residual);
  c.detail = std::move(detail);
  return c;
}

std::vector<Poly> variables(int ring, int offset, int count) {
  std::vector<Poly> v;
  for (int i = 0; i < count; ++i) v.push_back(Poly::variable(ring, offset + i));
  return v;
}

std::vector<Poly> zeros(int ring, int count) { return std::vector<Poly>(count, Poly(ring)); }

}  // namespace

CarnotGroupSpec::CarnotGroupSpec(VectorFieldSystem base, std::vector<int> tau, std::vector<Poly> law,
                                 std::vector<VectorField> lifted_fields)
    : base_(std::move(base)), tau_(std::move(tau)), law_(std::move(law)), lifted_(std::move(lifted_fields)) {
  for (std::size_t i = 0; i < tau_.size(); ++i) {
    if (tau_[i] < 1) throw InvalidArgument("τ exponents must be ≥ 1");
    if (i > 0 && tau_[i] < tau_[i - 1]) throw InvalidArgument("τ exponents must be nondecreasing");
  }
  weights_ = base_.sigma();
  weights_.insert(weights_.end(), tau_.begin(), tau_.end());
  const int big_n = N();
  if (static_cast<int>(law_.size()) != big_n) throw DimensionError("group law needs N components");
  for (const auto& p : law_)
    if (p.n_vars() != 2 * big_n) throw DimensionError("group law components must be polynomials in 2N variables");
  if (static_cast<int>(lifted_.size()) != base_.m()) throw DimensionError("one lifted field per base field");
  for (const auto& f : lifted_)
    if (f.dim() != big_n) throw DimensionError("lifted fields must live on R^N");
}

int CarnotGroupSpec::homogeneous_dimension() const noexcept {
  return std::accumulate(weights_.begin(), weights_.end(), 0);
}

std::vector<Poly> compose_law(const std::vector<Poly>& law, std::span<const Poly> x, std::span<const Poly> y) {
  std::vector<Poly> args(x.begin(), x.end());
  args.insert(args.end(), y.begin(), y.end());
  std::vector<Poly> out;
  out.reserve(law.size());
  for (const auto& component : law) out.push_back(component.substitute(args));
  return out;
}

std::optional<std::vector<Poly>> solve_inverse(const CarnotGroupSpec& spec, std::string* reason) {
  const int big_n = spec.N();
  const int ring = 2 * big_n;
  std::vector<int> order(big_n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return spec.weights()[a] < spec.weights()[b]; });
  // unknown v_j lives in variable big_n + j until solved
  std::vector<std::optional<Poly>> solved(big_n);
  auto fail = [&](const std::string& why) -> std::optional<std::vector<Poly>> {
    if (reason) *reason = why;
    return std::nullopt;
  };
  for (int i : order) {
    std::vector<Poly> args = variables(ring, 0, big_n);
    for (int j = 0; j < big_n; ++j)
      args.push_back(solved[j] ? solved[j]->embed(ring) : Poly::variable(ring, big_n + j));
    Poly eq = spec.law()[i].substitute(args);
    Rational lead = 0;
    Poly rest(ring);
    for (const auto& [e, c] : eq.terms()) {
      bool has_unknown = false;
      for (int j = 0; j < big_n; ++j) has_unknown |= e[big_n + j] != 0;
      if (!has_unknown) {
        rest.add_term(e, c);
        continue;
      }
      Exponent unit(ring, 0);
      unit[big_n + i] = 1;
      if (e != unit)
        return fail("component " + std::to_string(i + 1) + " is not affine in its own inverse coordinate");
      lead = c;
    }
    if (lead == 0) return fail("component " + std::to_string(i + 1) + " does not involve its inverse coordinate");
    // rest only involves x: project back to N variables
    Poly v(big_n);
    for (const auto& [e, c] : rest.terms()) v.add_term(Exponent(e.begin(), e.begin() + big_n), -c / lead);
    solved[i] = std::move(v);
  }
  std::vector<Poly> inverse;
  for (auto& s : solved) inverse.push_back(std::move(*s));
  return inverse;
}

GroupCertificate verify_group(const CarnotGroupSpec& spec) {
  const int big_n = spec.N();
  GroupCertificate cert;
  const auto& law = spec.law();

  {
    const int ring = 3 * big_n;
    auto x = variables(ring, 0, big_n);
    auto y = variables(ring, big_n, big_n);
    auto z = variables(ring, 2 * big_n, big_n);
    auto lhs = compose_law(law, compose_law(law, x, y), z);
    auto rhs = compose_law(law, x, compose_law(law, y, z));
    std::vector<Poly> residual;
    for (int i = 0; i < big_n; ++i) residual.push_back(lhs[i] - rhs[i]);
    cert.checks.push_back(make_check("associativity", std::move(residual)));
  }
  {
    auto y = variables(big_n, 0, big_n);
    auto zero = zeros(big_n, big_n);
    auto left = compose_law(law, zero, y);
    auto right = compose_law(law, y, zero);
    std::vector<Poly> residual;
    for (int i = 0; i < big_n; ++i) residual.push_back(left[i] - y[i]);
    for (int i = 0; i < big_n; ++i) residual.push_back(right[i] - y[i]);
    cert.checks.push_back(make_check("identity", std::move(residual)));
  }
  {
    std::string reason;
    auto inv = solve_inverse(spec, &reason);
    if (!inv) {
      IdentityCheck c;
      c.name = "inverse";
      c.passed = false;
      c.detail = reason;
      cert.checks.push_back(std::move(c));
    } else {
      auto x = variables(big_n, 0, big_n);
      auto right = compose_law(law, x, *inv);
      auto left = compose_law(law, *inv, x);
      std::vector<Poly> residual = right;
      residual.insert(residual.end(), left.begin(), left.end());
      cert.checks.push_back(make_check("inverse", std::move(residual)));
      cert.inverse = std::move(inv);
    }
  }
  {
    const int ring = 2 * big_n + 1;
    std::vector<int> both = spec.weights();
    both.insert(both.end(), spec.weights().begin(), spec.weights().end());
    Poly lambda = Poly::variable(ring, 2 * big_n);
    std::vector<Poly> residual;
    for (int i = 0; i < big_n; ++i)
      residual.push_back(lambda.pow(spec.weights()[i]) * law[i].embed(ring) - dilate(law[i], both));
    cert.checks.push_back(make_check("dilation_automorphism", std::move(residual)));
  }
  cert.passed = std::all_of(cert.checks.begin(), cert.checks.end(), [](const auto& c) { return c.passed; });
  return cert;
}

LiftCertificate verify_lift(const CarnotGroupSpec& spec) {
  const int big_n = spec.N();
  const int n = spec.n();
  const auto& base = spec.base();
  LiftCertificate cert;

  std::vector<Poly> projection, remainder, homogeneity, invariance;
  for (int i = 0; i < base.m(); ++i) {
    const VectorField& lifted = spec.lifted_fields()[i];
    const VectorField& original = base.field(i);
    for (int k = 0; k < n; ++k) {
      // part of the x-coefficient that depends on ξ
      Poly xi_part(big_n);
      for (const auto& [e, c] : lifted[k].terms()) {
        bool on_xi = false;
        for (int j = n; j < big_n; ++j) on_xi |= e[j] != 0;
        if (on_xi) xi_part.add_term(e, c);
      }
      projection.push_back(std::move(xi_part));
      remainder.push_back(lifted[k] - original[k].embed(big_n));
    }
    auto h = bracket_homogeneity_residual(lifted, 1, spec.weights());
    homogeneity.insert(homogeneity.end(), h.begin(), h.end());

    // J(L_a)(y)·X̃(y) − X̃(a∗y) in variables (a, y)
    const int ring = 2 * big_n;
    std::vector<Poly> field_at_y;
    for (int l = 0; l < big_n; ++l) field_at_y.push_back(lifted[l].embed(ring, big_n));
    for (int k = 0; k < big_n; ++k) {
      Poly lhs(ring);
      for (int l = 0; l < big_n; ++l)
        if (!field_at_y[l].is_zero()) lhs += spec.law()[k].derivative(big_n + l) * field_at_y[l];
      Poly rhs = lifted[k].substitute(spec.law());
      invariance.push_back(lhs - rhs);
    }
  }
  cert.items.push_back(make_check("projection", std::move(projection),
                                  "x-coefficients of each lifted field are independent of xi"));
  cert.items.push_back(make_check("xi_only_remainder", std::move(remainder),
                                  "R_i = lifted - original has zero x-coefficients"));
  cert.items.push_back(make_check("homogeneity", std::move(homogeneity),
                                  "each lifted field is D_lambda-homogeneous of degree 1"));
  cert.items.push_back(make_check("left_invariance", std::move(invariance),
                                  "dL_a(y) X(y) = X(a*y)"));

  const int depth = std::max(base.sigma().back(), spec.tau().empty() ? 1 : spec.tau().back());
  cert.generation = check_rank_at_origin(spec.lifted_fields(), depth);
  IdentityCheck gen;
  gen.name = "lie_generation";
  gen.passed = cert.generation.passed;
  gen.detail = "bracket rank " + std::to_string(cert.generation.rank) + " of " + std::to_string(big_n) +
               " at 0 with depth ≤ " + std::to_string(depth);
  cert.items.push_back(std::move(gen));

  cert.passed = std::all_of(cert.items.begin(), cert.items.end(), [](const auto& c) { return c.passed; });
  return cert;
}

SandwichReport projected_norm_sandwich(const CarnotGroupSpec& spec, const ScalarField& u, double r, double p,
                                       const QuadratureSettings& settings) {
  if (!(p > 1) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, ∞)");
  if (!(r > 0)) throw InvalidArgument("radius must be positive");
  if (u.n_vars() != spec.n()) throw DimensionError("u must be a function on the base space");
  SandwichReport rep;
  rep.r = r;
  rep.p = p;
  const std::vector<int>& sigma = spec.base().sigma();
  if (spec.s() > 0) {
    rep.c1 = std::pow(ball_measure(spec.tau(), r / 2), 1.0 / p);
    rep.c2 = std::pow(ball_measure(spec.tau(), r), 1.0 / p);
  } else {
    rep.c1 = rep.c2 = 1.0;
  }
  rep.inner = lp_norm(u, Ball(HomNorm(sigma), r / 2), p, settings);
  rep.outer = lp_norm(u, Ball(HomNorm(sigma), r), p, settings);
  rep.lifted = lp_norm(u.embed(spec.N()), Ball(HomNorm(spec.weights()), r), p, settings);
  rep.lower_holds = rep.c1 * rep.inner.value <= rep.lifted.value + rep.c1 * rep.inner.error + rep.lifted.error;
  rep.upper_holds = rep.lifted.value <= rep.c2 * rep.outer.value + rep.c2 * rep.outer.error + rep.lifted.error;
  for (const Estimate* e : {&rep.inner, &rep.lifted, &rep.outer})
    if (e->value > 0) rep.max_relative_error = std::max(rep.max_relative_error, e->error / e->value);
  return rep;
}

}  // namespace hvf
