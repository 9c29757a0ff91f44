#include "hvf/analysis.hpp"

#include "hvf/errors.hpp"
#include "hvf/parallel.hpp"
#include "hvf/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hvf {

namespace {

// Position of a word among all words of its length (base-m digits).
std::size_t encode(const std::vector<int>& word, int m) {
  std::size_t id = 0;
  for (int i : word) id = id * static_cast<std::size_t>(m) + static_cast<std::size_t>(i);
  return id;
}

std::vector<int> one_based(const std::vector<int>& word) {
  std::vector<int> w;
  for (int i : word) w.push_back(i + 1);
  return w;
}

double relative(const Estimate& e) { return e.value > 0 ? e.error / e.value : 0.0; }

std::vector<std::vector<int>> words_of_length(int m, int len) {
  std::vector<std::vector<int>> out{{}};
  for (int l = 0; l < len; ++l) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out)
      for (int i = 0; i < m; ++i) {
        auto v = w;
        v.push_back(i);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

double clamp_ratio(double eps, double lhs, double second, double zeroth) {
  // smallest c with lhs ≤ eps·second + (c/eps)·zeroth
  const double excess = lhs - eps * second;
  if (excess <= 0) return 0.0;
  if (zeroth <= 0) return std::numeric_limits<double>::infinity();
  return eps * excess / zeroth;
}

void check_family(std::span<const FamilyMember> family) {
  if (family.empty()) throw InvalidArgument("empty family");
  for (const auto& f : family)
    if (!(f.support_radius > 0) || !std::isfinite(f.support_radius))
      throw InvalidArgument("family member '" + f.name + "' has no bounded support ball");
}

QuadratureSettings refine_to(QuadratureSettings s, double tolerance) {
  if (!(s.target_error > 0)) s.target_error = tolerance;
  return s;
}

}  // namespace

// ------------------------------------------------------------------ cutoffs

CutoffSpec make_cutoff(double r1, double r2, std::span<const int> sigma) {
  if (!(r1 > 0) || !(r2 > r1) || !std::isfinite(r2)) throw InvalidArgument("cutoff radii must satisfy 0 < r1 < r2");
  const int n = static_cast<int>(sigma.size());
  const Rational a = rational_from_double(r1);
  const Rational b = rational_from_double(r2);
  const Rational scale = Rational(1) / (2 * (b - a));
  const Rational shift = (a + b) / (4 * (b - a));
  ScalarField norm = ScalarField::hom_norm(n, sigma);
  ScalarField arg = ScalarField::constant(n, scale) * norm - ScalarField::constant(n, shift);
  return {r1, r2, {sigma.begin(), sigma.end()}, arg.chi()};
}

CutoffBound cutoff_derivative_bounds(const CutoffSpec& cutoff, const VectorFieldSystem& sys, int order,
                                     std::size_t samples, std::uint64_t seed) {
  if (order < 0 || order > 3) throw InvalidArgument("cutoff derivative order must lie in 0..3");
  if (samples < 1) throw InvalidArgument("samples must be ≥ 1");
  const int n = sys.n();
  const HomNorm norm(sys.sigma());
  std::vector<double> partial(kShards, 0.0);
  for_each_shard(samples, [&](std::size_t shard, std::size_t begin, std::size_t end) {
    Rng rng = Rng::for_shard(seed, shard);
    std::vector<double> y(n);
    for (std::size_t s = begin; s < end; ++s) {
      rng.unit_ball(y);
      auto x = norm.dilate(y, cutoff.r2);
      auto jet = cutoff.phi.jet(x, order);
      auto wj = word_jets<double>(sys.fields(), jet, x, order);
      double sum = 0;
      for (const auto& [w, j] : wj.by_length[order]) sum += std::abs(j.value());
      partial[shard] = std::max(partial[shard], sum);
    }
  });
  CutoffBound b;
  b.order = order;
  b.sup = *std::max_element(partial.begin(), partial.end());
  b.normalized = b.sup * std::pow(cutoff.r2 - cutoff.r1, order);
  b.samples = samples;
  b.seed = seed;
  return b;
}

// ------------------------------------------------------------------ norms

std::vector<Estimate> combination_norms(std::span<const VectorField> fields, const ScalarField& u, const Ball& ball,
                                        std::span<const WordCombination> combos, double p,
                                        const QuadratureSettings& settings) {
  if (!(p >= 1) || !std::isfinite(p)) throw InvalidArgument("p must be a finite number ≥ 1");
  if (u.n_vars() != ball.norm().dimension()) throw DimensionError("function and ball dimensions differ");
  const int m = static_cast<int>(fields.size());
  int max_len = 0;
  for (const auto& c : combos)
    for (const auto& [w, coef] : c.terms) {
      max_len = std::max(max_len, static_cast<int>(w.size()));
      for (int i : w)
        if (i < 0 || i >= m) throw InvalidArgument("word letter out of range");
    }
  if (max_len > kMaxJetOrder) throw InvalidArgument("derivative order exceeds the jet limit");
  // flat index of every (length, position)
  std::vector<std::size_t> offset(max_len + 2, 0);
  for (int len = 0; len <= max_len; ++len)
    offset[len + 1] = offset[len] + static_cast<std::size_t>(std::pow(std::max(m, 1), len));
  std::vector<std::vector<std::pair<std::size_t, double>>> plan;
  for (const auto& c : combos) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (const auto& [w, coef] : c.terms) terms.emplace_back(offset[w.size()] + encode(w, m), coef);
    plan.push_back(std::move(terms));
  }
  auto integrand = [&](std::span<const double> x, std::span<double> out) {
    auto jet = u.jet(x, max_len);
    std::vector<double> values(offset[max_len + 1], 0.0);
    if (max_len == 0 || m == 0) {
      values[0] = jet.value();
    } else {
      auto wj = word_jets<double>(fields, jet, x, max_len);
      for (int len = 0; len <= max_len; ++len)
        for (std::size_t i = 0; i < wj.by_length[len].size(); ++i) values[offset[len] + i] = wj.by_length[len][i].second.value();
    }
    for (std::size_t c = 0; c < plan.size(); ++c) {
      double v = 0;
      for (const auto& [idx, coef] : plan[c]) v += coef * values[idx];
      out[c] = std::pow(std::abs(v), p);
    }
  };
  auto relative_ok = [&](const std::vector<double>& coarse, const std::vector<double>& fine) {
    if (!(settings.target_error > 0)) return true;
    for (std::size_t c = 0; c < coarse.size(); ++c) {
      const double a = std::pow(coarse[c], 1.0 / p), b = std::pow(fine[c], 1.0 / p);
      if (std::abs(a - b) > settings.target_error * b) return false;
    }
    return true;
  };
  const int dim = ball.norm().dimension();
  QuadratureSettings level = settings;
  auto coarse_sums = integrate(ball_rule(ball, level), plan.size(), integrand);
  level.resolution *= 2;
  auto fine_sums = integrate(ball_rule(ball, level), plan.size(), integrand);
  while (!relative_ok(coarse_sums, fine_sums) && 2 * level.resolution <= settings.max_resolution &&
         std::pow(2.0 * level.resolution, dim) <= 4194304.0 / (dim == 2 ? 2 : 1)) {
    level.resolution *= 2;
    coarse_sums = std::move(fine_sums);
    fine_sums = integrate(ball_rule(ball, level), plan.size(), integrand);
  }
  std::vector<Estimate> out;
  for (std::size_t c = 0; c < plan.size(); ++c)
    out.push_back(make_estimate(std::pow(coarse_sums[c], 1.0 / p), std::pow(fine_sums[c], 1.0 / p)));
  return out;
}

Estimate lp_norm(const ScalarField& u, const Ball& ball, double p, const QuadratureSettings& settings) {
  std::vector<WordCombination> combos{WordCombination::single({})};
  return combination_norms({}, u, ball, combos, p, settings).front();
}

SobolevReport sobolev_norm(const VectorFieldSystem& sys, const ScalarField& u, const Ball& omega, int k, double p,
                           const QuadratureSettings& settings, double tolerance) {
  if (k < 0 || k > 4) throw InvalidArgument("Sobolev order must lie in 0..4");
  if (!(p > 1) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, ∞)");
  if (omega.norm().exponents() != sys.sigma()) throw DimensionError("ball and system use different dilations");
  std::vector<std::vector<int>> words;
  std::vector<WordCombination> combos;
  for (int len = 0; len <= k; ++len)
    for (auto& w : words_of_length(sys.m(), len)) {
      combos.push_back(WordCombination::single(w));
      words.push_back(std::move(w));
    }
  auto norms = combination_norms(sys.fields(), u, omega, combos, p, settings);
  SobolevReport rep;
  rep.p = p;
  rep.k = k;
  rep.seminorms.assign(k + 1, 0.0);
  rep.seminorm_errors.assign(k + 1, 0.0);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const int len = static_cast<int>(words[i].size());
    rep.seminorms[len] += norms[i].value;
    rep.seminorm_errors[len] += norms[i].error;
    rep.max_relative_error = std::max(rep.max_relative_error, relative(norms[i]));
    rep.terms.push_back({one_based(words[i]), norms[i]});
  }
  for (int i = 0; i <= k; ++i) {
    rep.total += rep.seminorms[i];
    rep.total_error += rep.seminorm_errors[i];
  }
  rep.flagged = rep.max_relative_error > tolerance;
  return rep;
}

std::vector<double> default_sigma_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 19; ++i) g.push_back(i / 20.0);
  return g;
}

PhiReport phi_functional(const VectorFieldSystem& sys, const ScalarField& u, double R, int k, double p,
                         std::span<const double> sigma_grid, const QuadratureSettings& settings) {
  if (k < 0 || k > 2) throw InvalidArgument("Φ_k is defined for k ∈ {0, 1, 2}");
  if (!(R > 0)) throw InvalidArgument("R must be positive");
  PhiReport rep;
  rep.sigma_grid.assign(sigma_grid.begin(), sigma_grid.end());
  if (rep.sigma_grid.empty()) rep.sigma_grid = default_sigma_grid();
  std::vector<WordCombination> combos;
  for (auto& w : words_of_length(sys.m(), k)) combos.push_back(WordCombination::single(std::move(w)));
  bool first = true;
  for (double s : rep.sigma_grid) {
    if (!(s > 0 && s < 1)) throw InvalidArgument("σ grid values must lie in (0, 1)");
    auto norms = combination_norms(sys.fields(), u, Ball(HomNorm(sys.sigma()), s * R), combos, p, settings);
    double dk = 0;
    for (const auto& e : norms) {
      dk += e.value;
      rep.max_relative_error = std::max(rep.max_relative_error, relative(e));
    }
    const double term = std::pow((1 - s) * R, k) * dk;
    rep.terms.push_back(term);
    if (first || term > rep.value) {
      rep.value = term;
      rep.argmax_sigma = s;
      first = false;
    }
  }
  return rep;
}

// ------------------------------------------------------------------ family

std::vector<FamilyMember> default_family(const VectorFieldSystem& sys) {
  const int n = sys.n();
  const auto& sigma = sys.sigma();
  // exponent vectors of weighted degree ≤ 4
  std::vector<Exponent> monomials;
  Exponent e(n, 0);
  auto rec = [&](auto&& self, int var, int budget) -> void {
    if (var == n) {
      monomials.push_back(e);
      return;
    }
    for (int a = 0; a * sigma[var] <= budget; ++a) {
      e[var] = a;
      self(self, var + 1, budget - a * sigma[var]);
    }
    e[var] = 0;
  };
  rec(rec, 0, 4);
  std::sort(monomials.begin(), monomials.end(), [&](const Exponent& a, const Exponent& b) {
    int da = 0, db = 0;
    for (int i = 0; i < n; ++i) {
      da += sigma[i] * a[i];
      db += sigma[i] * b[i];
    }
    return da != db ? da < db : a > b;
  });
  std::vector<FamilyMember> family;
  for (double r : {1.0, 2.0}) {
    // exp(-|δ_{1/r} x|²): the Gaussian lives on the same scale as its cutoff
    Poly sq(n);
    for (int i = 0; i < n; ++i) sq += Poly::variable(n, i).pow(2) * pow(Rational(1) / rational_from_double(r), 2 * sigma[i]);
    const ScalarField gaussian = (-ScalarField::from_poly(sq)).exp();
    const CutoffSpec cut = make_cutoff(r, 2 * r, sigma);
    for (const auto& mono : monomials) {
      Poly p = Poly::monomial(mono, 1);
      ScalarField u = ScalarField::from_poly(p) * gaussian * cut.phi;
      std::string name = p.to_string() + "*gauss" + std::to_string(static_cast<int>(r)) + "*phi(" +
                         std::to_string(static_cast<int>(r)) + "," + std::to_string(static_cast<int>(2 * r)) + ")";
      family.push_back({std::move(name), std::move(u), 2 * r});
    }
  }
  return family;
}

// ------------------------------------------------------------------ harnesses

InequalityReport interpolation_harness(const VectorFieldSystem& sys, std::span<const FamilyMember> family, double p,
                                       std::span<const double> eps_grid, std::span<const double> R_grid,
                                       const QuadratureSettings& base_settings, std::span<const double> sigma_grid,
                                       double tolerance) {
  check_family(family);
  QuadratureSettings settings = refine_to(base_settings, tolerance);
  if (!(p > 1) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, ∞)");
  if (eps_grid.empty()) throw InvalidArgument("empty ε grid");
  for (double e : eps_grid)
    if (!(e > 0)) throw InvalidArgument("ε values must be positive");
  const int m = sys.m();
  const HomNorm norm(sys.sigma());
  InequalityReport rep;
  rep.id = "interpolation";
  rep.p = p;
  rep.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  rep.R_grid.assign(R_grid.begin(), R_grid.end());
  double c_global = 0, c_ball = 0, alpha = 0;
  auto track = [&](const Estimate& e) { rep.max_relative_error = std::max(rep.max_relative_error, relative(e)); };

  // every norm below is some X_W u with |W| ≤ 2, so one evaluation per radius serves all forms
  std::vector<WordCombination> combos;
  for (int len = 0; len <= 2; ++len)
    for (auto& w : words_of_length(m, len)) combos.push_back(WordCombination::single(std::move(w)));
  auto first = [&](int i) { return static_cast<std::size_t>(1 + i); };
  auto square = [&](int i) { return static_cast<std::size_t>(1 + m + i * (m + 1)); };
  std::vector<double> sgrid(sigma_grid.begin(), sigma_grid.end());
  if (sgrid.empty()) sgrid = default_sigma_grid();
  for (double R : R_grid)
    if (!(R > 0)) throw InvalidArgument("R values must be positive");

  for (const auto& member : family) {
    std::map<double, std::vector<Estimate>> cache;
    // u vanishes off its support ball, so larger balls give the same norms
    auto norms_on = [&](double radius) -> const std::vector<Estimate>& {
      radius = std::min(radius, member.support_radius);
      auto it = cache.find(radius);
      if (it == cache.end()) {
        it = cache.emplace(radius, combination_norms(sys.fields(), member.u, Ball(norm, radius), combos, p, settings))
                 .first;
        for (const auto& e : it->second) track(e);
      }
      return it->second;
    };
    // on R^n, truncated to the support ball
    const auto& g = norms_on(member.support_radius);
    for (int i = 0; i < m; ++i) {
      for (double eps : eps_grid) {
        const double lhs = g[first(i)].value, second = g[square(i)].value;
        const double ratio = clamp_ratio(eps, lhs, second, g[0].value);
        c_global = std::max(c_global, ratio);
        rep.rows.push_back({"global", member.name, i + 1, member.support_radius, eps, lhs, second, g[0].value, ratio});
      }
    }
    for (double R : R_grid) {
      const auto& inner = norms_on(R / 4);
      const auto& outer = norms_on(R);
      for (int i = 0; i < m; ++i) {
        for (double eps : eps_grid) {
          const double lhs = inner[first(i)].value, second = outer[square(i)].value;
          const double ratio = clamp_ratio(eps, lhs, second, outer[0].value);
          c_ball = std::max(c_ball, ratio);
          rep.rows.push_back({"ball", member.name, i + 1, R, eps, lhs, second, outer[0].value, ratio});
        }
      }
      // Φ_0, Φ_1, Φ_2 on the σ grid
      double phi[3] = {0, 0, 0};
      for (double s : sgrid) {
        if (!(s > 0 && s < 1)) throw InvalidArgument("σ grid values must lie in (0, 1)");
        const auto& d = norms_on(s * R);
        double dk[3] = {0, 0, 0};
        for (std::size_t idx = 0; idx < d.size(); ++idx) dk[combos[idx].terms[0].first.size()] += d[idx].value;
        for (int kk = 0; kk <= 2; ++kk) phi[kk] = std::max(phi[kk], std::pow((1 - s) * R, kk) * dk[kk]);
      }
      for (double eps : eps_grid) {
        if (eps > 1) continue;  // the local form only holds for ε ∈ (0, 1]
        const double ratio = clamp_ratio(eps, phi[1], phi[2], phi[0]);
        alpha = std::max(alpha, ratio);
        rep.rows.push_back({"phi", member.name, 0, R, eps, phi[1], phi[2], phi[0], ratio});
      }
    }
  }
  rep.constants["c_p"] = c_global;
  rep.constants["c_p_ball"] = c_ball;
  rep.constants["alpha_p"] = alpha;
  rep.quadrature_ok = rep.max_relative_error <= tolerance;
  rep.passed = std::isfinite(c_global) && std::isfinite(c_ball) && std::isfinite(alpha);
  return rep;
}

InequalityReport apriori_harness(const VectorFieldSystem& sys, std::span<const FamilyMember> family, double p, int k,
                                 const QuadratureSettings& base_settings, double tolerance) {
  check_family(family);
  QuadratureSettings settings = refine_to(base_settings, tolerance);
  if (k < 0 || k > 2) throw InvalidArgument("a-priori harness supports k ∈ {0, 1, 2}");
  if (!(p > 1) || !std::isfinite(p)) throw InvalidArgument("p must lie in (1, ∞)");
  const int m = sys.m();
  const HomNorm norm(sys.sigma());
  InequalityReport rep;
  rep.id = "apriori";
  rep.p = p;
  rep.k = k;
  // combos: every word of length ≤ k+2 (u's derivatives), then X_I(Lu) for |I| ≤ k
  std::vector<WordCombination> combos;
  std::vector<int> word_len;
  for (int len = 0; len <= k + 2; ++len)
    for (auto& w : words_of_length(m, len)) {
      combos.push_back(WordCombination::single(std::move(w)));
      word_len.push_back(len);
    }
  const std::size_t first_lu = combos.size();
  std::vector<int> lu_len;
  for (int len = 0; len <= k; ++len)
    for (const auto& w : words_of_length(m, len)) {
      WordCombination c;
      for (int j = 0; j < m; ++j) {
        auto v = w;
        v.push_back(j);
        v.push_back(j);
        c.terms.emplace_back(std::move(v), 1.0);
      }
      combos.push_back(std::move(c));
      lu_len.push_back(len);
    }
  double theta = 0, lambda = 0;
  for (const auto& member : family) {
    auto norms = combination_norms(sys.fields(), member.u, Ball(norm, member.support_radius), combos, p, settings);
    std::vector<double> d(k + 3, 0.0), dl(k + 1, 0.0);
    for (std::size_t c = 0; c < first_lu; ++c) d[word_len[c]] += norms[c].value;
    for (std::size_t c = first_lu; c < combos.size(); ++c) dl[lu_len[c - first_lu]] += norms[c].value;
    for (const auto& e : norms) rep.max_relative_error = std::max(rep.max_relative_error, relative(e));
    for (int i = 0; i <= k; ++i) {
      double ratio = 0;
      if (d[i + 2] > 0) ratio = dl[i] > 0 ? d[i + 2] / dl[i] : std::numeric_limits<double>::infinity();
      theta = std::max(theta, ratio);
      rep.rows.push_back({"theta", member.name, i, member.support_radius, 0, d[i + 2], dl[i], 0, ratio});
    }
    const double w_norm = std::accumulate(d.begin(), d.end(), 0.0);
    const double rhs = std::accumulate(dl.begin(), dl.end(), 0.0) + d[0];
    double ratio = 0;
    if (w_norm > 0) ratio = rhs > 0 ? w_norm / rhs : std::numeric_limits<double>::infinity();
    lambda = std::max(lambda, ratio);
    rep.rows.push_back({"lambda", member.name, k, member.support_radius, 0, w_norm, rhs - d[0], d[0], ratio});
  }
  rep.constants["theta_k_p"] = theta;
  rep.constants["lambda_k_p"] = lambda;
  rep.quadrature_ok = rep.max_relative_error <= tolerance;
  rep.passed = std::isfinite(theta) && std::isfinite(lambda);
  return rep;
}

double leibniz_identity_error(const VectorFieldSystem& sys, const ScalarField& phi, const ScalarField& u,
                              std::span<const double> x) {
  auto jp = phi.jet(x, 2);
  auto ju = u.jet(x, 2);
  auto jpu = (phi * u).jet(x, 2);
  auto wp = word_jets<double>(sys.fields(), jp, x, 2);
  auto wu = word_jets<double>(sys.fields(), ju, x, 2);
  auto wpu = word_jets<double>(sys.fields(), jpu, x, 2);
  const int m = sys.m();
  double worst = 0;
  for (int i = 0; i < m; ++i) {
    const std::size_t ii = static_cast<std::size_t>(i * m + i);
    const double lhs = wpu.by_length[2][ii].second.value();
    const double t1 = ju.value() * wp.by_length[2][ii].second.value();
    const double t2 = 2 * wp.by_length[1][i].second.value() * wu.by_length[1][i].second.value();
    const double t3 = jp.value() * wu.by_length[2][ii].second.value();
    const double scale = std::max({std::abs(lhs), std::abs(t1) + std::abs(t2) + std::abs(t3)});
    if (scale == 0) continue;
    worst = std::max(worst, std::abs(lhs - (t1 + t2 + t3)) / scale);
  }
  return worst;
}

double sub_laplacian(const VectorFieldSystem& sys, const ScalarField& u, std::span<const double> x) {
  auto jet = u.jet(x, 2);
  auto wj = word_jets<double>(sys.fields(), jet, x, 2);
  double s = 0;
  for (int j = 0; j < sys.m(); ++j) s += wj.by_length[2][static_cast<std::size_t>(j * sys.m() + j)].second.value();
  return s;
}

}  // namespace hvf
