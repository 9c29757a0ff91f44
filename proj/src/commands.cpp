#include "hvf/commands.hpp"

#include "hvf/errors.hpp"
#include "hvf/homnorm_root.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace hvf {

namespace fs = std::filesystem;

namespace {

Json header(const std::string& command) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

Json system_summary(const VectorFieldSystem& sys) {
  Json j;
  j["name"] = sys.name();
  j["n"] = sys.n();
  j["m"] = sys.m();
  j["sigma"] = sys.sigma();
  j["q"] = sys.q();
  Json fields = Json::array();
  for (const auto& f : sys.fields()) fields.push_back(f.to_string());
  j["fields"] = std::move(fields);
  return j;
}

Json params_json(const ParamOverrides& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

std::vector<double> doubles(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError(where + "/" + std::to_string(i), "expected a number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

double number_field(const Json& cfg, const std::string& key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg[key].is_number()) throw ParseError("config/" + key, "expected a number");
  return cfg[key].get<double>();
}

bool all_finite(const InequalityReport& r) {
  for (const auto& [k, v] : r.constants)
    if (!std::isfinite(v)) return false;
  return true;
}

int worse(int a, int b) {
  auto rank = [](int c) { return c == kExitFailure ? 2 : c == kExitSoftFail ? 1 : 0; };
  return rank(b) > rank(a) ? b : a;
}

}  // namespace

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v))
      throw ParseError("point", "cannot read coordinate '" + item + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// ------------------------------------------------------------------ check

CommandResult run_check(const VectorFieldSystem& sys, const CheckOptions& options, const Json& source) {
  const int depth = options.max_depth.value_or(sys.sigma().back());
  if (depth < 1) throw InvalidArgument("max depth must be ≥ 1");
  if (options.homogeneity_length < 1 || options.homogeneity_length > 8)
    throw InvalidArgument("homogeneity length must lie in 1..8");
  CommandResult out;
  Json& r = out.report;
  r = header("check");
  Json cfg;
  cfg["source"] = source;
  cfg["max_depth"] = depth;
  cfg["homogeneity_length"] = options.homogeneity_length;
  r["config"] = std::move(cfg);
  r["system"] = system_summary(sys);

  const H1Certificate h1 = check_h1(sys);
  const HormanderCertificate h2 = check_rank_at_origin(sys, depth);
  const auto minimal = minimal_depth(sys, depth);
  r["h1"] = to_json(h1);
  r["hormander"] = to_json(h2);
  r["minimal_depth"] = minimal ? Json(*minimal) : Json(nullptr);

  Json hom;
  std::size_t checked = 0;
  Json failures = Json::array();
  for (const auto& [word, bracket] : all_nested_brackets(sys.fields(), options.homogeneity_length)) {
    ++checked;
    auto residual = bracket_homogeneity_residual(bracket, static_cast<int>(word.size()), sys.sigma());
    if (std::any_of(residual.begin(), residual.end(), [](const Poly& p) { return !p.is_zero(); }))
      failures.push_back(word.one_based());
  }
  hom["max_length"] = options.homogeneity_length;
  hom["brackets_checked"] = checked;
  hom["failures"] = failures;
  hom["passed"] = failures.empty();
  r["bracket_homogeneity"] = std::move(hom);

  Json div = Json::array();
  bool div_free = true;
  for (const auto& f : sys.fields()) {
    Poly d = divergence(f);
    div_free = div_free && d.is_zero();
    div.push_back(d.to_string());
  }
  r["divergence"] = std::move(div);
  r["divergence_free"] = div_free;

  const bool passed = h1.passed && h2.passed;
  r["passed"] = passed;
  out.exit_code = passed ? kExitPass : kExitFailure;
  return out;
}

CommandResult run_check(const fs::path& system, const CheckOptions& options, const ParamOverrides& params) {
  Json source;
  source["path"] = system.string();
  source["params"] = params_json(params);
  return run_check(load_system(system, params), options, source);
}

// ------------------------------------------------------------------ verify-lift

CommandResult run_verify_lift(const CarnotGroupSpec& spec, const Json& source) {
  CommandResult out;
  Json& r = out.report;
  r = header("verify-lift");
  Json cfg;
  cfg["source"] = source;
  r["config"] = std::move(cfg);
  Json lift;
  lift["base"] = system_summary(spec.base());
  lift["N"] = spec.N();
  lift["s"] = spec.s();
  lift["tau"] = spec.tau();
  lift["homogeneous_dimension"] = spec.homogeneous_dimension();
  Json law = Json::array();
  for (const auto& p : spec.law()) law.push_back(p.to_string());
  lift["law"] = std::move(law);
  Json fields = Json::array();
  for (const auto& f : spec.lifted_fields()) fields.push_back(f.to_string());
  lift["lifted_fields"] = std::move(fields);
  r["lift"] = std::move(lift);
  const GroupCertificate group = verify_group(spec);
  const LiftCertificate cert = verify_lift(spec);
  r["group"] = to_json(group);
  r["lift_certificate"] = to_json(cert);
  const bool passed = group.passed && cert.passed;
  r["passed"] = passed;
  out.exit_code = passed ? kExitPass : kExitFailure;
  return out;
}

CommandResult run_verify_lift(const fs::path& lift) {
  Json source;
  source["path"] = lift.string();
  return run_verify_lift(load_lift(lift), source);
}

// ------------------------------------------------------------------ norm

CommandResult run_norm(const VectorFieldSystem& sys, std::span<const double> point, const Json& source) {
  if (static_cast<int>(point.size()) != sys.n())
    throw DimensionError("point has " + std::to_string(point.size()) + " coordinates, system has n = " +
                         std::to_string(sys.n()));
  CommandResult out;
  Json& r = out.report;
  r = header("norm");
  Json cfg;
  cfg["source"] = source;
  cfg["point"] = std::vector<double>(point.begin(), point.end());
  r["config"] = std::move(cfg);
  r["system"] = system_summary(sys);
  const HomNorm norm(sys.sigma());
  const double value = norm(point);
  r["norm"] = number(value);
  r["residual"] = number(value > 0 ? homogeneous_norm_residual(point, sys.sigma(), 1.0 / value) : 0.0);
  if (value > 0) {
    auto unit = norm.dilate(point, 1.0 / value);
    double e = 0;
    for (double v : unit) e += v * v;
    r["euclidean_norm_of_unit_dilate"] = number(std::sqrt(e));
  }
  return out;
}

CommandResult run_norm(const fs::path& system, std::span<const double> point, const ParamOverrides& params) {
  Json source;
  source["path"] = system.string();
  source["params"] = params_json(params);
  return run_norm(load_system(system, params), point, source);
}

// ------------------------------------------------------------------ harness

CommandResult run_harness(const Json& config, const fs::path& base_dir, const HarnessOverrides& overrides) {
  if (!config.is_object()) throw ParseError("config", "expected an object");
  if (config.contains("schema") && config["schema"] != kSchemaVersion)
    throw ParseError("config/schema", "unsupported schema version");
  if (!config.contains("system")) throw ParseError("config/system", "missing field");
  const VectorFieldSystem sys = system_from_json(config["system"], base_dir);

  QuadratureSettings quad;
  if (config.contains("quadrature")) quad = quadrature_from_json(config["quadrature"], "config/quadrature");
  if (overrides.resolution) {
    if (*overrides.resolution < 2) throw InvalidArgument("resolution must be ≥ 2");
    quad.resolution = *overrides.resolution;
  }
  if (overrides.seed) quad.seed = *overrides.seed;

  const double p = number_field(config, "p", 2.0);
  const double tolerance = number_field(config, "tolerance", 1e-3);
  if (!(quad.target_error > 0)) quad.target_error = tolerance;
  int k = 0;
  if (config.contains("k")) {
    if (!config["k"].is_number_integer()) throw ParseError("config/k", "expected an integer");
    k = config["k"].get<int>();
  }
  std::vector<double> eps_grid;
  if (config.contains("eps_grid")) {
    eps_grid = doubles(config["eps_grid"], "config/eps_grid");
  } else {
    for (int i = 1; i <= 10; ++i) eps_grid.push_back(i / 10.0);
  }
  std::vector<double> R_grid = config.contains("R_grid") ? doubles(config["R_grid"], "config/R_grid")
                                                          : std::vector<double>{2.0, 4.0};
  std::vector<double> sigma_grid = config.contains("sigma_grid") ? doubles(config["sigma_grid"], "config/sigma_grid")
                                                                 : default_sigma_grid();
  for (double e : eps_grid)
    if (!(e > 0 && e <= 1)) throw ParseError("config/eps_grid", "ε values must lie in (0, 1]");

  std::vector<FamilyMember> family;
  std::string family_kind = "default";
  if (config.contains("family") && !(config["family"].is_string() && config["family"] == "default")) {
    const Json& f = config["family"];
    if (!f.is_array()) throw ParseError("config/family", "expected \"default\" or an array of members");
    family_kind = "custom";
    for (std::size_t i = 0; i < f.size(); ++i) {
      const std::string w = "config/family/" + std::to_string(i);
      if (!f[i].is_object() || !f[i].contains("expr") || !f[i]["expr"].is_string())
        throw ParseError(w, "expected {expr, support_radius}");
      if (!f[i].contains("support_radius") || !f[i]["support_radius"].is_number())
        throw ParseError(w + "/support_radius", "a bounded support radius is required");
      const std::string expr = f[i]["expr"].get<std::string>();
      std::string name = f[i].contains("name") && f[i]["name"].is_string() ? f[i]["name"].get<std::string>() : expr;
      family.push_back({std::move(name), ScalarField::parse(expr, sys.n()), f[i]["support_radius"].get<double>()});
    }
  } else {
    family = default_family(sys);
  }

  std::vector<std::string> run{"interpolation", "apriori"};
  if (config.contains("run")) {
    run.clear();
    if (!config["run"].is_array()) throw ParseError("config/run", "expected an array of section names");
    for (const auto& s : config["run"]) {
      if (!s.is_string()) throw ParseError("config/run", "expected section names");
      const std::string name = s.get<std::string>();
      if (name != "interpolation" && name != "apriori" && name != "sandwich" && name != "cutoffs")
        throw ParseError("config/run", "unknown section '" + name + "'");
      run.push_back(name);
    }
  }
  auto wants = [&](const std::string& s) { return std::find(run.begin(), run.end(), s) != run.end(); };

  CommandResult out;
  Json& r = out.report;
  r = header("harness");
  Json cfg;
  cfg["system"] = system_to_json(sys);
  cfg["family_kind"] = family_kind;
  Json fam = Json::array();
  for (const auto& m : family) {
    Json e;
    e["name"] = m.name;
    e["expr"] = m.u.to_string();
    e["support_radius"] = number(m.support_radius);
    fam.push_back(std::move(e));
  }
  cfg["family"] = std::move(fam);
  cfg["p"] = number(p);
  cfg["k"] = k;
  cfg["eps_grid"] = eps_grid;
  cfg["R_grid"] = R_grid;
  cfg["sigma_grid"] = sigma_grid;
  cfg["tolerance"] = number(tolerance);
  cfg["quadrature"] = to_json(quad);
  cfg["run"] = run;
  r["config"] = std::move(cfg);

  Json results = Json::object();
  int code = kExitPass;
  bool csv_header = true;
  auto append_csv = [&](const InequalityReport& rep) {
    std::string table = ratio_csv(rep);
    if (!csv_header) table.erase(0, table.find('\n') + 1);
    csv_header = false;
    out.csv += table;
  };

  if (wants("interpolation")) {
    auto rep = interpolation_harness(sys, family, p, eps_grid, R_grid, quad, sigma_grid, tolerance);
    if (!all_finite(rep)) code = worse(code, kExitFailure);
    if (!rep.quadrature_ok) code = worse(code, kExitSoftFail);
    append_csv(rep);
    results["interpolation"] = to_json(rep);
  }
  if (wants("apriori")) {
    auto rep = apriori_harness(sys, family, p, k, quad, tolerance);
    if (!all_finite(rep)) code = worse(code, kExitFailure);
    if (!rep.quadrature_ok) code = worse(code, kExitSoftFail);
    append_csv(rep);
    results["apriori"] = to_json(rep);
  }
  if (wants("sandwich")) {
    if (!config.contains("sandwich")) throw ParseError("config/sandwich", "missing section");
    const Json& s = config["sandwich"];
    if (!s.is_object() || !s.contains("lift")) throw ParseError("config/sandwich/lift", "missing field");
    const CarnotGroupSpec spec = lift_from_json(s["lift"].is_string() ? load_json(base_dir / s["lift"].get<std::string>())
                                                                      : s["lift"],
                                                s["lift"].is_string()
                                                    ? (base_dir / s["lift"].get<std::string>()).parent_path()
                                                    : base_dir);
    std::vector<std::string> functions{"1"};
    if (s.contains("functions")) {
      functions.clear();
      if (!s["functions"].is_array()) throw ParseError("config/sandwich/functions", "expected an array of strings");
      for (const auto& f : s["functions"]) {
        if (!f.is_string()) throw ParseError("config/sandwich/functions", "expected an array of strings");
        functions.push_back(f.get<std::string>());
      }
    }
    const auto radii = s.contains("radii") ? doubles(s["radii"], "config/sandwich/radii") : std::vector<double>{1.0};
    const auto ps = s.contains("p") ? doubles(s["p"], "config/sandwich/p") : std::vector<double>{p};
    Json rows = Json::array();
    for (const auto& f : functions) {
      const ScalarField u = ScalarField::parse(f, spec.n());
      for (double rad : radii)
        for (double pp : ps) {
          auto rep = projected_norm_sandwich(spec, u, rad, pp, quad);
          if (!rep.holds()) code = worse(code, rep.max_relative_error > tolerance ? kExitSoftFail : kExitFailure);
          else if (rep.max_relative_error > tolerance) code = worse(code, kExitSoftFail);
          Json e = to_json(rep);
          e["function"] = u.to_string();
          rows.push_back(std::move(e));
        }
    }
    results["sandwich"] = std::move(rows);
  }
  if (wants("cutoffs")) {
    std::vector<std::pair<double, double>> pairs{{1, 2}, {2, 4}, {4, 8}};
    std::vector<int> orders{0, 1, 2};
    std::size_t samples = 2000;
    if (config.contains("cutoffs")) {
      const Json& c = config["cutoffs"];
      if (!c.is_object()) throw ParseError("config/cutoffs", "expected an object");
      if (c.contains("radii")) {
        pairs.clear();
        for (const auto& pr : c["radii"]) {
          if (!pr.is_array() || pr.size() != 2 || !pr[0].is_number() || !pr[1].is_number())
            throw ParseError("config/cutoffs/radii", "expected [r1, r2] pairs");
          pairs.emplace_back(pr[0].get<double>(), pr[1].get<double>());
        }
      }
      if (c.contains("orders")) {
        orders.clear();
        for (const auto& o : c["orders"]) {
          if (!o.is_number_integer()) throw ParseError("config/cutoffs/orders", "expected integers");
          orders.push_back(o.get<int>());
        }
      }
      if (c.contains("samples")) {
        if (!c["samples"].is_number_unsigned() || c["samples"].get<std::size_t>() < 1)
          throw ParseError("config/cutoffs/samples", "expected a positive integer");
        samples = c["samples"].get<std::size_t>();
      }
    }
    Json by_order = Json::array();
    for (int order : orders) {
      Json entry;
      entry["order"] = order;
      Json bounds = Json::array();
      double lo = std::numeric_limits<double>::infinity(), hi = 0;
      for (const auto& [r1, r2] : pairs) {
        auto b = cutoff_derivative_bounds(make_cutoff(r1, r2, sys.sigma()), sys, order, samples, quad.seed);
        lo = std::min(lo, b.normalized);
        hi = std::max(hi, b.normalized);
        Json e = to_json(b);
        e["r1"] = r1;
        e["r2"] = r2;
        bounds.push_back(std::move(e));
      }
      const double spread = lo > 0 ? hi / lo : (hi > 0 ? std::numeric_limits<double>::infinity() : 1.0);
      entry["bounds"] = std::move(bounds);
      entry["spread"] = number(spread);
      entry["bounded"] = spread <= 2.0;
      if (spread > 2.0) code = worse(code, kExitFailure);
      by_order.push_back(std::move(entry));
    }
    results["cutoffs"] = std::move(by_order);
  }
  r["results"] = std::move(results);
  r["exit_code"] = code;
  // header-only table when no inequality section ran
  if (out.csv.empty()) out.csv = ratio_csv_header();
  out.exit_code = code;
  return out;
}

CommandResult run_harness(const fs::path& config, const HarnessOverrides& overrides) {
  return run_harness(load_json(config), config.parent_path(), overrides);
}

}  // namespace hvf
