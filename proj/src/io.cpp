#include "hvf/io.hpp"

#include "hvf/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace hvf {

namespace fs = std::filesystem;

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "malformed JSON");
  }
}

Json load_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_atomic(const fs::path& path, std::string_view content) {
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid());
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

namespace {

Json integer_to_json(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

Integer integer_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw ParseError(where, "expected an integer");
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(at(where, key), "missing field");
  return *it;
}

int get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<int>();
}

std::vector<int> get_ints(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_int(j[i], at(where, i)));
  return out;
}

void check_schema(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find("schema");
  if (it != j.end() && (!it->is_number_integer() || it->get<int>() != kSchemaVersion))
    throw ParseError(at(where, "schema"), "unsupported schema version");
}

Json words_to_json(std::span<const MultiIndex> words) {
  Json arr = Json::array();
  for (const auto& w : words) arr.push_back(w.one_based());
  return arr;
}

Json matrix_to_json(const std::vector<std::vector<Rational>>& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(rational_to_json(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

Json polys_to_json(std::span<const Poly> ps) {
  Json arr = Json::array();
  for (const auto& p : ps) arr.push_back(poly_to_json(p));
  return arr;
}

Json poly_strings(std::span<const Poly> ps) {
  Json arr = Json::array();
  for (const auto& p : ps) arr.push_back(p.to_string());
  return arr;
}

}  // namespace

Json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected a rational (integer or \"p/q\" string)");
}

Json poly_to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json t = Json::array();
    t.push_back(e);
    t.push_back(integer_to_json(numerator(c)));
    t.push_back(integer_to_json(denominator(c)));
    terms.push_back(std::move(t));
  }
  return terms;
}

Poly poly_from_json(const Json& j, int n_vars, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected a sparse polynomial [[exponents], num, den]");
  Poly p(n_vars);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = at(where, i);
    const Json& t = j[i];
    if (!t.is_array() || t.size() < 2 || t.size() > 3) throw ParseError(w, "expected [[exponents], num, den]");
    auto exps = get_ints(t[0], at(w, 0));
    if (static_cast<int>(exps.size()) != n_vars)
      throw ParseError(at(w, 0), "exponent vector has length " + std::to_string(exps.size()) + ", expected " +
                                     std::to_string(n_vars));
    for (int e : exps)
      if (e < 0) throw ParseError(at(w, 0), "negative exponent");
    Integer num = integer_from_json(t[1], at(w, 1));
    Integer den = t.size() == 3 ? integer_from_json(t[2], at(w, 2)) : Integer(1);
    if (den == 0) throw ParseError(at(w, 2), "zero denominator");
    p.add_term(Exponent(exps.begin(), exps.end()), Rational(num, den));
  }
  return p;
}

Json field_to_json(const VectorField& f) { return polys_to_json(f.coefficients()); }

VectorField field_from_json(const Json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(where, "expected " + std::to_string(n) + " coefficient polynomials");
  std::vector<Poly> coeffs;
  for (std::size_t k = 0; k < j.size(); ++k) coeffs.push_back(poly_from_json(j[k], n, at(where, k)));
  return VectorField(std::move(coeffs));
}

// ------------------------------------------------------------------ systems

VectorFieldSystem grushin_system(int k) {
  if (k < 1) throw InvalidArgument("Grushin exponent k must be ≥ 1");
  std::vector<VectorField> fields{VectorField::coordinate(2, 0),
                                  VectorField({Poly(2), Poly::variable(2, 0).pow(k)})};
  return VectorFieldSystem(k == 1 ? "grushin" : "grushin_k" + std::to_string(k), {1, k + 1}, std::move(fields));
}

VectorFieldSystem chain_system(int n) {
  if (n < 2) throw InvalidArgument("chain system needs n ≥ 2");
  std::vector<Poly> second(n, Poly(n));
  for (int i = 0; i + 1 < n; ++i) second[i + 1] = Poly::variable(n, i);
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = i + 1;
  return VectorFieldSystem("chain" + std::to_string(n), std::move(sigma),
                           {VectorField::coordinate(n, 0), VectorField(std::move(second))});
}

VectorFieldSystem system_from_json(const Json& j, const fs::path& base_dir, const ParamOverrides& overrides) {
  if (j.is_string()) {
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    return load_system(p, overrides);
  }
  const std::string root = "system";
  check_schema(j, root);
  try {
    if (j.contains("generator")) {
      const Json& g = j["generator"];
      if (!g.is_string()) throw ParseError(at(root, "generator"), "expected a string");
      std::map<std::string, int> params;
      if (j.contains("params")) {
        const Json& ps = j["params"];
        if (!ps.is_object()) throw ParseError(at(root, "params"), "expected an object");
        for (auto it = ps.begin(); it != ps.end(); ++it)
          params[it.key()] = get_int(it.value(), at(at(root, "params"), it.key()));
      }
      for (const auto& [k, v] : overrides) params[k] = v;
      auto param = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw ParseError(at(at(root, "params"), key), "missing generator parameter");
        return it->second;
      };
      const std::string name = g.get<std::string>();
      if (name == "grushin") return grushin_system(1);
      if (name == "grushin_k") return grushin_system(param("k"));
      if (name == "chain") return chain_system(param("n"));
      throw ParseError(at(root, "generator"), "unknown generator '" + name + "'");
    }
    if (!overrides.empty()) throw ParseError(root, "parameters given for a system without a generator");
    const int n = get_int(require(j, "n", root), at(root, "n"));
    if (n < 1) throw ParseError(at(root, "n"), "must be ≥ 1");
    auto sigma = get_ints(require(j, "sigma", root), at(root, "sigma"));
    if (static_cast<int>(sigma.size()) != n) throw ParseError(at(root, "sigma"), "length differs from n");
    const Json& fs_json = require(j, "fields", root);
    if (!fs_json.is_array()) throw ParseError(at(root, "fields"), "expected an array of fields");
    if (j.contains("m") && get_int(j["m"], at(root, "m")) != static_cast<int>(fs_json.size()))
      throw ParseError(at(root, "m"), "differs from the number of fields");
    std::vector<VectorField> fields;
    for (std::size_t i = 0; i < fs_json.size(); ++i)
      fields.push_back(field_from_json(fs_json[i], n, at(at(root, "fields"), i)));
    std::string name = "system";
    if (j.contains("name")) {
      if (!j["name"].is_string()) throw ParseError(at(root, "name"), "expected a string");
      name = j["name"].get<std::string>();
    }
    return VectorFieldSystem(std::move(name), std::move(sigma), std::move(fields));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(root, e.what());
  }
}

VectorFieldSystem load_system(const fs::path& path, const ParamOverrides& overrides) {
  try {
    return system_from_json(load_json(path), path.parent_path(), overrides);
  } catch (const ParseError& e) {
    if (e.where().rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + "#" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

Json system_to_json(const VectorFieldSystem& sys) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["name"] = sys.name();
  j["n"] = sys.n();
  j["m"] = sys.m();
  j["sigma"] = sys.sigma();
  Json fields = Json::array();
  for (const auto& f : sys.fields()) fields.push_back(field_to_json(f));
  j["fields"] = std::move(fields);
  return j;
}

CarnotGroupSpec lift_from_json(const Json& j, const fs::path& base_dir) {
  const std::string root = "lift";
  check_schema(j, root);
  VectorFieldSystem base = system_from_json(require(j, "base_system", root), base_dir);
  try {
    const int N = get_int(require(j, "N", root), at(root, "N"));
    auto tau = j.contains("tau") ? get_ints(j["tau"], at(root, "tau")) : std::vector<int>{};
    if (N != base.n() + static_cast<int>(tau.size()))
      throw ParseError(at(root, "N"), "N must equal n + len(tau)");
    const Json& law_json = require(j, "law", root);
    if (!law_json.is_array() || static_cast<int>(law_json.size()) != N)
      throw ParseError(at(root, "law"), "expected N polynomials in 2N variables");
    std::vector<Poly> law;
    for (std::size_t i = 0; i < law_json.size(); ++i) law.push_back(poly_from_json(law_json[i], 2 * N, at(at(root, "law"), i)));
    const Json& lf = require(j, "lifted_fields", root);
    if (!lf.is_array()) throw ParseError(at(root, "lifted_fields"), "expected an array of fields");
    std::vector<VectorField> fields;
    for (std::size_t i = 0; i < lf.size(); ++i) fields.push_back(field_from_json(lf[i], N, at(at(root, "lifted_fields"), i)));
    return CarnotGroupSpec(std::move(base), std::move(tau), std::move(law), std::move(fields));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(root, e.what());
  }
}

CarnotGroupSpec load_lift(const fs::path& path) {
  try {
    return lift_from_json(load_json(path), path.parent_path());
  } catch (const ParseError& e) {
    if (e.where().rfind(path.string(), 0) == 0) throw;
    throw ParseError(path.string() + "#" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

Json lift_to_json(const CarnotGroupSpec& spec) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["base_system"] = system_to_json(spec.base());
  j["N"] = spec.N();
  j["tau"] = spec.tau();
  j["law"] = polys_to_json(spec.law());
  Json fields = Json::array();
  for (const auto& f : spec.lifted_fields()) fields.push_back(field_to_json(f));
  j["lifted_fields"] = std::move(fields);
  return j;
}

// ------------------------------------------------------------------ reports

Json to_json(const QuadratureSettings& s) {
  Json j;
  j["scheme"] = to_string(s.scheme);
  j["resolution"] = s.resolution;
  j["seed"] = s.seed;
  j["target_error"] = number(s.target_error);
  j["max_resolution"] = s.max_resolution;
  return j;
}

QuadratureSettings quadrature_from_json(const Json& j, const std::string& where) {
  QuadratureSettings s;
  if (!j.is_object()) throw ParseError(where, "expected an object");
  if (j.contains("scheme")) {
    if (!j["scheme"].is_string()) throw ParseError(at(where, "scheme"), "expected a string");
    try {
      s.scheme = parse_scheme(j["scheme"].get<std::string>());
    } catch (const Error& e) {
      throw ParseError(at(where, "scheme"), e.what());
    }
  }
  if (j.contains("resolution")) {
    s.resolution = get_int(j["resolution"], at(where, "resolution"));
    if (s.resolution < 2) throw ParseError(at(where, "resolution"), "must be ≥ 2");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
      throw ParseError(at(where, "seed"), "expected an integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("target_error")) {
    if (!j["target_error"].is_number() || j["target_error"].get<double>() < 0)
      throw ParseError(at(where, "target_error"), "expected a nonnegative number");
    s.target_error = j["target_error"].get<double>();
  }
  if (j.contains("max_resolution")) {
    s.max_resolution = get_int(j["max_resolution"], at(where, "max_resolution"));
    if (s.max_resolution < 2) throw ParseError(at(where, "max_resolution"), "must be ≥ 2");
  }
  return s;
}

Json to_json(const Estimate& e) {
  Json j;
  j["value"] = number(e.value);
  j["coarse"] = number(e.coarse);
  j["error"] = number(e.error);
  return j;
}

Json to_json(const H1Certificate& c) {
  Json j;
  j["passed"] = c.passed;
  j["triangular"] = c.triangular;
  Json v = Json::array();
  for (const auto& x : c.violations) {
    Json e;
    e["field"] = x.field + 1;
    e["coordinate"] = x.coordinate + 1;
    e["monomial"] = x.monomial;
    e["weighted_degree"] = x.weighted_degree;
    e["expected_degree"] = x.expected_degree;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

Json to_json(const HormanderCertificate& c) {
  Json j;
  j["passed"] = c.passed;
  j["depth_bound"] = c.depth_bound;
  j["depth_used"] = c.depth_used;
  j["dimension"] = c.dimension;
  j["rank"] = c.rank;
  j["basis_words"] = words_to_json(c.basis_words);
  j["matrix_at_origin"] = matrix_to_json(c.matrix_at_origin);
  return j;
}

Json to_json(const PointRankResult& r) {
  Json j;
  j["nonsingular"] = r.nonsingular;
  j["determinant"] = rational_to_json(r.determinant);
  j["fallback_lambda"] = rational_to_json(r.fallback_lambda);
  j["fallback_determinant"] = rational_to_json(r.fallback_determinant);
  j["fallback_nonsingular"] = r.fallback_nonsingular;
  return j;
}

Json to_json(const IdentityCheck& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["detail"] = c.detail;
  j["residual"] = poly_strings(c.residual);
  return j;
}

Json to_json(const GroupCertificate& c) {
  Json j;
  j["passed"] = c.passed;
  Json checks = Json::array();
  for (const auto& x : c.checks) checks.push_back(to_json(x));
  j["checks"] = std::move(checks);
  if (c.inverse) {
    j["inverse"] = poly_strings(*c.inverse);
  } else {
    j["inverse"] = nullptr;
  }
  return j;
}

Json to_json(const LiftCertificate& c) {
  Json j;
  j["passed"] = c.passed;
  Json items = Json::array();
  for (const auto& x : c.items) items.push_back(to_json(x));
  j["items"] = std::move(items);
  j["generation"] = to_json(c.generation);
  return j;
}

Json to_json(const InclusionReport& r) {
  Json j;
  j["radius"] = number(r.radius);
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["lifted_hits"] = r.lifted_hits;
  j["product_hits"] = r.product_hits;
  j["outer_violations"] = r.outer_violations;
  j["inner_violations"] = r.inner_violations;
  j["passed"] = r.passed();
  Json ce = Json::array();
  for (const auto& x : r.counterexamples) ce.push_back(x);
  j["counterexamples"] = std::move(ce);
  return j;
}

Json to_json(const SandwichReport& r) {
  Json j;
  j["r"] = number(r.r);
  j["p"] = number(r.p);
  j["c1"] = number(r.c1);
  j["c2"] = number(r.c2);
  j["inner"] = to_json(r.inner);
  j["lifted"] = to_json(r.lifted);
  j["outer"] = to_json(r.outer);
  j["lower_holds"] = r.lower_holds;
  j["upper_holds"] = r.upper_holds;
  j["holds"] = r.holds();
  j["max_relative_error"] = number(r.max_relative_error);
  return j;
}

Json to_json(const SobolevReport& r) {
  Json j;
  j["p"] = number(r.p);
  j["k"] = r.k;
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    Json e;
    e["word"] = t.word;
    e["norm"] = to_json(t.norm);
    terms.push_back(std::move(e));
  }
  j["terms"] = std::move(terms);
  Json s = Json::array(), se = Json::array();
  for (double v : r.seminorms) s.push_back(number(v));
  for (double v : r.seminorm_errors) se.push_back(number(v));
  j["seminorms"] = std::move(s);
  j["seminorm_errors"] = std::move(se);
  j["total"] = number(r.total);
  j["total_error"] = number(r.total_error);
  j["max_relative_error"] = number(r.max_relative_error);
  j["flagged"] = r.flagged;
  return j;
}

Json to_json(const PhiReport& r) {
  Json j;
  j["value"] = number(r.value);
  j["argmax_sigma"] = number(r.argmax_sigma);
  j["sigma_grid"] = r.sigma_grid;
  Json t = Json::array();
  for (double v : r.terms) t.push_back(number(v));
  j["terms"] = std::move(t);
  j["max_relative_error"] = number(r.max_relative_error);
  return j;
}

Json to_json(const CutoffBound& b) {
  Json j;
  j["order"] = b.order;
  j["sup"] = number(b.sup);
  j["normalized"] = number(b.normalized);
  j["samples"] = b.samples;
  j["seed"] = b.seed;
  return j;
}

Json to_json(const InequalityReport& r) {
  Json j;
  j["id"] = r.id;
  j["p"] = number(r.p);
  j["k"] = r.k;
  j["eps_grid"] = r.eps_grid;
  j["R_grid"] = r.R_grid;
  Json c = Json::object();
  for (const auto& [k, v] : r.constants) c[k] = number(v);
  j["constants"] = std::move(c);
  j["max_relative_error"] = number(r.max_relative_error);
  j["quadrature_ok"] = r.quadrature_ok;
  j["passed"] = r.passed;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["inequality"] = row.inequality;
    e["function"] = row.function;
    e["index"] = row.index;
    e["R"] = number(row.R);
    e["epsilon"] = number(row.epsilon);
    e["lhs"] = number(row.lhs);
    e["second"] = number(row.second);
    e["zeroth"] = number(row.zeroth);
    e["ratio"] = number(row.ratio);
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string ratio_csv_header() { return "report,inequality,function,index,R,epsilon,lhs,second,zeroth,ratio\n"; }

std::string ratio_csv(const InequalityReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << ratio_csv_header();
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  };
  for (const auto& row : r.rows)
    out << r.id << ',' << row.inequality << ',' << quote(row.function) << ',' << row.index << ',' << row.R << ','
        << row.epsilon << ',' << row.lhs << ',' << row.second << ',' << row.zeroth << ',' << row.ratio << '\n';
  return out.str();
}

}  // namespace hvf
