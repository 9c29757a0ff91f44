#include "doctest.h"
#include "support.hpp"

#include "hvf/errors.hpp"
#include "hvf/io.hpp"

#include <fstream>
#include <sstream>

using namespace hvf;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "hvf_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("rationals round trip") {
  for (const Rational& r : {Rational(0), Rational(-7), Rational(3, 8), Rational(-22, 7)})
    CHECK(rational_from_json(rational_to_json(r), "r") == r);
  CHECK(rational_from_json(Json(5), "r") == Rational(5));
  CHECK(rational_from_json(Json("1/3"), "r") == Rational(1, 3));
  CHECK_THROWS_AS(rational_from_json(Json::array(), "r"), ParseError);
}

TEST_CASE("polynomials and fields round trip") {
  Poly p = Poly::monomial({2, 1}, Rational(-3, 4)) + Poly::constant(2, 5) + Poly::variable(2, 1);
  // a coefficient that overflows int64
  p.add_term({0, 3}, parse_rational("123456789012345678901234567890/7"));
  CHECK(poly_from_json(poly_to_json(p), 2, "p") == p);
  const VectorField f({p, Poly::variable(2, 0)});
  CHECK(field_from_json(field_to_json(f), 2, "f") == f);
}

TEST_CASE("polynomial parse errors name the offending entry") {
  const Json bad = Json::parse(R"([[[1, 0, 0], 1, 1]])");
  try {
    poly_from_json(bad, 2, "fields/0/1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().find("fields/0/1") == 0);
  }
  CHECK_THROWS_AS(poly_from_json(Json::parse(R"([[[1, 0], 1, 0]])"), 2, "p"), ParseError);
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_json_text("{\n  \"a\": 1,\n  oops\n}", "spec.json");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.where().rfind("spec.json:3:", 0) == 0);
  }
}

TEST_CASE("explicit and generated systems") {
  const auto g = load_system(testing::fixture("grushin.json"));
  CHECK(g.sigma() == std::vector<int>{1, 2});
  CHECK(g.fields() == grushin_system(1).fields());
  const auto c = load_system(testing::fixture("chain.json"));
  CHECK(c.n() == 4);
  CHECK(c.q() == 10);
  const auto k3 = load_system(testing::fixture("grushin_k.json"), {{"k", 3}});
  CHECK(k3.sigma() == std::vector<int>{1, 4});
  CHECK_THROWS_AS(load_system(testing::fixture("grushin.json"), {{"k", 3}}), ParseError);
  CHECK_THROWS_AS(load_system(testing::fixture("missing.json")), ParseError);
}

TEST_CASE("system json round trip") {
  for (const auto& sys : {grushin_system(2), chain_system(3)}) {
    const auto back = system_from_json(system_to_json(sys));
    CHECK(back.sigma() == sys.sigma());
    CHECK(back.fields() == sys.fields());
    CHECK(back.name() == sys.name());
  }
}

TEST_CASE("system spec errors") {
  auto bad = Json::parse(R"({"schema": 1, "n": 2, "m": 1, "sigma": [1], "fields": [[[], []]]})");
  CHECK_THROWS_AS(system_from_json(bad), ParseError);
  bad = Json::parse(R"({"schema": 2, "generator": "chain", "params": {"n": 3}})");
  CHECK_THROWS_AS(system_from_json(bad), ParseError);
  bad = Json::parse(R"({"generator": "spiral"})");
  CHECK_THROWS_AS(system_from_json(bad), ParseError);
}

TEST_CASE("lift json round trip") {
  const auto spec = load_lift(testing::fixture("grushin2_lift.json"));
  const auto back = lift_from_json(lift_to_json(spec));
  CHECK(back.law() == spec.law());
  CHECK(back.lifted_fields() == spec.lifted_fields());
  CHECK(back.tau() == spec.tau());
  CHECK(back.base().fields() == spec.base().fields());
}

TEST_CASE("numbers and quadrature settings") {
  CHECK(number(std::numeric_limits<double>::infinity()) == Json("inf"));
  CHECK(number(-std::numeric_limits<double>::infinity()) == Json("-inf"));
  CHECK(number(0.5) == Json(0.5));
  QuadratureSettings q;
  q.scheme = QuadratureScheme::Masked;
  q.resolution = 9;
  q.seed = 77;
  q.target_error = 1e-4;
  q.max_resolution = 64;
  const auto back = quadrature_from_json(to_json(q), "q");
  CHECK(back.scheme == q.scheme);
  CHECK(back.resolution == 9);
  CHECK(back.seed == 77);
  CHECK(back.target_error == 1e-4);
  CHECK(back.max_resolution == 64);
}

TEST_CASE("atomic writes replace the file and leave no temporaries") {
  const fs::path dir = scratch_dir() / "atomic";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path target = dir / "report.json";
  write_atomic(target, "first\n");
  write_atomic(target, "second\n");
  CHECK(slurp(target) == "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("dump is stable") {
  Json j;
  j["schema"] = 1;
  j["b"] = 2;
  j["a"] = Json::array({1, 2});
  CHECK(dump(j) == dump(parse_json_text(dump(j), "x")));
  CHECK(dump(j).back() == '\n');
  CHECK(dump(j).find("\"schema\"") < dump(j).find("\"b\""));
}

}  // TEST_SUITE
