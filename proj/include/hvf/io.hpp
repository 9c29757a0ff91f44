#pragma once

#include "hvf/analysis.hpp"
#include "hvf/hormander.hpp"
#include "hvf/lifting.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace hvf {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Parses JSON text; syntax errors become ParseError naming line and column.
Json parse_json_text(std::string_view text, const std::string& source);
Json load_json(const std::filesystem::path& path);
/// Two-space indented, trailing newline. Key order is insertion order.
std::string dump(const Json& j);
/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Finite doubles as numbers; ±inf and NaN as the strings "inf", "-inf", "nan".
Json number(double x);
Json rational_to_json(const Rational& r);  // "p/q" or "p"
Rational rational_from_json(const Json& j, const std::string& where);

/// Sparse monomial list [[exponents], numerator, denominator].
Json poly_to_json(const Poly& p);
Poly poly_from_json(const Json& j, int n_vars, const std::string& where);
Json field_to_json(const VectorField& f);
VectorField field_from_json(const Json& j, int n, const std::string& where);

// ------------------------------------------------------------------ systems

/// X_1 = ∂_1, X_2 = x_1^k ∂_2 with σ = (1, k+1).
VectorFieldSystem grushin_system(int k = 1);
/// X_1 = ∂_1, X_2 = Σ_{i<n} x_i ∂_{i+1} with σ = (1, 2, …, n).
VectorFieldSystem chain_system(int n);

/// Generator parameters overriding those in a spec file (e.g. {"k": 3}).
using ParamOverrides = std::map<std::string, int>;

/// Explicit {name, n, m, sigma, fields} or {generator, params}; a string is a
/// path resolved against `base_dir`.
VectorFieldSystem system_from_json(const Json& j, const std::filesystem::path& base_dir = {},
                                   const ParamOverrides& overrides = {});
VectorFieldSystem load_system(const std::filesystem::path& path, const ParamOverrides& overrides = {});
Json system_to_json(const VectorFieldSystem& sys);

/// {base_system, N, tau, law, lifted_fields}.
CarnotGroupSpec lift_from_json(const Json& j, const std::filesystem::path& base_dir = {});
CarnotGroupSpec load_lift(const std::filesystem::path& path);
Json lift_to_json(const CarnotGroupSpec& spec);

// ------------------------------------------------------------------ reports

Json to_json(const QuadratureSettings& s);
Json to_json(const Estimate& e);
Json to_json(const H1Certificate& c);
Json to_json(const HormanderCertificate& c);
Json to_json(const PointRankResult& r);
Json to_json(const IdentityCheck& c);
Json to_json(const GroupCertificate& c);
Json to_json(const LiftCertificate& c);
Json to_json(const InclusionReport& r);
Json to_json(const SandwichReport& r);
Json to_json(const SobolevReport& r);
Json to_json(const PhiReport& r);
Json to_json(const CutoffBound& b);
Json to_json(const InequalityReport& r);

QuadratureSettings quadrature_from_json(const Json& j, const std::string& where);

/// One line per ratio row, with a header.
std::string ratio_csv(const InequalityReport& r);
std::string ratio_csv_header();

}  // namespace hvf
