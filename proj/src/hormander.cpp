#include "hvf/hormander.hpp"

#include "hvf/errors.hpp"

namespace hvf {

HormanderCertificate check_rank_at_origin(std::span<const VectorField> fields, int max_depth) {
  if (max_depth < 1) throw InvalidArgument("max_depth must be ≥ 1");
  if (fields.empty()) throw InvalidArgument("no fields");
  const int n = fields.front().dim();
  HormanderCertificate cert;
  cert.depth_bound = max_depth;
  cert.dimension = n;
  std::vector<Rational> zero(n, Rational(0));
  std::vector<std::vector<Rational>> rows;  // selected columns, stored as rows
  for (const auto& [word, field] : all_nested_brackets(fields, max_depth)) {
    if (cert.rank == n) break;
    std::vector<Rational> value = field.evaluate(std::span<const Rational>(zero));
    rows.push_back(value);
    int r = rank(rows);
    if (r > cert.rank) {
      cert.rank = r;
      cert.basis_words.push_back(word);
      cert.depth_used = static_cast<int>(word.size());
    } else {
      rows.pop_back();
    }
  }
  cert.passed = cert.rank == n;
  cert.matrix_at_origin.assign(n, std::vector<Rational>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j)
    for (int i = 0; i < n; ++i) cert.matrix_at_origin[i][j] = rows[j][i];
  return cert;
}

HormanderCertificate check_rank_at_origin(const VectorFieldSystem& sys, int max_depth) {
  return check_rank_at_origin(std::span<const VectorField>(sys.fields()), max_depth);
}

HormanderCertificate check_rank_at_origin(const VectorFieldSystem& sys) {
  return check_rank_at_origin(sys, sys.sigma().back());
}

std::vector<std::vector<Rational>> bracket_matrix(const VectorFieldSystem& sys, std::span<const MultiIndex> words,
                                                  std::span<const Rational> x) {
  if (static_cast<int>(x.size()) != sys.n()) throw DimensionError("point dimension differs from system");
  std::vector<std::vector<Rational>> m(sys.n(), std::vector<Rational>(words.size()));
  for (std::size_t j = 0; j < words.size(); ++j) {
    auto col = nested_bracket(sys, words[j]).evaluate(x);
    for (int i = 0; i < sys.n(); ++i) m[i][j] = col[i];
  }
  return m;
}

PointRankResult check_words_at_point(const VectorFieldSystem& sys, std::span<const MultiIndex> words,
                                     std::span<const Rational> x) {
  if (static_cast<int>(words.size()) != sys.n()) throw InvalidArgument("need exactly n words");
  PointRankResult r;
  r.determinant = determinant(bracket_matrix(sys, words, x));
  r.nonsingular = r.determinant != 0;
  // δ_λ x for small λ lies near the origin; det M rescales by a power of λ there
  r.fallback_lambda = Rational(1, 1024);
  std::vector<Rational> scaled(x.begin(), x.end());
  for (int i = 0; i < sys.n(); ++i) scaled[i] *= pow(r.fallback_lambda, sys.sigma()[i]);
  Rational scaled_det = determinant(bracket_matrix(sys, words, scaled));
  r.fallback_determinant = scaled_det;
  r.fallback_nonsingular = scaled_det != 0;
  return r;
}

PointRankResult check_rank_at_point(const HormanderCertificate& cert, const VectorFieldSystem& sys,
                                    std::span<const Rational> x) {
  if (!cert.passed) throw InvalidArgument("certificate did not pass");
  return check_words_at_point(sys, cert.basis_words, x);
}

std::optional<int> minimal_depth(const VectorFieldSystem& sys, int max_depth) {
  auto cert = check_rank_at_origin(sys, max_depth);
  if (!cert.passed) return std::nullopt;
  return cert.depth_used;
}

Poly determinant_along_dilation(const VectorFieldSystem& sys, std::span<const MultiIndex> words,
                                std::span<const Rational> x) {
  const int n = sys.n();
  if (static_cast<int>(x.size()) != n) throw DimensionError("point dimension differs from system");
  // coordinates of δ_λ x as polynomials in λ
  std::vector<Poly> point;
  for (int i = 0; i < n; ++i) {
    Exponent e{sys.sigma()[i]};
    point.push_back(Poly::monomial(e, x[i]));
  }
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(words.size(), Poly(1)));
  for (std::size_t j = 0; j < words.size(); ++j) {
    VectorField f = nested_bracket(sys, words[j]);
    for (int i = 0; i < n; ++i) m[i][j] = f[i].substitute(point);
  }
  return determinant(m);
}

}  // namespace hvf
