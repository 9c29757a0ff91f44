#include "hvf/vector_field.hpp"

#include "hvf/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hvf {

VectorField::VectorField(std::vector<Poly> coefficients) : coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_)
    if (c.n_vars() != dim()) throw DimensionError("coefficient ring must have one variable per coordinate");
}

VectorField VectorField::zero(int dim) { return VectorField(std::vector<Poly>(dim, Poly(dim))); }

VectorField VectorField::coordinate(int dim, int k) {
  VectorField f = zero(dim);
  f.coeffs_.at(k) = Poly::constant(dim, 1);
  return f;
}

bool VectorField::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Poly& p) { return p.is_zero(); });
}

Poly VectorField::apply(const Poly& p) const {
  if (p.n_vars() != dim()) throw DimensionError("field and polynomial dimensions differ");
  Poly r(dim());
  for (int k = 0; k < dim(); ++k)
    if (!coeffs_[k].is_zero()) r += coeffs_[k] * p.derivative(k);
  return r;
}

template <class T>
Jet<T> VectorField::apply(const Jet<T>& u, std::span<const Jet<T>> coefficient_jets) const {
  if (u.n_vars() != dim() || static_cast<int>(coefficient_jets.size()) != dim())
    throw DimensionError("field and jet dimensions differ");
  Jet<T> r(dim(), u.order() - 1);
  for (int k = 0; k < dim(); ++k)
    if (!coeffs_[k].is_zero()) r += coefficient_jets[k] * u.derivative(k);
  return r;
}

template Jet<double> VectorField::apply(const Jet<double>&, std::span<const Jet<double>>) const;
template Jet<Rational> VectorField::apply(const Jet<Rational>&, std::span<const Jet<Rational>>) const;

std::vector<Rational> VectorField::evaluate(std::span<const Rational> x) const {
  std::vector<Rational> v;
  for (const auto& c : coeffs_) v.push_back(c.evaluate(x));
  return v;
}

std::vector<double> VectorField::evaluate(std::span<const double> x) const {
  std::vector<double> v;
  for (const auto& c : coeffs_) v.push_back(c.evaluate(x));
  return v;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  if (o.dim() != dim()) throw DimensionError("adding fields of different dimension");
  for (int k = 0; k < dim(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  if (o.dim() != dim()) throw DimensionError("subtracting fields of different dimension");
  for (int k = 0; k < dim(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

VectorField operator*(const Rational& c, VectorField a) {
  for (auto& p : a.coeffs_) p *= c;
  return a;
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < dim(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[k].to_string() << ")*d" << (k + 1);
  }
  if (first) os << "0";
  return os.str();
}

VectorField lie_bracket(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw DimensionError("bracket of fields of different dimension");
  std::vector<Poly> out;
  out.reserve(a.dim());
  for (int k = 0; k < a.dim(); ++k) out.push_back(a.apply(b[k]) - b.apply(a[k]));
  return VectorField(std::move(out));
}

MultiIndex::MultiIndex(std::vector<int> word) : word_(std::move(word)) {
  if (word_.empty()) throw InvalidArgument("multi-index must be nonempty");
  for (int i : word_)
    if (i < 0) throw InvalidArgument("multi-index entries must be nonnegative");
}

MultiIndex MultiIndex::one_based(std::span<const int> word) {
  std::vector<int> w;
  for (int i : word) {
    if (i < 1) throw InvalidArgument("1-based multi-index entries must be ≥ 1");
    w.push_back(i - 1);
  }
  return MultiIndex(std::move(w));
}

std::vector<int> MultiIndex::one_based() const {
  std::vector<int> w;
  for (int i : word_) w.push_back(i + 1);
  return w;
}

void MultiIndex::validate(int m) const {
  for (int i : word_)
    if (i >= m) throw InvalidArgument("multi-index entry " + std::to_string(i + 1) + " exceeds m=" + std::to_string(m));
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(word_[i] + 1);
  }
  return s + ")";
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  if (a.word_.size() != b.word_.size()) return a.word_.size() < b.word_.size();
  return a.word_ < b.word_;
}

std::vector<MultiIndex> enumerate_words(int m, int max_len) {
  std::vector<MultiIndex> out;
  std::vector<std::vector<int>> level{{}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : level) {
      for (int i = 0; i < m; ++i) {
        auto v = w;
        v.push_back(i);
        next.push_back(std::move(v));
      }
    }
    for (const auto& w : next) out.emplace_back(w);
    level = std::move(next);
  }
  return out;
}

int operator_rank(std::span<const VectorField> fields) {
  if (fields.empty()) return 0;
  // columns: (coordinate, monomial) pairs appearing anywhere
  std::map<std::pair<int, Exponent>, std::size_t> columns;
  for (const auto& f : fields)
    for (int k = 0; k < f.dim(); ++k)
      for (const auto& [e, c] : f[k].terms()) columns.try_emplace({k, e}, columns.size());
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : fields) {
    std::vector<Rational> row(columns.size(), Rational(0));
    for (int k = 0; k < f.dim(); ++k)
      for (const auto& [e, c] : f[k].terms()) row[columns.at({k, e})] = c;
    rows.push_back(std::move(row));
  }
  if (columns.empty()) return 0;
  return rank(std::move(rows));
}

VectorFieldSystem::VectorFieldSystem(std::string name, std::vector<int> sigma, std::vector<VectorField> fields)
    : name_(std::move(name)), sigma_(std::move(sigma)), fields_(std::move(fields)) {
  if (sigma_.empty()) throw InvalidArgument("system needs at least one coordinate");
  if (sigma_.front() != 1) throw InvalidArgument("σ_1 must equal 1");
  for (std::size_t i = 1; i < sigma_.size(); ++i)
    if (sigma_[i] < sigma_[i - 1]) throw InvalidArgument("exponents must satisfy σ_1 ≤ σ_2 ≤ … ≤ σ_n");
  if (fields_.empty()) throw InvalidArgument("system needs at least one field");
  for (const auto& f : fields_)
    if (f.dim() != n()) throw DimensionError("every field needs n coefficient polynomials in n variables");
  if (operator_rank(fields_) != m()) throw InvalidArgument("fields are linearly dependent over the rationals");
  for (int s : sigma_) q_ += s;
}

H1Certificate check_h1(const VectorFieldSystem& sys) {
  H1Certificate cert;
  cert.passed = true;
  cert.triangular = true;
  const auto& sigma = sys.sigma();
  for (int j = 0; j < sys.m(); ++j) {
    for (int k = 0; k < sys.n(); ++k) {
      const Poly& b = sys.field(j)[k];
      const int expected = sigma[k] - 1;
      for (const auto& [e, c] : b.terms()) {
        int d = 0;
        for (int i = 0; i < sys.n(); ++i) {
          d += sigma[i] * e[i];
          if (e[i] > 0 && sigma[i] > sigma[k] - 1) cert.triangular = false;
        }
        if (d != expected) {
          cert.passed = false;
          cert.violations.push_back({j, k, e, d, expected});
        }
      }
    }
  }
  return cert;
}

VectorField nested_bracket(std::span<const VectorField> fields, const MultiIndex& word) {
  word.validate(static_cast<int>(fields.size()));
  VectorField acc = fields[word[0]];
  for (std::size_t i = 1; i < word.size(); ++i) acc = lie_bracket(acc, fields[word[i]]);
  return acc;
}

VectorField nested_bracket(const VectorFieldSystem& sys, const MultiIndex& word) {
  return nested_bracket(std::span<const VectorField>(sys.fields()), word);
}

std::vector<std::pair<MultiIndex, VectorField>> all_nested_brackets(std::span<const VectorField> fields,
                                                                     int max_len) {
  std::vector<std::pair<MultiIndex, VectorField>> out;
  std::vector<std::pair<std::vector<int>, VectorField>> level;
  const int m = static_cast<int>(fields.size());
  for (int i = 0; i < m; ++i) level.emplace_back(std::vector<int>{i}, fields[i]);
  for (int len = 1; len <= max_len; ++len) {
    for (const auto& [w, f] : level) out.emplace_back(MultiIndex(w), f);
    if (len == max_len) break;
    std::vector<std::pair<std::vector<int>, VectorField>> next;
    for (const auto& [w, f] : level) {
      for (int i = 0; i < m; ++i) {
        auto v = w;
        v.push_back(i);
        // brackets of a zero field stay zero
        next.emplace_back(std::move(v), f.is_zero() ? f : lie_bracket(f, fields[i]));
      }
    }
    level = std::move(next);
  }
  return out;
}

std::vector<Poly> bracket_homogeneity_residual(const VectorField& bracket, int length, std::span<const int> sigma) {
  const int n = bracket.dim();
  if (static_cast<int>(sigma.size()) != n) throw DimensionError("sigma length differs from field dimension");
  std::vector<Poly> residual;
  Poly lambda = Poly::variable(n + 1, n);
  for (int k = 0; k < n; ++k) {
    // λ^{|I|} Y_k(δ_λ x) − λ^{σ_k} Y_k(x)
    Poly lhs = lambda.pow(length) * dilate(bracket[k], sigma);
    Poly rhs = lambda.pow(sigma[k]) * bracket[k].embed(n + 1);
    residual.push_back(lhs - rhs);
  }
  return residual;
}

Rational apply_operator(const VectorFieldSystem& sys, const MultiIndex& word, const Poly& u,
                        std::span<const Rational> x) {
  word.validate(sys.m());
  Poly acc = u;
  for (std::size_t i = word.size(); i-- > 0;) acc = sys.field(word[i]).apply(acc);
  return acc.evaluate(x);
}

template <class T>
WordJets<T> word_jets(std::span<const VectorField> fields, const Jet<T>& u, std::span<const T> x, int max_len) {
  if (max_len > u.order()) throw InvalidArgument("jet order too small for the requested word length");
  const int n = u.n_vars();
  auto base = point_jets<T>(x, u.order());
  // coefficient jets per field
  std::vector<std::vector<Jet<T>>> coeff_jets;
  for (const auto& f : fields) {
    std::vector<Jet<T>> cj;
    for (int k = 0; k < n; ++k) cj.push_back(evaluate_on_jets<T>(f[k], base));
    coeff_jets.push_back(std::move(cj));
  }
  WordJets<T> out;
  out.by_length.resize(max_len + 1);
  out.by_length[0].emplace_back(MultiIndex{}, u);
  // X_I u = X_{i1}(X_{(i2..ik)} u): prepend letters
  std::vector<std::pair<std::vector<int>, Jet<T>>> level{{{}, u}};
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::pair<std::vector<int>, Jet<T>>> next;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      for (const auto& [w, j] : level) {
        std::vector<int> v{static_cast<int>(i)};
        v.insert(v.end(), w.begin(), w.end());
        next.emplace_back(std::move(v), fields[i].apply(j, std::span<const Jet<T>>(coeff_jets[i])));
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    level = std::move(next);
    for (const auto& [w, j] : level) out.by_length[len].emplace_back(MultiIndex(w), j);
  }
  return out;
}

template WordJets<double> word_jets(std::span<const VectorField>, const Jet<double>&, std::span<const double>, int);
template WordJets<Rational> word_jets(std::span<const VectorField>, const Jet<Rational>&, std::span<const Rational>,
                                      int);

namespace {

template <class T>
T apply_via_jets(const VectorFieldSystem& sys, const MultiIndex& word, const Jet<T>& u, std::span<const T> x) {
  const int n = sys.n();
  auto base = point_jets<T>(x, u.order());
  Jet<T> acc = u;
  for (std::size_t i = word.size(); i-- > 0;) {
    const VectorField& f = sys.field(word[i]);
    std::vector<Jet<T>> cj;
    for (int k = 0; k < n; ++k) cj.push_back(evaluate_on_jets<T>(f[k], base).truncated(acc.order()));
    acc = f.apply(acc, std::span<const Jet<T>>(cj));
  }
  return acc.value();
}

}  // namespace

double apply_operator(const VectorFieldSystem& sys, const MultiIndex& word, const ScalarField& u,
                      std::span<const double> x) {
  word.validate(sys.m());
  if (u.n_vars() != sys.n()) throw DimensionError("scalar field dimension differs from system");
  return apply_via_jets<double>(sys, word, u.jet(x, static_cast<int>(word.size())), x);
}

Rational apply_operator(const VectorFieldSystem& sys, const MultiIndex& word, const ScalarField& u,
                        std::span<const Rational> x) {
  word.validate(sys.m());
  if (u.n_vars() != sys.n()) throw DimensionError("scalar field dimension differs from system");
  return apply_via_jets<Rational>(sys, word, u.jet(x, static_cast<int>(word.size())), x);
}

Poly divergence(const VectorField& f) {
  Poly d(f.dim());
  for (int k = 0; k < f.dim(); ++k) d += f[k].derivative(k);
  return d;
}

}  // namespace hvf
