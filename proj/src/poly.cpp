#include "hvf/poly.hpp"

#include "hvf/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace hvf {

Poly::Poly(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 0) throw DimensionError("negative variable count");
}

Poly Poly::constant(int n_vars, const Rational& c) {
  Poly p(n_vars);
  p.add_term(Exponent(n_vars, 0), c);
  return p;
}

Poly Poly::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars) throw DimensionError("variable index out of range");
  Exponent e(n_vars, 0);
  e[index] = 1;
  return monomial(std::move(e), 1);
}

Poly Poly::monomial(Exponent exponent, const Rational& c) {
  for (int a : exponent)
    if (a < 0) throw InvalidArgument("negative exponent");
  Poly p(static_cast<int>(exponent.size()));
  p.add_term(exponent, c);
  return p;
}

Rational Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Rational& c) {
  if (static_cast<int>(e.size()) != n_vars_) throw DimensionError("exponent length != n_vars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.n_vars_ != n_vars_) throw DimensionError("adding polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.n_vars_ != n_vars_) throw DimensionError("subtracting polynomials in different rings");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.n_vars_ != b.n_vars_) throw DimensionError("multiplying polynomials in different rings");
  Poly r(a.n_vars_);
  Exponent e(a.n_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.n_vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw InvalidArgument("negative polynomial power");
  Poly result = constant(n_vars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::derivative(int var) const {
  if (var < 0 || var >= n_vars_) throw DimensionError("derivative variable out of range");
  Poly r(n_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Poly Poly::substitute(std::span<const Poly> values) const {
  if (static_cast<int>(values.size()) != n_vars_)
    throw DimensionError("substitution needs one value per variable");
  const int target = values.empty() ? 0 : values.front().n_vars();
  for (const auto& v : values)
    if (v.n_vars() != target) throw DimensionError("substituted values live in different rings");
  // powers[i][k] = values[i]^k, grown on demand
  std::vector<std::vector<Poly>> powers(n_vars_);
  auto power = [&](int i, int k) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * values[i]);
    return cache[k];
  };
  Poly r(target);
  for (const auto& [e, c] : terms_) {
    Poly term = constant(target, c);
    for (int i = 0; i < n_vars_; ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    r += term;
  }
  return r;
}

Poly Poly::embed(int new_n_vars, std::span<const int> map) const {
  if (static_cast<int>(map.size()) != n_vars_) throw DimensionError("embedding map size");
  Poly r(new_n_vars);
  for (const auto& [e, c] : terms_) {
    Exponent d(new_n_vars, 0);
    for (int i = 0; i < n_vars_; ++i) {
      if (map[i] < 0 || map[i] >= new_n_vars) throw DimensionError("embedding target out of range");
      d[map[i]] += e[i];
    }
    r.add_term(d, c);
  }
  return r;
}

Poly Poly::embed(int new_n_vars, int offset) const {
  std::vector<int> map(n_vars_);
  std::iota(map.begin(), map.end(), offset);
  return embed(new_n_vars, map);
}

Rational Poly::evaluate(std::span<const Rational> x) const {
  if (static_cast<int>(x.size()) != n_vars_) throw DimensionError("evaluation point dimension");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < n_vars_; ++i)
      if (e[i] > 0) t *= hvf::pow(x[i], e[i]);
    sum += t;
  }
  return sum;
}

double Poly::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_vars_) throw DimensionError("evaluation point dimension");
  double sum = 0;
  for (const auto& [e, c] : terms_) {
    double t = to_double(c);
    for (int i = 0; i < n_vars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= x[i];
    sum += t;
  }
  return sum;
}

Rational Poly::constant_term() const { return coefficient(Exponent(n_vars_, 0)); }

std::set<int> Poly::weighted_degrees(std::span<const int> weights) const {
  if (static_cast<int>(weights.size()) != n_vars_)
    throw DimensionError("weight vector length != n_vars");
  std::set<int> out;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (int i = 0; i < n_vars_; ++i) d += weights[i] * e[i];
    out.insert(d);
  }
  return out;
}

bool Poly::depends_on(int var) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [var](const auto& t) { return t.first[var] != 0; });
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest exponents first reads more naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool is_const = std::all_of(e.begin(), e.end(), [](int a) { return a == 0; });
    bool wrote = false;
    if (mag != 1 || is_const) {
      os << hvf::to_string(mag);
      wrote = true;
    }
    for (int i = 0; i < n_vars_; ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::set<int> poly_weighted_degree(const Poly& p, std::span<const int> sigma) {
  if (std::any_of(sigma.begin(), sigma.end(), [](int s) { return s < 1; }))
    throw InvalidArgument("dilation exponents must be positive");
  return p.weighted_degrees(sigma);
}

Poly dilate(const Poly& p, std::span<const int> weights) {
  const int n = p.n_vars();
  if (static_cast<int>(weights.size()) != n) throw DimensionError("dilation weights length");
  Poly r(n + 1);
  for (const auto& [e, c] : p.terms()) {
    Exponent d(n + 1, 0);
    int lambda_power = 0;
    for (int i = 0; i < n; ++i) {
      d[i] = e[i];
      lambda_power += weights[i] * e[i];
    }
    d[n] = lambda_power;
    r.add_term(d, c);
  }
  return r;
}

Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Poly::constant(0, 1);
  for (const auto& row : m)
    if (row.size() != n) throw DimensionError("determinant of a non-square matrix");
  const int vars = m[0][0].n_vars();
  if (n == 1) return m[0][0];
  Poly det(vars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    minor.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      row.reserve(n - 1);
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * determinant(minor);
    if (j % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

namespace {

// Row-reduces in place; returns rank and accumulates the determinant sign/product.
int eliminate(std::vector<std::vector<Rational>>& m, Rational* det) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  Rational d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) {
      d = 0;
      continue;
    }
    if (pivot != r) {
      std::swap(m[pivot], m[r]);
      d = -d;
    }
    d *= m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    ++r;
  }
  if (det) *det = (r == rows && rows == cols) ? d : Rational(0);
  return static_cast<int>(r);
}

}  // namespace

int rank(std::vector<std::vector<Rational>> m) { return eliminate(m, nullptr); }

Rational determinant(std::vector<std::vector<Rational>> m) {
  for (const auto& row : m)
    if (row.size() != m.size()) throw DimensionError("determinant of a non-square matrix");
  if (m.empty()) return 1;
  Rational d;
  eliminate(m, &d);
  return d;
}

}  // namespace hvf
