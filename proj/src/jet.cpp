#include "hvf/jet.hpp"

#include <atomic>

#include <algorithm>
#include <map>
#include <mutex>

namespace hvf {

namespace {

void enumerate_degree(int n, int remaining, int var, Exponent& cur, std::vector<Exponent>& out) {
  if (var == n - 1) {
    cur[var] = remaining;
    out.push_back(cur);
    cur[var] = 0;
    return;
  }
  for (int a = remaining; a >= 0; --a) {
    cur[var] = a;
    enumerate_degree(n, remaining - a, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

JetLayout::JetLayout(int n_vars) : n_(n_vars) {
  if (n_vars < 1) throw DimensionError("jets need at least one variable");
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    Exponent cur(n_, 0);
    enumerate_degree(n_, d, 0, cur, indices_);
    counts_.push_back(indices_.size());
  }
  degrees_.resize(indices_.size());
  factorials_.resize(indices_.size());
  std::map<Exponent, int> lookup;
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    int deg = 0;
    double fact = 1;
    for (int a : indices_[i]) {
      deg += a;
      for (int k = 2; k <= a; ++k) fact *= k;
    }
    degrees_[i] = deg;
    factorials_[i] = fact;
    lookup.emplace(indices_[i], static_cast<int>(i));
  }
  raise_.assign(indices_.size() * n_, -1);
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (degrees_[i] >= kMaxJetOrder) continue;
    for (int v = 0; v < n_; ++v) {
      Exponent e = indices_[i];
      e[v] += 1;
      raise_[i * n_ + v] = lookup.at(e);
    }
  }
}

std::span<const JetLayout::Product> JetLayout::products(int order) const {
  if (order < 0 || order > kMaxJetOrder) throw InvalidArgument("jet order out of range");
  std::call_once(products_once_[order], [this, order] {
    auto& table = products_[order];
    for (std::size_t a = 0; a < counts_[order]; ++a) {
      for (std::size_t b = 0; b < counts_[order - degrees_[a]]; ++b) {
        int out = static_cast<int>(a);
        // walk up from a by the exponents of b
        for (int v = 0; v < n_; ++v)
          for (int k = 0; k < indices_[b][v]; ++k) out = raise_[out * n_ + v];
        table.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                         static_cast<std::uint16_t>(out)});
      }
    }
  });
  return products_[order];
}

const JetLayout& JetLayout::get(int n_vars) {
  // lock-free lookup once a layout exists; layouts live for the whole program
  static std::array<std::atomic<const JetLayout*>, 64> fast{};
  if (n_vars > 0 && n_vars < static_cast<int>(fast.size())) {
    if (const JetLayout* l = fast[n_vars].load(std::memory_order_acquire)) return *l;
  }
  static std::mutex mu;
  static std::map<int, std::unique_ptr<JetLayout>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n_vars];
  if (!slot) slot.reset(new JetLayout(n_vars));
  if (n_vars > 0 && n_vars < static_cast<int>(fast.size())) fast[n_vars].store(slot.get(), std::memory_order_release);
  return *slot;
}

int JetLayout::index_of(const Exponent& alpha) const {
  if (static_cast<int>(alpha.size()) != n_) throw DimensionError("multi-index length");
  int deg = 0;
  for (int a : alpha) deg += a;
  if (deg > kMaxJetOrder) return -1;
  auto begin = indices_.begin() + (deg == 0 ? 0 : static_cast<long>(counts_[deg - 1]));
  auto end = indices_.begin() + static_cast<long>(counts_[deg]);
  // within a degree, indices are sorted descending lexicographically
  auto it = std::lower_bound(begin, end, alpha, [](const Exponent& a, const Exponent& b) { return a > b; });
  if (it == end || *it != alpha) return -1;
  return static_cast<int>(it - indices_.begin());
}

template <class T>
Jet<T>::Jet(int n_vars, int order) : layout_(&JetLayout::get(n_vars)), order_(order) {
  if (order < 0 || order > kMaxJetOrder) throw InvalidArgument("jet order out of range");
  c_.assign(layout_->count(order), T(0));
}

template <class T>
Jet<T> Jet<T>::constant(int n_vars, int order, const T& value) {
  Jet j(n_vars, order);
  j.c_[0] = value;
  return j;
}

template <class T>
Jet<T> Jet<T>::variable(int n_vars, int order, int var, const T& x0) {
  if (var < 0 || var >= n_vars) throw DimensionError("jet variable out of range");
  Jet j = constant(n_vars, order, x0);
  if (order >= 1) j.c_[1 + var] = T(1);
  return j;
}

template <class T>
T Jet<T>::coeff(const Exponent& alpha) const {
  int i = layout_->index_of(alpha);
  if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) throw InvalidArgument("multi-index beyond jet order");
  return c_[i];
}

template <class T>
T Jet<T>::partial(const Exponent& alpha) const {
  int i = layout_->index_of(alpha);
  if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) throw InvalidArgument("multi-index beyond jet order");
  T f(1);
  for (int a : alpha)
    for (int k = 2; k <= a; ++k) f *= T(k);
  return c_[i] * f;
}

template <class T>
Jet<T> Jet<T>::truncated(int order) const {
  if (order > order_) throw InvalidArgument("cannot raise jet order by truncation");
  Jet r = *this;
  r.order_ = order;
  r.c_.resize(layout_->count(order));
  return r;
}

template <class T>
Jet<T> Jet<T>::derivative(int var) const {
  if (order_ == 0) throw InvalidArgument("derivative of an order-0 jet");
  if (var < 0 || var >= n_vars()) throw DimensionError("derivative variable out of range");
  Jet r(n_vars(), order_ - 1);
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    int up = layout_->raise(i, var);
    int a = layout_->multi_index(up)[var];
    r.c_[i] = c_[up] * T(a);
  }
  return r;
}

template <class T>
Jet<T>& Jet<T>::operator+=(const Jet& o) {
  if (o.n_vars() != n_vars()) throw DimensionError("jet variable count mismatch");
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

template <class T>
Jet<T>& Jet<T>::operator-=(const Jet& o) {
  if (o.n_vars() != n_vars()) throw DimensionError("jet variable count mismatch");
  if (o.order_ < order_) *this = truncated(o.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

template <class T>
Jet<T>& Jet<T>::operator*=(const T& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

template <class T>
Jet<T> Jet<T>::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

template <class T>
Jet<T> Jet<T>::multiply(const Jet& a, const Jet& b) {
  if (a.n_vars() != b.n_vars()) throw DimensionError("jet variable count mismatch");
  const int order = std::min(a.order_, b.order_);
  Jet r(a.n_vars(), order);
  for (const auto& p : a.layout_->products(order)) {
    if (a.c_[p.a] == 0 || b.c_[p.b] == 0) continue;
    r.c_[p.out] += a.c_[p.a] * b.c_[p.b];
  }
  return r;
}

template <class T>
Jet<T> Jet<T>::compose(std::span<const T> derivatives) const {
  if (static_cast<int>(derivatives.size()) < order_ + 1)
    throw InvalidArgument("compose needs derivatives up to the jet order");
  Jet delta = *this;
  delta.c_[0] = T(0);
  // Horner in δ with coefficients f^(j)/j!
  std::vector<T> coef(order_ + 1);
  T fact(1);
  for (int j = 0; j <= order_; ++j) {
    if (j > 1) fact *= T(j);
    coef[j] = derivatives[j] / fact;
  }
  Jet r = constant(n_vars(), order_, coef[order_]);
  for (int j = order_ - 1; j >= 0; --j) {
    r = multiply(r, delta);
    r.c_[0] += coef[j];
  }
  return r;
}

template <class T>
Jet<T> Jet<T>::reciprocal() const {
  const T g0 = c_[0];
  if (g0 == 0) throw NonSmoothPointError("reciprocal of a jet with zero value");
  std::vector<T> d(order_ + 1);
  // (1/g)^(j) = (-1)^j j! / g^{j+1}
  T inv = T(1) / g0;
  T power = inv;
  T fact(1);
  for (int j = 0; j <= order_; ++j) {
    if (j > 1) fact *= T(j);
    d[j] = (j % 2 == 0 ? fact : T(-fact)) * power;
    power *= inv;
  }
  return compose(d);
}

template <class T>
Jet<T> Jet<T>::pow(int e) const {
  if (e < 0) return reciprocal().pow(-e);
  Jet result = constant(n_vars(), order_, T(1));
  Jet base = *this;
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

template <class T>
Jet<T> evaluate_on_jets(const Poly& p, std::span<const Jet<T>> vars) {
  if (static_cast<int>(vars.size()) != p.n_vars()) throw DimensionError("one jet per variable required");
  if (vars.empty()) throw DimensionError("polynomial without variables");
  const int n = vars.front().n_vars();
  int order = kMaxJetOrder;
  for (const auto& v : vars) order = std::min(order, v.order());
  std::vector<std::vector<Jet<T>>> powers(vars.size());
  auto power = [&](std::size_t i, int k) -> const Jet<T>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Jet<T>::constant(n, order, T(1)));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * vars[i]);
    return cache[k];
  };
  Jet<T> sum(n, order);
  for (const auto& [e, c] : p.terms()) {
    T coef;
    if constexpr (std::is_same_v<T, double>) {
      coef = to_double(c);
    } else {
      coef = c;
    }
    Jet<T> term = Jet<T>::constant(n, order, coef);
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    sum += term;
  }
  return sum;
}

template <class T>
std::vector<Jet<T>> point_jets(std::span<const T> x0, int order) {
  std::vector<Jet<T>> out;
  const int n = static_cast<int>(x0.size());
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(Jet<T>::variable(n, order, i, x0[i]));
  return out;
}

template class Jet<double>;
template class Jet<Rational>;
template Jet<double> evaluate_on_jets(const Poly&, std::span<const Jet<double>>);
template Jet<Rational> evaluate_on_jets(const Poly&, std::span<const Jet<Rational>>);
template std::vector<Jet<double>> point_jets(std::span<const double>, int);
template std::vector<Jet<Rational>> point_jets(std::span<const Rational>, int);

}  // namespace hvf
