#include "hvf/scalar_field.hpp"

#include "hvf/errors.hpp"
#include "hvf/homnorm_root.hpp"
#include "hvf/profile.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace hvf {

using Node = ScalarField::Node;
using Kind = ScalarField::Kind;
using NodePtr = std::shared_ptr<const Node>;

namespace {

NodePtr make(Kind kind, std::vector<NodePtr> children = {}) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

NodePtr make_constant(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->constant = c;
  n->approx = to_double(c);
  return n;
}

NodePtr make_variable(int index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->index = index;
  return n;
}

void check_ring(const ScalarField& a, const ScalarField& b) {
  if (a.n_vars() != b.n_vars()) throw DimensionError("scalar fields live in different spaces");
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::string_view text, int n_vars) : text_(text), n_vars_(n_vars) {}

  NodePtr parse_all() {
    NodePtr n = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("offset " + std::to_string(pos_), what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view token() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    if (start == pos_) fail("expected a token");
    return text_.substr(start, pos_ - start);
  }

  NodePtr atom(std::string_view tok) {
    if (tok.front() == 'x') {
      int idx = 0;
      if (tok.size() < 2) fail("variable without index");
      for (char c : tok.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad variable '" + std::string(tok) + "'");
        idx = idx * 10 + (c - '0');
      }
      if (idx < 1 || idx > n_vars_) fail("variable '" + std::string(tok) + "' outside 1.." + std::to_string(n_vars_));
      return make_variable(idx - 1);
    }
    try {
      return make_constant(parse_rational(tok));
    } catch (const ParseError&) {
      fail("bad number or symbol '" + std::string(tok) + "'");
    }
  }

  NodePtr parse_expr() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == ')') fail("unexpected ')'");
    if (text_[pos_] != '(') return atom(token());
    ++pos_;
    std::string_view op = token();
    std::vector<NodePtr> args;
    std::string pow_literal;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) fail("missing ')'");
      if (text_[pos_] == ')') {
        ++pos_;
        break;
      }
      if (op == "^" && args.size() == 1) {
        pow_literal = std::string(token());
        args.push_back(nullptr);
        continue;
      }
      args.push_back(parse_expr());
    }
    return build(op, std::move(args), pow_literal);
  }

  NodePtr build(std::string_view op, std::vector<NodePtr> args, const std::string& pow_literal) {
    auto need = [&](std::size_t k) {
      if (args.size() != k) fail("'" + std::string(op) + "' expects " + std::to_string(k) + " argument(s)");
    };
    if (op == "+" || op == "*") {
      if (args.empty()) fail("'" + std::string(op) + "' needs arguments");
      if (args.size() == 1) return args[0];
      return make(op == "+" ? Kind::Add : Kind::Mul, std::move(args));
    }
    if (op == "-") {
      if (args.size() == 1) return make(Kind::Neg, std::move(args));
      need(2);
      return make(Kind::Add, {args[0], make(Kind::Neg, {args[1]})});
    }
    if (op == "/") {
      need(2);
      return make(Kind::Div, std::move(args));
    }
    if (op == "^") {
      need(2);
      int e = 0;
      try {
        std::size_t used = 0;
        e = std::stoi(pow_literal, &used);
        if (used != pow_literal.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        fail("power exponent must be an integer literal");
      }
      auto n = std::make_shared<Node>();
      n->kind = Kind::Pow;
      n->index = e;
      n->children = {args[0]};
      return n;
    }
    if (op == "exp") {
      need(1);
      return make(Kind::Exp, std::move(args));
    }
    if (op == "chi") {
      need(1);
      return make(Kind::Chi, std::move(args));
    }
    if (op.starts_with("norm:")) {
      std::vector<int> exps;
      std::string list(op.substr(5));
      std::stringstream ss(list);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          exps.push_back(std::stoi(item));
        } catch (const std::exception&) {
          fail("bad norm exponent '" + item + "'");
        }
        if (exps.back() < 1) fail("norm exponents must be ≥ 1");
      }
      if (exps.size() != args.size()) fail("norm exponent count differs from argument count");
      auto n = std::make_shared<Node>();
      n->kind = Kind::Norm;
      n->exponents = std::move(exps);
      n->children = std::move(args);
      return n;
    }
    fail("unknown operator '" + std::string(op) + "'");
  }

  std::string_view text_;
  int n_vars_;
  std::size_t pos_ = 0;
};

void print(const Node& n, std::ostream& os) {
  auto children = [&](const char* op) {
    os << "(" << op;
    for (const auto& c : n.children) {
      os << " ";
      print(*c, os);
    }
    os << ")";
  };
  switch (n.kind) {
    case Kind::Constant:
      os << to_string(n.constant);
      break;
    case Kind::Variable:
      os << "x" << (n.index + 1);
      break;
    case Kind::Add:
      children("+");
      break;
    case Kind::Mul:
      children("*");
      break;
    case Kind::Neg:
      children("-");
      break;
    case Kind::Div:
      children("/");
      break;
    case Kind::Exp:
      children("exp");
      break;
    case Kind::Chi:
      children("chi");
      break;
    case Kind::Pow:
      os << "(^ ";
      print(*n.children[0], os);
      os << " " << n.index << ")";
      break;
    case Kind::Norm: {
      std::string op = "norm:";
      for (std::size_t i = 0; i < n.exponents.size(); ++i) {
        if (i) op += ",";
        op += std::to_string(n.exponents[i]);
      }
      children(op.c_str());
      break;
    }
  }
}

bool rational_only(const Node& n) {
  if (n.kind == Kind::Exp || n.kind == Kind::Chi || n.kind == Kind::Norm) return false;
  for (const auto& c : n.children)
    if (!rational_only(*c)) return false;
  return true;
}

NodePtr substitute_node(const NodePtr& n, std::span<const NodePtr> values) {
  if (n->kind == Kind::Variable) return values[n->index];
  if (n->children.empty()) return n;
  auto copy = std::make_shared<Node>(*n);
  for (auto& c : copy->children) c = substitute_node(c, values);
  return copy;
}

// ---------------------------------------------------------------- jets

template <class T>
T from_rational(const Rational& r) {
  if constexpr (std::is_same_v<T, double>) {
    return to_double(r);
  } else {
    return r;
  }
}

template <class T>
struct Evaluator {
  std::span<const Jet<T>> vars;
  int n;

  Jet<T> eval(const Node& node, int order) const {
    switch (node.kind) {
      case Kind::Constant:
        if constexpr (std::is_same_v<T, double>) {
          return Jet<T>::constant(n, order, node.approx);
        } else {
          return Jet<T>::constant(n, order, node.constant);
        }
      case Kind::Variable:
        return vars[node.index].truncated(order);
      case Kind::Add: {
        Jet<T> r = eval(*node.children[0], order);
        for (std::size_t i = 1; i < node.children.size(); ++i) r += eval(*node.children[i], order);
        return r;
      }
      case Kind::Mul: {
        Jet<T> r = eval(*node.children[0], order);
        for (std::size_t i = 1; i < node.children.size(); ++i) r = r * eval(*node.children[i], order);
        return r;
      }
      case Kind::Neg:
        return -eval(*node.children[0], order);
      case Kind::Div: {
        Jet<T> den = eval(*node.children[1], order);
        if (den.value() == T(0)) throw NonSmoothPointError("division by zero in scalar field");
        return eval(*node.children[0], order) * den.reciprocal();
      }
      case Kind::Pow: {
        Jet<T> base = eval(*node.children[0], order);
        if (node.index < 0 && base.value() == T(0)) throw NonSmoothPointError("negative power of zero");
        return base.pow(node.index);
      }
      case Kind::Exp:
      case Kind::Chi:
      case Kind::Norm:
        if constexpr (std::is_same_v<T, double>) {
          return transcendental(node, order);
        } else {
          throw InvalidArgument("exact jets are unavailable for exp/chi/norm nodes");
        }
    }
    throw InvalidArgument("corrupt expression node");
  }

  Jet<T> transcendental(const Node& node, int order) const
    requires std::is_same_v<T, double>
  {
    if (node.kind == Kind::Exp) {
      Jet<double> a = eval(*node.children[0], order);
      std::vector<double> d(order + 1, std::exp(a.value()));
      return a.compose(d);
    }
    if (node.kind == Kind::Chi) {
      // flat regions never need the argument's derivatives
      const double s = eval(*node.children[0], 0).value();
      if (chi_is_flat(s)) return Jet<double>::constant(n, order, chi(s));
      Jet<double> a = eval(*node.children[0], order);
      return a.compose(chi_derivatives(a.value(), order));
    }
    // homogeneous norm: solve Σ a_i² T^{2e_i} = 1 in jet arithmetic by Newton
    std::vector<Jet<double>> args;
    std::vector<double> values;
    for (const auto& c : node.children) {
      args.push_back(eval(*c, order));
      values.push_back(args.back().value());
    }
    const double norm = homogeneous_norm(values, node.exponents);
    if (norm == 0.0) {
      if (order == 0) return Jet<double>::constant(n, 0, 0.0);
      throw NonSmoothPointError("homogeneous norm is not differentiable at the origin");
    }
    Jet<double> t = Jet<double>::constant(n, order, 1.0 / norm);
    int iterations = 1;
    for (int reach = 1; reach < order + 1; reach *= 2) ++iterations;
    for (int it = 0; it < iterations && order > 0; ++it) {
      Jet<double> f = Jet<double>::constant(n, order, -1.0);
      Jet<double> df(n, order);
      for (std::size_t i = 0; i < args.size(); ++i) {
        const int e2 = 2 * node.exponents[i];
        Jet<double> sq = args[i] * args[i];
        Jet<double> tp = t.pow(e2 - 1);
        f += sq * (tp * t);
        df += sq * tp * static_cast<double>(e2);
      }
      t -= f * df.reciprocal();
    }
    return t.reciprocal();
  }
};

}  // namespace

ScalarField::ScalarField(int n_vars, std::shared_ptr<const Node> root) : n_vars_(n_vars), root_(std::move(root)) {
  if (n_vars < 1) throw DimensionError("scalar field needs at least one variable");
  if (!root_) throw InvalidArgument("empty expression");
}

ScalarField ScalarField::constant(int n_vars, const Rational& c) { return {n_vars, make_constant(c)}; }

ScalarField ScalarField::variable(int n_vars, int index) {
  if (index < 0 || index >= n_vars) throw DimensionError("variable index out of range");
  return {n_vars, make_variable(index)};
}

ScalarField ScalarField::from_poly(const Poly& p) {
  const int n = p.n_vars();
  std::vector<NodePtr> terms;
  for (const auto& [e, c] : p.terms()) {
    std::vector<NodePtr> factors{make_constant(c)};
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      if (e[i] == 1) {
        factors.push_back(make_variable(i));
      } else {
        auto pw = std::make_shared<Node>();
        pw->kind = Kind::Pow;
        pw->index = e[i];
        pw->children = {make_variable(i)};
        factors.push_back(pw);
      }
    }
    terms.push_back(factors.size() == 1 ? factors[0] : make(Kind::Mul, std::move(factors)));
  }
  if (terms.empty()) return constant(n, 0);
  if (terms.size() == 1) return {n, terms[0]};
  return {n, make(Kind::Add, std::move(terms))};
}

ScalarField ScalarField::parse(std::string_view text, int n_vars) {
  return {n_vars, Parser(text, n_vars).parse_all()};
}

ScalarField ScalarField::hom_norm(std::span<const int> exponents, std::span<const ScalarField> args) {
  if (exponents.size() != args.size() || args.empty()) throw DimensionError("norm needs one exponent per argument");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Norm;
  n->exponents.assign(exponents.begin(), exponents.end());
  for (const auto& a : args) {
    check_ring(a, args[0]);
    n->children.push_back(a.root_);
  }
  return {args[0].n_vars(), n};
}

ScalarField ScalarField::hom_norm(int n_vars, std::span<const int> exponents) {
  if (static_cast<int>(exponents.size()) != n_vars) throw DimensionError("one exponent per coordinate required");
  std::vector<ScalarField> xs;
  for (int i = 0; i < n_vars; ++i) xs.push_back(variable(n_vars, i));
  return hom_norm(exponents, xs);
}

bool ScalarField::is_rational() const { return rational_only(*root_); }

std::string ScalarField::to_string() const {
  std::ostringstream os;
  print(*root_, os);
  return os.str();
}

ScalarField ScalarField::operator-() const { return {n_vars_, make(Kind::Neg, {root_})}; }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  check_ring(a, b);
  return {a.n_vars_, make(Kind::Add, {a.root_, b.root_})};
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  check_ring(a, b);
  return {a.n_vars_, make(Kind::Add, {a.root_, make(Kind::Neg, {b.root_})})};
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  check_ring(a, b);
  return {a.n_vars_, make(Kind::Mul, {a.root_, b.root_})};
}

ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  check_ring(a, b);
  return {a.n_vars_, make(Kind::Div, {a.root_, b.root_})};
}

ScalarField ScalarField::pow(int e) const {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->index = e;
  n->children = {root_};
  return {n_vars_, n};
}

ScalarField ScalarField::exp() const { return {n_vars_, make(Kind::Exp, {root_})}; }
ScalarField ScalarField::chi() const { return {n_vars_, make(Kind::Chi, {root_})}; }

ScalarField ScalarField::substitute(std::span<const ScalarField> values) const {
  if (static_cast<int>(values.size()) != n_vars_) throw DimensionError("substitution needs one value per variable");
  std::vector<NodePtr> nodes;
  for (const auto& v : values) {
    check_ring(v, values[0]);
    nodes.push_back(v.root_);
  }
  return {values[0].n_vars(), substitute_node(root_, nodes)};
}

ScalarField ScalarField::dilate(std::span<const int> weights, const Rational& lambda) const {
  if (static_cast<int>(weights.size()) != n_vars_) throw DimensionError("dilation weights length");
  std::vector<ScalarField> xs;
  for (int i = 0; i < n_vars_; ++i)
    xs.push_back(constant(n_vars_, hvf::pow(lambda, weights[i])) * variable(n_vars_, i));
  return substitute(xs);
}

ScalarField ScalarField::embed(int new_n_vars) const {
  if (new_n_vars < n_vars_) throw DimensionError("cannot embed into fewer variables");
  std::vector<ScalarField> xs;
  for (int i = 0; i < n_vars_; ++i) xs.push_back(variable(new_n_vars, i));
  return substitute(xs);
}

double ScalarField::evaluate(std::span<const double> x) const { return jet(x, 0).value(); }

Jet<double> ScalarField::jet(std::span<const double> x, int order) const {
  if (static_cast<int>(x.size()) != n_vars_) throw DimensionError("evaluation point dimension");
  if (order < 0 || order > kMaxJetOrder) throw InvalidArgument("jet order must lie in 0..6");
  auto vars = point_jets<double>(x, order);
  return Evaluator<double>{vars, n_vars_}.eval(*root_, order);
}

Jet<Rational> ScalarField::jet(std::span<const Rational> x, int order) const {
  if (static_cast<int>(x.size()) != n_vars_) throw DimensionError("evaluation point dimension");
  if (order < 0 || order > kMaxJetOrder) throw InvalidArgument("jet order must lie in 0..6");
  if (!is_rational()) throw InvalidArgument("exact jets need a rational expression");
  auto vars = point_jets<Rational>(x, order);
  return Evaluator<Rational>{vars, n_vars_}.eval(*root_, order);
}

}  // namespace hvf
