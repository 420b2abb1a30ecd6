#include "darboux/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "darboux/error.hpp"

namespace darboux {

struct Expr::Node {
  Kind kind;
  std::string name;
  GaussQ value;
  std::vector<Expr> args;
  int exponent = 0;
  darboux::Func fn = darboux::Func::Sin;
};

const char* func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
  }
  return "?";
}

namespace {

GaussQ int_power(const GaussQ& b, int e) {
  if (e < 0) {
    if (b.is_zero()) throw DivisionByZeroError("zero raised to a negative power");
    return int_power(b.inverse(), -e);
  }
  GaussQ r(1), base = b;
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return r;
}

}  // namespace

// ------------------------------------------------------------ construction

Expr::Expr() : Expr(GaussQ(0)) {}

Expr::Expr(GaussQ c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->value = std::move(c);
  node_ = std::move(n);
}

Expr Expr::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  GaussQ c(0);
  for (auto& t : terms) {
    if (t.kind() == Kind::Add) {
      for (const auto& u : t.args()) {
        if (u.is_constant()) c += u.value();
        else flat.push_back(u);
      }
    } else if (t.is_constant()) {
      c += t.value();
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (!c.is_zero()) flat.emplace_back(c);
  if (flat.empty()) return Expr();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Add;
  n->args = std::move(flat);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  GaussQ c(1);
  for (auto& f : factors) {
    if (f.kind() == Kind::Mul) {
      for (const auto& u : f.args()) {
        if (u.is_constant()) c *= u.value();
        else flat.push_back(u);
      }
    } else if (f.is_constant()) {
      c *= f.value();
    } else {
      flat.push_back(std::move(f));
    }
  }
  if (c.is_zero()) return Expr();
  if (flat.empty()) return Expr(c);
  if (c.is_one() && flat.size() == 1) return flat.front();
  if (!c.is_one()) flat.insert(flat.begin(), Expr(c));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->args = std::move(flat);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::power(Expr base, int exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_constant()) return Expr(int_power(base.value(), exponent));
  if (base.kind() == Kind::Pow) {
    return power(base.args()[0], base.exponent() * exponent);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->args = {std::move(base)};
  n->exponent = exponent;
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::quotient(Expr num, Expr den) {
  if (den.is_constant()) {
    if (den.value().is_zero()) throw DivisionByZeroError("division by zero constant");
    return product({std::move(num), Expr(den.value().inverse())});
  }
  if (num.is_zero_constant()) return Expr();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Div;
  n->args = {std::move(num), std::move(den)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::apply(darboux::Func f, Expr arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Func;
  n->fn = f;
  n->args = {std::move(arg)};
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
const GaussQ& Expr::value() const { return node_->value; }
const std::vector<Expr>& Expr::args() const { return node_->args; }
int Expr::exponent() const { return node_->exponent; }
darboux::Func Expr::function() const { return node_->fn; }

Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr Expr::operator-() const { return product({Expr(-1), *this}); }

Expr pow(const Expr& base, int exponent) { return Expr::power(base, exponent); }
Expr sin(const Expr& e) { return Expr::apply(Func::Sin, e); }
Expr cos(const Expr& e) { return Expr::apply(Func::Cos, e); }
Expr exp(const Expr& e) { return Expr::apply(Func::Exp, e); }
Expr log(const Expr& e) { return Expr::apply(Func::Log, e); }
Expr sqrt(const Expr& e) { return Expr::apply(Func::Sqrt, e); }

std::set<std::string> Expr::free_symbols() const {
  std::set<std::string> out;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (e->kind() == Kind::Var) out.insert(e->name());
    for (const auto& a : e->args()) stack.push_back(&a);
  }
  return out;
}

bool Expr::depends_on(const std::string& v) const {
  if (kind() == Kind::Var) return name() == v;
  for (const auto& a : args()) {
    if (a.depends_on(v)) return true;
  }
  return false;
}

Expr Expr::substitute(const std::map<std::string, Expr>& values) const {
  switch (kind()) {
    case Kind::Var: {
      auto it = values.find(name());
      return it == values.end() ? *this : it->second;
    }
    case Kind::Const: return *this;
    case Kind::Add:
    case Kind::Mul: {
      std::vector<Expr> a;
      a.reserve(args().size());
      for (const auto& x : args()) a.push_back(x.substitute(values));
      return kind() == Kind::Add ? sum(std::move(a)) : product(std::move(a));
    }
    case Kind::Pow: return power(args()[0].substitute(values), exponent());
    case Kind::Div: return quotient(args()[0].substitute(values), args()[1].substitute(values));
    case Kind::Func: return apply(function(), args()[0].substitute(values));
  }
  return *this;
}

bool Expr::structurally_equal(const Expr& o) const {
  if (node_ == o.node_) return true;
  if (kind() != o.kind()) return false;
  switch (kind()) {
    case Kind::Var: return name() == o.name();
    case Kind::Const: return value() == o.value();
    case Kind::Pow:
      if (exponent() != o.exponent()) return false;
      break;
    case Kind::Func:
      if (function() != o.function()) return false;
      break;
    default: break;
  }
  if (args().size() != o.args().size()) return false;
  for (std::size_t k = 0; k < args().size(); ++k) {
    if (!args()[k].structurally_equal(o.args()[k])) return false;
  }
  return true;
}

// ---------------------------------------------------------------- printing

namespace {

std::string print(const Expr& e);

bool is_negative_coeff(const GaussQ& c) {
  if (c.is_real()) return sgn(c.re()) < 0;
  return sgn(c.re()) == 0 && sgn(c.im()) < 0;
}

// Term printed after a binary minus has its leading coefficient negated.
bool is_negative_term(const Expr& t) {
  if (t.is_constant()) return is_negative_coeff(t.value());
  if (t.kind() == Expr::Kind::Mul && t.args().front().is_constant()) {
    return is_negative_coeff(t.args().front().value());
  }
  if (t.kind() == Expr::Kind::Div) return is_negative_term(t.args()[0]);
  return false;
}

bool is_atomic(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var:
    case Expr::Kind::Func: return true;
    case Expr::Kind::Const: {
      const GaussQ& c = e.value();
      return c.is_real() && sgn(c.re()) >= 0 && c.re().get_den() == 1;
    }
    default: return false;
  }
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string print_factor(const Expr& f) {
  if (f.kind() == Expr::Kind::Add || f.kind() == Expr::Kind::Div) return paren(print(f));
  if (f.is_constant() && !f.value().is_real() && sgn(f.value().re()) != 0) return paren(print(f));
  return print(f);
}

std::string print_mul(const Expr& e) {
  const auto& a = e.args();
  std::string out;
  std::size_t start = 0;
  if (a.front().is_constant()) {
    const GaussQ& c = a.front().value();
    start = 1;
    if (c == GaussQ(-1)) {
      out = "-";
    } else if (c.is_real() || sgn(c.re()) == 0) {
      out = c.str() + "*";
    } else {
      out = paren(c.str()) + "*";
    }
  }
  for (std::size_t k = start; k < a.size(); ++k) {
    if (k > start) out += "*";
    out += print_factor(a[k]);
  }
  return out;
}

std::string print(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var: return e.name();
    case Expr::Kind::Const: return e.value().str();
    case Expr::Kind::Add: {
      std::string out;
      bool first = true;
      for (const auto& t : e.args()) {
        if (first) {
          out = print(t);
          first = false;
        } else if (is_negative_term(t)) {
          out += " - " + print(-t);
        } else {
          out += " + " + print(t);
        }
      }
      return out;
    }
    case Expr::Kind::Mul: return print_mul(e);
    case Expr::Kind::Pow: {
      const Expr& b = e.args()[0];
      std::string base = is_atomic(b) ? print(b) : paren(print(b));
      return base + "^" + std::to_string(e.exponent());
    }
    case Expr::Kind::Div: {
      const Expr& n = e.args()[0];
      const Expr& d = e.args()[1];
      std::string ns = (n.kind() == Expr::Kind::Add || n.kind() == Expr::Kind::Div)
                           ? paren(print(n))
                           : print(n);
      std::string ds = (is_atomic(d) || d.kind() == Expr::Kind::Pow) ? print(d) : paren(print(d));
      return ns + "/" + ds;
    }
    case Expr::Kind::Func:
      return std::string(func_name(e.function())) + "(" + print(e.args()[0]) + ")";
  }
  return "?";
}

}  // namespace

std::string Expr::str() const { return print(*this); }

// ------------------------------------------------------------------ VarCtx

VarCtx::VarCtx(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw DimensionError("duplicate coordinate name '" + n + "'");
  }
}

bool VarCtx::contains(const std::string& name) const {
  for (const auto& n : names_) {
    if (n == name) return true;
  }
  return false;
}

std::size_t VarCtx::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw DimensionError("unknown variable '" + name + "'");
}

// ----------------------------------------------------------------- parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : src_(s) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept('+')) terms.push_back(term());
      else if (accept('-')) terms.push_back(-term());
      else break;
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    while (true) {
      if (accept('*')) acc = acc * unary();
      else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero_constant()) throw ParseError("division by zero constant", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return factor();
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      int e = exponent();
      if (e < 0 && b.is_zero_constant()) fail("zero raised to a negative power");
      return pow(b, e);
    }
    return b;
  }

  int exponent() {
    skip_ws();
    bool neg = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      neg = src_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer exponent");
    long v = std::stol(std::string(src_.substr(start, pos_ - start)));
    if (v > 100000) fail("exponent too large");
    long r = v;
    if (accept('^')) {
      int inner = exponent();
      if (inner < 0) fail("negative exponent in exponent tower");
      r = 1;
      for (int k = 0; k < inner; ++k) {
        r *= v;
        if (r > 100000) fail("exponent too large");
      }
    }
    return static_cast<int>(neg ? -r : r);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      std::string digits(src_.substr(start, pos_ - start));
      if (digits == ".") fail("malformed number");
      return Expr(GaussQ::from_decimal(digits));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string id(src_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < src_.size() && src_[pos_] == '(') {
        static const std::map<std::string, Func> funcs{{"sin", Func::Sin},
                                                       {"cos", Func::Cos},
                                                       {"exp", Func::Exp},
                                                       {"log", Func::Log},
                                                       {"sqrt", Func::Sqrt}};
        auto it = funcs.find(id);
        if (it == funcs.end()) throw ParseError("unknown function '" + id + "'", start);
        ++pos_;
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return Expr::apply(it->second, arg);
      }
      if (id == "i") return Expr::imaginary_unit();
      return Expr::var(id);
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view src) { return Parser(src).parse_all(); }

// ---------------------------------------------------------- differentiation

Expr differentiate(const Expr& e, const std::string& v) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: return Expr(e.name() == v ? 1 : 0);
    case K::Const: return Expr();
    case K::Add: {
      std::vector<Expr> d;
      for (const auto& t : e.args()) d.push_back(differentiate(t, v));
      return Expr::sum(std::move(d));
    }
    case K::Mul: {
      const auto& f = e.args();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < f.size(); ++k) {
        Expr dk = differentiate(f[k], v);
        if (dk.is_zero_constant()) continue;
        std::vector<Expr> prod;
        for (std::size_t j = 0; j < f.size(); ++j) prod.push_back(j == k ? dk : f[j]);
        terms.push_back(Expr::product(std::move(prod)));
      }
      return Expr::sum(std::move(terms));
    }
    case K::Pow: {
      const Expr& b = e.args()[0];
      Expr db = differentiate(b, v);
      if (db.is_zero_constant()) return Expr();
      return Expr::product({Expr(e.exponent()), pow(b, e.exponent() - 1), db});
    }
    case K::Div: {
      const Expr& n = e.args()[0];
      const Expr& d = e.args()[1];
      Expr dn = differentiate(n, v);
      Expr dd = differentiate(d, v);
      if (dd.is_zero_constant()) return dn / d;
      return (dn * d - n * dd) / pow(d, 2);
    }
    case K::Func: {
      const Expr& u = e.args()[0];
      Expr du = differentiate(u, v);
      if (du.is_zero_constant()) return Expr();
      switch (e.function()) {
        case Func::Sin: return cos(u) * du;
        case Func::Cos: return -(sin(u) * du);
        case Func::Exp: return e * du;
        case Func::Log: return du / u;
        case Func::Sqrt: return du / (Expr(2) * e);
      }
    }
  }
  return Expr();
}

Expr differentiate(const Expr& e, const std::string& v, const VarCtx& ctx) {
  if (!ctx.contains(v)) throw DimensionError("unknown variable '" + v + "'");
  return differentiate(e, v);
}

// ------------------------------------------------------------ normal forms

namespace {

bool is_kernel_symbol(const std::string& s) { return s.find('(') != std::string::npos; }

std::optional<mpz_class> exact_sqrt(const mpz_class& z) {
  if (sgn(z) < 0) return std::nullopt;
  mpz_class r = ::sqrt(z);
  if (r * r != z) return std::nullopt;
  return r;
}

RatFunc kernel(const Expr& e, bool strict) {
  const Expr& arg = e.args()[0];
  RatFunc a = to_ratfunc(arg, strict);
  if (strict && !(a.num().is_constant() && a.den().is_constant()) && !arg.free_symbols().empty()) {
    throw NonPolynomialError(std::string("non-polynomial node ") + e.str());
  }
  if (a.is_polynomial() && a.num().is_constant()) {
    GaussQ c = a.num().constant_value() / a.den().constant_value();
    switch (e.function()) {
      case Func::Sin:
        if (c.is_zero()) return RatFunc();
        break;
      case Func::Cos:
      case Func::Exp:
        if (c.is_zero()) return RatFunc(GaussQ(1));
        break;
      case Func::Log:
        if (c.is_one()) return RatFunc();
        break;
      case Func::Sqrt:
        if (c.is_real() && sgn(c.re()) >= 0) {
          auto n = exact_sqrt(c.re().get_num());
          auto d = exact_sqrt(c.re().get_den());
          if (n && d) return RatFunc(GaussQ(mpq_class(*n, *d)));
        }
        break;
    }
  }
  std::string key = std::string(func_name(e.function())) + "(" + from_ratfunc(a).str() + ")";
  return RatFunc(Poly::variable(key));
}

}  // namespace

RatFunc to_ratfunc(const Expr& e, bool strict) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: return RatFunc(Poly::variable(e.name()));
    case K::Const: return RatFunc(e.value());
    case K::Add: {
      // Sum polynomial parts directly; only fractions pay for gcds.
      Poly poly;
      RatFunc frac;
      bool has_frac = false;
      for (const auto& t : e.args()) {
        RatFunc r = to_ratfunc(t, strict);
        if (r.is_polynomial()) {
          poly += r.num();
        } else {
          frac += r;
          has_frac = true;
        }
      }
      return has_frac ? frac + RatFunc(poly) : RatFunc(poly);
    }
    case K::Mul: {
      RatFunc acc(GaussQ(1));
      for (const auto& f : e.args()) {
        RatFunc r = to_ratfunc(f, strict);
        if (r.is_zero()) return RatFunc();
        acc *= r;
      }
      return acc;
    }
    case K::Pow: {
      RatFunc b = to_ratfunc(e.args()[0], strict);
      if (e.exponent() < 0 && b.is_zero()) {
        throw DivisionByZeroError("division by the zero polynomial");
      }
      return b.pow(e.exponent());
    }
    case K::Div: {
      RatFunc n = to_ratfunc(e.args()[0], strict);
      RatFunc d = to_ratfunc(e.args()[1], strict);
      if (d.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
      return n / d;
    }
    case K::Func: return kernel(e, strict);
  }
  return RatFunc();
}

namespace {

Expr symbol_expr(const std::string& s) { return is_kernel_symbol(s) ? parse(s) : Expr::var(s); }

Expr poly_expr(const Poly& p) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<Expr> f{Expr(c)};
    for (const auto& [name, k] : m.factors()) f.push_back(pow(symbol_expr(name), k));
    terms.push_back(Expr::product(std::move(f)));
  }
  if (terms.empty()) return Expr();
  if (terms.size() == 1) return terms.front();
  return Expr::sum(std::move(terms));
}

}  // namespace

Expr from_ratfunc(const RatFunc& r) {
  Expr n = poly_expr(r.num());
  if (r.den().is_constant()) return n;
  return Expr::quotient(n, poly_expr(r.den()));
}

Expr canonicalize_poly(const Expr& e) { return from_ratfunc(to_ratfunc(e, true)); }

namespace {

// Rewrites cos(u)^k as cos(u)^(k mod 2) * (1 - sin(u)^2)^(k/2), a normal
// form modulo sin^2 + cos^2 = 1.
Poly reduce_pythagorean(const Poly& p) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    Poly term = Poly::term(c, Monomial());
    for (const auto& [name, k] : m.factors()) {
      if (k >= 2 && name.rfind("cos(", 0) == 0) {
        std::string sine = "sin" + name.substr(3);
        Poly one_minus = Poly(1) - Poly::term(GaussQ(1), Monomial::variable(sine, 2));
        term *= one_minus.pow(static_cast<unsigned>(k / 2));
        if (k % 2) term *= Poly::variable(name);
      } else {
        term *= Poly::term(GaussQ(1), Monomial::variable(name, k));
      }
    }
    out += term;
  }
  return out;
}

}  // namespace

Expr simplify(const Expr& e) {
  RatFunc r = to_ratfunc(e, false);
  return from_ratfunc(RatFunc(reduce_pythagorean(r.num()), reduce_pythagorean(r.den())));
}

bool is_zero(const Expr& e) { return to_ratfunc(e, true).is_zero(); }

// -------------------------------------------------------------- evaluation

namespace {

constexpr double kPoleThreshold = 1e-300;

std::complex<double> apply_func(Func f, std::complex<double> x) {
  switch (f) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Exp: return std::exp(x);
    case Func::Log: return std::log(x);
    case Func::Sqrt: return std::sqrt(x);
  }
  return {};
}

std::complex<double> checked_pow(std::complex<double> b, int e) {
  if (e < 0 && std::abs(b) < kPoleThreshold) throw DivisionByZeroError("pole in evaluation");
  if (b.imag() == 0.0) return {std::pow(b.real(), e), 0.0};
  std::complex<double> r(1.0), base = e < 0 ? 1.0 / b : b;
  unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
  while (k > 0) {
    if (k & 1U) r *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return r;
}

std::complex<double> checked_div(std::complex<double> n, std::complex<double> d) {
  if (std::abs(d) < kPoleThreshold) throw DivisionByZeroError("pole in evaluation");
  return n / d;
}

}  // namespace

std::complex<double> eval_numeric(const Expr& e,
                                  const std::map<std::string, std::complex<double>>& b) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Var: {
      auto it = b.find(e.name());
      if (it != b.end()) return it->second;
      if (e.name() == "pi") return std::numbers::pi;
      throw Error("unbound variable '" + e.name() + "'");
    }
    case K::Const: return e.value().to_complex();
    case K::Add: {
      std::complex<double> s = 0;
      for (const auto& t : e.args()) s += eval_numeric(t, b);
      return s;
    }
    case K::Mul: {
      std::complex<double> p = 1;
      for (const auto& t : e.args()) p *= eval_numeric(t, b);
      return p;
    }
    case K::Pow: return checked_pow(eval_numeric(e.args()[0], b), e.exponent());
    case K::Div: return checked_div(eval_numeric(e.args()[0], b), eval_numeric(e.args()[1], b));
    case K::Func: return apply_func(e.function(), eval_numeric(e.args()[0], b));
  }
  return {};
}

namespace {

void compile(const Expr& e, const VarCtx& args, std::vector<CompiledExpr::Op>& ops) {
  using K = Expr::Kind;
  using Op = CompiledExpr::Op;
  switch (e.kind()) {
    case K::Var: {
      if (args.contains(e.name())) {
        ops.push_back({Op::Arg, {}, static_cast<int>(args.index_of(e.name()))});
      } else if (e.name() == "pi") {
        ops.push_back({Op::Const, std::numbers::pi});
      } else {
        throw Error("unbound variable '" + e.name() + "'");
      }
      return;
    }
    case K::Const: ops.push_back({Op::Const, e.value().to_complex()}); return;
    case K::Add:
    case K::Mul:
      for (const auto& a : e.args()) compile(a, args, ops);
      ops.push_back({e.kind() == K::Add ? Op::Add : Op::Mul, {}, static_cast<int>(e.args().size())});
      return;
    case K::Pow:
      compile(e.args()[0], args, ops);
      ops.push_back({Op::Pow, {}, e.exponent()});
      return;
    case K::Div:
      compile(e.args()[0], args, ops);
      compile(e.args()[1], args, ops);
      ops.push_back({Op::Div});
      return;
    case K::Func:
      compile(e.args()[0], args, ops);
      ops.push_back({Op::Func, {}, 0, e.function()});
      return;
  }
}

}  // namespace

CompiledExpr::CompiledExpr(const Expr& e, const VarCtx& args) { compile(e, args, ops_); }

template <typename T>
std::complex<double> CompiledExpr::run(std::span<const T> args) const {
  if (ops_.empty()) return 0.0;
  std::complex<double> inline_stack[32];
  std::vector<std::complex<double>> heap;
  std::complex<double>* st = inline_stack;
  if (ops_.size() > 32) {
    heap.resize(ops_.size());
    st = heap.data();
  }
  std::size_t sp = 0;
  for (const Op& op : ops_) {
    switch (op.code) {
      case Op::Const: st[sp++] = op.value; break;
      case Op::Arg: st[sp++] = args[static_cast<std::size_t>(op.n)]; break;
      case Op::Add: {
        std::size_t base = sp - static_cast<std::size_t>(op.n);
        for (std::size_t k = base + 1; k < sp; ++k) st[base] += st[k];
        sp = base + 1;
        break;
      }
      case Op::Mul: {
        std::size_t base = sp - static_cast<std::size_t>(op.n);
        for (std::size_t k = base + 1; k < sp; ++k) st[base] *= st[k];
        sp = base + 1;
        break;
      }
      case Op::Pow: st[sp - 1] = checked_pow(st[sp - 1], op.n); break;
      case Op::Div:
        st[sp - 2] = checked_div(st[sp - 2], st[sp - 1]);
        --sp;
        break;
      case Op::Func: st[sp - 1] = apply_func(op.fn, st[sp - 1]); break;
    }
  }
  return st[0];
}

std::complex<double> CompiledExpr::operator()(std::span<const std::complex<double>> args) const {
  return run(args);
}

std::complex<double> CompiledExpr::operator()(std::span<const double> args) const {
  return run(args);
}

}  // namespace darboux
