#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "darboux/gauss_rational.hpp"
#include "darboux/poly.hpp"

namespace darboux {

enum class Func { Sin, Cos, Exp, Log, Sqrt };

const char* func_name(Func f);

/// Immutable symbolic scalar expression with exact Gaussian-rational leaves.
///
/// Nodes are shared, so copies are cheap and an Expr can be used from many
/// threads at once. The smart constructors (`sum`, `product`, ...) fold
/// constants and flatten nested sums/products but do no further algebra;
/// use `canonicalize_poly` or `simplify` for a normal form.
class Expr {
 public:
  enum class Kind { Var, Const, Add, Mul, Pow, Div, Func };

  Expr();  // the constant 0
  Expr(GaussQ c);  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(GaussQ(c)) {}  // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(GaussQ(static_cast<long>(c))) {}  // NOLINT(google-explicit-constructor)

  static Expr var(std::string name);
  static Expr imaginary_unit() { return Expr(GaussQ::imaginary_unit()); }
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, int exponent);
  static Expr quotient(Expr num, Expr den);
  static Expr apply(Func f, Expr arg);

  Kind kind() const;
  const std::string& name() const;       // Var
  const GaussQ& value() const;           // Const
  const std::vector<Expr>& args() const; // Add, Mul, Pow (base), Div (num, den), Func
  int exponent() const;                  // Pow
  Func function() const;                 // Func

  bool is_constant() const { return kind() == Kind::Const; }
  bool is_zero_constant() const { return is_constant() && value().is_zero(); }
  bool is_one_constant() const { return is_constant() && value().is_one(); }

  /// Variables (including reserved `pi`, `hbar`) occurring anywhere.
  std::set<std::string> free_symbols() const;
  bool depends_on(const std::string& name) const;

  Expr substitute(const std::map<std::string, Expr>& values) const;

  std::string str() const;
  bool structurally_equal(const Expr& o) const;

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
  Expr operator-() const;
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }

  struct Node;

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expr pow(const Expr& base, int exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sqrt(const Expr& e);

/// Ordered, duplicate-free list of coordinate names.
class VarCtx {
 public:
  VarCtx() = default;
  VarCtx(std::vector<std::string> names);  // NOLINT(google-explicit-constructor)
  VarCtx(std::initializer_list<std::string> names) : VarCtx(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(const std::string& name) const;
  /// Position of `name`; throws DimensionError if absent.
  std::size_t index_of(const std::string& name) const;
  Expr var(std::size_t i) const { return Expr::var(names_[i]); }

  friend bool operator==(const VarCtx& a, const VarCtx& b) { return a.names_ == b.names_; }
  friend bool operator!=(const VarCtx& a, const VarCtx& b) { return !(a == b); }

 private:
  std::vector<std::string> names_;
};

/// Parses infix text. Grammar:
///   expr   := term (("+"|"-") term)*
///   term   := unary (("*"|"/") unary)*
///   unary  := ("-"|"+") unary | factor
///   factor := base ("^" int)?        (right associative, integer exponents)
///   base   := number | ident | ident "(" expr ")" | "(" expr ")"
/// `i` is the imaginary unit; `hbar` and `pi` are ordinary symbols.
Expr parse(std::string_view src);

/// Exact partial derivative with respect to the symbol `v`.
Expr differentiate(const Expr& e, const std::string& v);
/// As above, but `v` must be declared in `ctx`.
Expr differentiate(const Expr& e, const std::string& v, const VarCtx& ctx);

/// Maps an expression into the field of rational functions. With
/// `strict`, every function node must have a constant argument (it then
/// becomes an opaque symbol); otherwise function applications of any
/// argument are treated as opaque symbols named by their canonical text.
RatFunc to_ratfunc(const Expr& e, bool strict = true);
Expr from_ratfunc(const RatFunc& r);

/// Unique normal form of a polynomial or rational expression: expanded,
/// graded-lex sorted, gcd-reduced. Throws NonPolynomialError on a function
/// of a variable.
Expr canonicalize_poly(const Expr& e);

/// Best-effort normal form that also accepts elementary functions by
/// treating each application as an independent symbol, reduced modulo
/// sin(u)^2 + cos(u)^2 = 1. A zero result is a
/// proof of zero; a nonzero result is not a proof of nonzero.
Expr simplify(const Expr& e);

/// Exact zero test on the polynomial/rational fragment.
bool is_zero(const Expr& e);

/// Floating-point evaluation. `pi` defaults to M_PI when unbound.
std::complex<double> eval_numeric(const Expr& e,
                                  const std::map<std::string, std::complex<double>>& bindings);

/// Expression flattened to a postfix program over positional arguments,
/// for repeated evaluation inside integrators.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, const VarCtx& args);

  std::complex<double> operator()(std::span<const std::complex<double>> args) const;
  std::complex<double> operator()(std::span<const double> args) const;

  struct Op {
    enum Code { Const, Arg, Add, Mul, Pow, Div, Func } code;
    std::complex<double> value{};
    int n = 0;
    darboux::Func fn = darboux::Func::Sin;
  };

 private:
  template <typename T>
  std::complex<double> run(std::span<const T> args) const;
  std::vector<Op> ops_;
};

}  // namespace darboux
