#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "darboux/gauss_rational.hpp"

namespace darboux {

/// Power product of named symbols. Factors are kept sorted by name with
/// strictly positive exponents.
class Monomial {
 public:
  using Factor = std::pair<std::string, int>;

  Monomial() = default;
  explicit Monomial(std::vector<Factor> factors);
  static Monomial variable(std::string name, int exponent = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }
  int degree() const;
  int exponent(const std::string& name) const;

  Monomial operator*(const Monomial& o) const;
  /// Quotient when `o` divides this monomial.
  std::optional<Monomial> divide(const Monomial& o) const;
  /// This monomial with `name` removed.
  Monomial without(const std::string& name) const;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
};

/// Graded lexicographic order, descending: higher total degree first, then
/// the larger exponent of the alphabetically first symbol.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial over the Gaussian rationals.
class Poly {
 public:
  using Terms = std::map<Monomial, GaussQ, GrlexDescending>;

  Poly() = default;
  Poly(GaussQ c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(GaussQ(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(const std::string& name);
  static Poly term(GaussQ coeff, Monomial m);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; only meaningful when is_constant().
  GaussQ constant_value() const;
  std::size_t size() const { return terms_.size(); }

  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const GaussQ& leading_coeff() const { return terms_.begin()->second; }
  int total_degree() const;
  int degree_in(const std::string& name) const;
  std::set<std::string> symbols() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const GaussQ& c) const;
  Poly times_monomial(const Monomial& m) const;
  Poly pow(unsigned e) const;

  /// Exact quotient, or nullopt if `d` does not divide this polynomial.
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Scales so that the leading (grlex) coefficient is 1.
  Poly monic() const;

  /// Coefficients in powers of `name`: result[k] multiplies name^k.
  std::vector<Poly> coefficients_in(const std::string& name) const;
  static Poly from_coefficients(const std::vector<Poly>& coeffs, const std::string& name);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void add_term(const Monomial& m, const GaussQ& c);
  Terms terms_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

/// Reduced quotient of polynomials: gcd(num, den) = 1 and den is monic.
/// Two rational functions are equal iff their representations coincide.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);
  RatFunc(GaussQ c) : RatFunc(Poly(std::move(c))) {}  // NOLINT(google-explicit-constructor)

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const;
  RatFunc inverse() const;
  RatFunc pow(int e) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

}  // namespace darboux
