#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "darboux/poly.hpp"

namespace darboux {

/// Multivariate Laurent polynomial over Q in named variables.
class Laurent {
 public:
  /// Sorted (name, exponent) pairs with nonzero exponents.
  using Key = std::vector<std::pair<std::string, int>>;
  using Terms = std::map<Key, mpq_class>;

  Laurent() = default;
  Laurent(long c);  // NOLINT(google-explicit-constructor)
  Laurent(mpq_class c);  // NOLINT(google-explicit-constructor)
  static Laurent monomial(mpq_class c, Key key);
  static Laurent variable(const std::string& name, int exponent = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Single term (a unit of the Laurent ring).
  bool is_monomial() const { return terms_.size() == 1; }
  /// Inverse of a single-term element; throws DivisionByZeroError otherwise.
  Laurent monomial_inverse() const;
  Laurent pow(unsigned e) const;
  /// Lowest and highest exponent of `name` (0, 0 when absent or zero).
  std::pair<int, int> exponent_range(const std::string& name) const;

  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  Laurent operator-() const;
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& at) const;
  /// The same element as a reduced quotient with a monomial denominator.
  RatFunc to_ratfunc() const;

 private:
  void add(const Key& k, const mpq_class& c);
  Terms terms_;
};

}  // namespace darboux
