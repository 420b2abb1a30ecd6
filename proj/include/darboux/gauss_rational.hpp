#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace darboux {

/// Exact Gaussian rational a + b*i with a, b in Q.
class GaussQ {
 public:
  GaussQ() = default;
  GaussQ(long v) : re_(v), im_(0) {}  // NOLINT(google-explicit-constructor)
  GaussQ(mpq_class re) : re_(std::move(re)), im_(0) { re_.canonicalize(); }  // NOLINT
  GaussQ(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussQ imaginary_unit() { return {0, 1}; }
  /// Parses an exact decimal such as "12" or "3.25".
  static GaussQ from_decimal(const std::string& digits);

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussQ conj() const { return {re_, -im_}; }
  GaussQ inverse() const;

  GaussQ& operator+=(const GaussQ& o);
  GaussQ& operator-=(const GaussQ& o);
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  GaussQ operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussQ& a, const GaussQ& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  /// "3", "-1/2", "2*i", "-i", "1/2 + 3*i".
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::string rational_str(const mpq_class& q);

}  // namespace darboux
