#include "darboux/gauss_rational.hpp"

#include "darboux/error.hpp"

namespace darboux {

GaussQ GaussQ::from_decimal(const std::string& digits) {
  auto dot = digits.find('.');
  if (dot == std::string::npos) return GaussQ(mpq_class(mpz_class(digits)));
  std::string whole = digits.substr(0, dot);
  std::string frac = digits.substr(dot + 1);
  mpz_class num(whole.empty() ? std::string("0") : whole);
  mpz_class scale = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
  if (!frac.empty()) num = num * scale + mpz_class(frac);
  return GaussQ(mpq_class(num, scale));
}

GaussQ GaussQ::inverse() const {
  if (is_zero()) throw DivisionByZeroError("division by zero constant");
  mpq_class n = re_ * re_ + im_ * im_;
  return {re_ / n, -im_ / n};
}

GaussQ& GaussQ::operator+=(const GaussQ& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw DivisionByZeroError("division by zero constant");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string GaussQ::str() const {
  if (sgn(im_) == 0) return rational_str(re_);
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = rational_str(im_) + "*i";
  }
  if (sgn(re_) == 0) return imag;
  if (sgn(im_) < 0) {
    std::string mag = (im_ == -1) ? "i" : rational_str(-im_) + "*i";
    return rational_str(re_) + " - " + mag;
  }
  return rational_str(re_) + " + " + imag;
}

}  // namespace darboux
