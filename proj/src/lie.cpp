#include "darboux/lie.hpp"

#include <cmath>
#include <string>

#include "darboux/error.hpp"

namespace darboux::lie {

namespace {

void require_square(const Mat& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("expected a non-empty square matrix");
}

}  // namespace

Mat exp_matrix(const Mat& x) {
  require_square(x);
  if (!x.allFinite()) throw DimensionError("matrix has non-finite entries");
  double norm = x.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  Mat a = x / std::ldexp(1.0, s);
  // ||a|| <= 1/2, so 20 Taylor terms are far below double precision.
  const auto n = x.rows();
  Mat term = Mat::Identity(n, n);
  Mat sum = Mat::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

Algebra parse_algebra(std::string_view name) {
  if (name == "su") return Algebra::su;
  if (name == "so") return Algebra::so;
  if (name == "sl") return Algebra::sl;
  if (name == "u") return Algebra::u;
  if (name == "gl") return Algebra::gl;
  throw DimensionError("unknown Lie algebra '" + std::string(name) + "'");
}

bool algebra_membership(const Mat& x, Algebra which, double tol) {
  if (x.rows() != x.cols() || x.rows() == 0) return false;
  auto small = [&](const Mat& m) { return m.cwiseAbs().maxCoeff() <= tol; };
  bool skew_hermitian = small(x.adjoint() + x);
  bool traceless = std::abs(x.trace()) <= tol;
  switch (which) {
    case Algebra::su: return skew_hermitian && traceless;
    case Algebra::u: return skew_hermitian;
    case Algebra::sl: return traceless;
    case Algebra::so: return small(x.imag().cast<std::complex<double>>()) && small(x.transpose() + x);
    case Algebra::gl: return true;
  }
  return false;
}

Mat Ad(const Mat& g, const Mat& x) {
  require_square(g);
  if (g.rows() != x.rows() || x.rows() != x.cols()) throw DimensionError("Ad: size mismatch");
  Eigen::PartialPivLU<Mat> lu(g);
  if (std::abs(lu.determinant()) <= 1e-12) throw DivisionByZeroError("Ad: singular group element");
  return g * x * lu.inverse();
}

Mat ad(const Mat& x, const Mat& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols() || x.rows() != x.cols()) {
    throw DimensionError("ad: size mismatch");
  }
  return x * y - y * x;
}

std::array<Mat, 3> su2_basis() {
  using C = std::complex<double>;
  const C i(0, 1);
  Mat u1(2, 2), u2(2, 2), u3(2, 2);
  u1 << 0, i, i, 0;
  u2 << 0, -1, 1, 0;
  u3 << i, 0, 0, -i;
  return {u1, u2, u3};
}

}  // namespace darboux::lie
