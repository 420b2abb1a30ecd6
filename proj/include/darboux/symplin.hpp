#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace darboux::symplin {

/// Dense exact rational matrix, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::initializer_list<std::initializer_list<mpq_class>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(const std::vector<mpq_class>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpq_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpq_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QMatrix transpose() const;
  /// Gauss-Jordan inverse; throws DimensionError when singular.
  QMatrix inverse() const;
  std::size_t rank() const;
  std::vector<mpq_class> column(std::size_t c) const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend bool operator==(const QMatrix& a, const QMatrix& b);
  friend bool operator!=(const QMatrix& a, const QMatrix& b) { return !(a == b); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<mpq_class> data_;
};

/// Skew-symmetric bilinear form on Q^dim.
class SkewForm {
 public:
  /// Throws DimensionError unless `m` is square, non-empty and m^T = -m.
  explicit SkewForm(QMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const QMatrix& matrix() const { return m_; }
  mpq_class pairing(const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) const;

 private:
  QMatrix m_;
};

/// Basis B whose columns are u_1..u_k (kernel), e_1..e_n, f_1..f_n, so
/// that B^T Omega B = block-diag(0_k, J) with Omega(e_i, f_j) = delta_ij.
struct CanonicalDecomposition {
  QMatrix basis;
  std::size_t kernel_dim = 0;
  std::size_t pairs = 0;
};

/// block-diag(0_k, J) where J = [[0, I_n], [-I_n, 0]].
QMatrix standard_form(std::size_t kernel_dim, std::size_t pairs);

/// Symplectic Gram-Schmidt. The pivot is the first nonzero entry of the
/// Gram matrix of the remaining vectors in column-major order: its column
/// supplies e, its row (rescaled) supplies f.
CanonicalDecomposition canonical_decomposition(const SkewForm& omega);

bool is_symplectic(const SkewForm& omega);

/// True iff phi^T * to * phi == from, i.e. phi pulls `to` back to `from`.
bool is_linear_symplectomorphism(const QMatrix& phi, const SkewForm& from, const SkewForm& to);

}  // namespace darboux::symplin
