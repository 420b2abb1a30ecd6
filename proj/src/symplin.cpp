#include "darboux/symplin.hpp"

#include <utility>

#include "darboux/error.hpp"

namespace darboux::symplin {

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpq_class(0)) {}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<mpq_class>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    for (const auto& v : r) data_.push_back(v);
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::diagonal(const std::vector<mpq_class>& d) {
  QMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

std::vector<mpq_class> QMatrix::column(std::size_t c) const {
  std::vector<mpq_class> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  QMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpq_class& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

namespace {

// Row-reduces `m` in place (alongside `aug` when given); returns the rank.
std::size_t row_reduce(QMatrix& m, QMatrix* aug) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && sgn(m(piv, c)) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != rank) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
      if (aug) {
        for (std::size_t j = 0; j < aug->cols(); ++j) std::swap((*aug)(piv, j), (*aug)(rank, j));
      }
    }
    mpq_class inv = 1 / m(rank, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(rank, j) *= inv;
    if (aug) {
      for (std::size_t j = 0; j < aug->cols(); ++j) (*aug)(rank, j) *= inv;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == rank || sgn(m(r, c)) == 0) continue;
      mpq_class f = m(r, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) -= f * m(rank, j);
      if (aug) {
        for (std::size_t j = 0; j < aug->cols(); ++j) (*aug)(r, j) -= f * (*aug)(rank, j);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

QMatrix QMatrix::inverse() const {
  if (rows_ != cols_) throw DimensionError("inverse of a non-square matrix");
  QMatrix work = *this;
  QMatrix inv = identity(rows_);
  if (row_reduce(work, &inv) != rows_) throw DimensionError("singular matrix");
  return inv;
}

std::size_t QMatrix::rank() const {
  QMatrix work = *this;
  return row_reduce(work, nullptr);
}

SkewForm::SkewForm(QMatrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw DimensionError("skew form needs a non-empty square matrix");
  }
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      if (m_(i, j) != -m_(j, i)) throw DimensionError("matrix is not skew-symmetric");
    }
  }
}

mpq_class SkewForm::pairing(const std::vector<mpq_class>& u, const std::vector<mpq_class>& v) const {
  mpq_class s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (sgn(u[i]) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (sgn(v[j]) != 0) s += u[i] * m_(i, j) * v[j];
    }
  }
  return s;
}

QMatrix standard_form(std::size_t kernel_dim, std::size_t pairs) {
  QMatrix m(kernel_dim + 2 * pairs, kernel_dim + 2 * pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    m(kernel_dim + i, kernel_dim + pairs + i) = 1;
    m(kernel_dim + pairs + i, kernel_dim + i) = -1;
  }
  return m;
}

CanonicalDecomposition canonical_decomposition(const SkewForm& omega) {
  using Vec = std::vector<mpq_class>;
  const std::size_t n = omega.dim();
  std::vector<Vec> remaining;
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, mpq_class(0));
    e[i] = 1;
    remaining.push_back(std::move(e));
  }

  std::vector<Vec> es, fs;
  while (true) {
    // Column-major scan of the Gram matrix of the remaining vectors.
    std::size_t col = remaining.size(), row = 0;
    mpq_class w;
    for (std::size_t c = 0; c < remaining.size() && col == remaining.size(); ++c) {
      for (std::size_t r = 0; r < remaining.size(); ++r) {
        if (r == c) continue;
        mpq_class g = omega.pairing(remaining[c], remaining[r]);
        if (sgn(g) != 0) {
          col = c;
          row = r;
          w = g;
          break;
        }
      }
    }
    if (col == remaining.size()) break;

    Vec e = remaining[col];
    Vec f = remaining[row];
    for (auto& x : f) x /= w;

    std::vector<Vec> next;
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      if (k == col || k == row) continue;
      // v - Omega(v, f) e + Omega(v, e) f is Omega-orthogonal to e and f.
      Vec v = remaining[k];
      mpq_class vf = omega.pairing(v, f);
      mpq_class ve = omega.pairing(v, e);
      for (std::size_t i = 0; i < n; ++i) v[i] += ve * f[i] - vf * e[i];
      next.push_back(std::move(v));
    }
    remaining = std::move(next);
    es.push_back(std::move(e));
    fs.push_back(std::move(f));
  }

  CanonicalDecomposition out;
  out.kernel_dim = remaining.size();
  out.pairs = es.size();
  out.basis = QMatrix(n, n);
  std::size_t c = 0;
  for (const auto* group : {&remaining, &es, &fs}) {
    for (const auto& v : *group) {
      for (std::size_t i = 0; i < n; ++i) out.basis(i, c) = v[i];
      ++c;
    }
  }
  return out;
}

bool is_symplectic(const SkewForm& omega) { return canonical_decomposition(omega).kernel_dim == 0; }

bool is_linear_symplectomorphism(const QMatrix& phi, const SkewForm& from, const SkewForm& to) {
  if (phi.rows() != to.dim() || phi.cols() != from.dim()) {
    throw DimensionError("symplectomorphism shape does not match the forms");
  }
  if (phi.rows() != phi.cols()) throw DimensionError("symplectomorphism must be square");
  return phi.transpose() * to.matrix() * phi == from.matrix();
}

}  // namespace darboux::symplin
