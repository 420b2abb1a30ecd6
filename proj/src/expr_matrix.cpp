#include "darboux/expr_matrix.hpp"

#include <utility>

#include "darboux/error.hpp"

namespace darboux {

ExprMatrix::ExprMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ExprMatrix::ExprMatrix(std::initializer_list<std::initializer_list<Expr>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ExprMatrix::ExprMatrix(const std::vector<std::vector<Expr>>& rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.front().size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

ExprMatrix ExprMatrix::transpose() const {
  ExprMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Expr ExprMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  std::vector<Expr> d;
  for (std::size_t i = 0; i < rows_; ++i) d.push_back((*this)(i, i));
  return simplify(Expr::sum(std::move(d)));
}

namespace {

Expr laplace(const ExprMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  if (row == m.rows()) return Expr(1);
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (m(row, c).is_zero_constant()) continue;
    cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
    Expr minor = laplace(m, cols, row + 1);
    cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
    Expr t = m(row, c) * minor;
    terms.push_back(k % 2 ? -t : t);
  }
  return terms.empty() ? Expr() : Expr::sum(std::move(terms));
}

}  // namespace

Expr ExprMatrix::determinant() const {
  if (!is_square()) throw DimensionError("determinant of a non-square matrix");
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < cols_; ++c) cols.push_back(c);
  return simplify(laplace(*this, cols, 0));
}

ExprMatrix ExprMatrix::simplified() const {
  ExprMatrix out = *this;
  for (auto& e : out.data_) e = simplify(e);
  return out;
}

bool ExprMatrix::is_zero() const {
  for (const auto& e : data_) {
    if (!simplify(e).is_zero_constant()) return false;
  }
  return true;
}

ExprMatrix ExprMatrix::scaled(const Expr& c) const {
  ExprMatrix out = *this;
  for (auto& e : out.data_) e = c * e;
  return out;
}

ExprMatrix ExprMatrix::differentiate(const std::string& v) const {
  ExprMatrix out = *this;
  for (auto& e : out.data_) e = darboux::differentiate(e, v);
  return out;
}

ExprMatrix ExprMatrix::substitute(const std::map<std::string, Expr>& values) const {
  ExprMatrix out = *this;
  for (auto& e : out.data_) e = e.substitute(values);
  return out;
}

ExprMatrix ExprMatrix::inverse() const {
  if (!is_square()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = rows_;
  std::vector<std::vector<RatFunc>> a(n, std::vector<RatFunc>(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r][c] = to_ratfunc(simplify((*this)(r, c)), false);
    a[r][n + r] = RatFunc(Poly(1));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) throw DivisionByZeroError("matrix is symbolically singular");
    std::swap(a[piv], a[c]);
    RatFunc inv = a[c][c].inverse();
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      RatFunc f = a[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  ExprMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = simplify(from_ratfunc(a[r][n + c]));
  return out;
}

std::string ExprMatrix::str() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += (*this)(r, c).str();
    }
    s += "]";
  }
  return s + "]";
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
  ExprMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
  return out;
}

ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b) { return a + (-b); }

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
  ExprMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < b.cols_; ++j) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero_constant() || b(k, j).is_zero_constant()) continue;
        terms.push_back(a(i, k) * b(k, j));
      }
      out(i, j) = terms.empty() ? Expr() : Expr::sum(std::move(terms));
    }
  }
  return out;
}

bool equivalent(const ExprMatrix& a, const ExprMatrix& b) { return (a - b).is_zero(); }

}  // namespace darboux
