#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "darboux/expr.hpp"

namespace darboux {

/// Dense matrix of symbolic expressions, row-major.
class ExprMatrix {
 public:
  ExprMatrix() = default;
  ExprMatrix(std::size_t rows, std::size_t cols);
  ExprMatrix(std::initializer_list<std::initializer_list<Expr>> rows);
  explicit ExprMatrix(const std::vector<std::vector<Expr>>& rows);

  static ExprMatrix identity(std::size_t n);
  static ExprMatrix scalar(Expr e) { return ExprMatrix{{std::move(e)}}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  Expr& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Expr& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  ExprMatrix transpose() const;
  Expr trace() const;
  /// Laplace expansion, simplified.
  Expr determinant() const;
  /// Entrywise `simplify`.
  ExprMatrix simplified() const;
  /// True when every entry simplifies to zero.
  bool is_zero() const;
  ExprMatrix scaled(const Expr& c) const;
  ExprMatrix differentiate(const std::string& v) const;
  ExprMatrix substitute(const std::map<std::string, Expr>& values) const;
  /// Gauss-Jordan over rational functions. Throws DivisionByZeroError when
  /// no nonzero pivot can be found.
  ExprMatrix inverse() const;

  std::string str() const;

  friend ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);
  friend ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b);
  friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
  ExprMatrix operator-() const { return scaled(Expr(-1)); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Expr> data_;
};

/// a - b simplifies to the zero matrix.
bool equivalent(const ExprMatrix& a, const ExprMatrix& b);

}  // namespace darboux
