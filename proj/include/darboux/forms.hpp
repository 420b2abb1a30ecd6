#pragma once

#include <map>
#include <string>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/expr_matrix.hpp"

namespace darboux {

/// Tangent vector field on a coordinate chart, one component per variable.
class VectorField {
 public:
  VectorField(VarCtx chart, std::vector<Expr> components);

  const VarCtx& chart() const { return chart_; }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& operator[](std::size_t i) const { return components_[i]; }

  /// Directional derivative X(f) = sum_i X^i df/dx_i.
  Expr apply(const Expr& f) const;
  VectorField simplified() const;
  bool is_zero() const;

 private:
  VarCtx chart_;
  std::vector<Expr> components_;
};

/// [X, Y]^i = X(Y^i) - Y(X^i).
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Map between charts, given by one expression in the source variables per
/// target variable.
struct SmoothMap {
  SmoothMap(VarCtx source, VarCtx target, std::vector<Expr> components);

  VarCtx source;
  VarCtx target;
  std::vector<Expr> components;
};

/// Differential k-form on a chart with scalar or square-matrix coefficients.
/// Only strictly increasing index tuples are stored, so antisymmetry is
/// structural; coefficients are kept simplified and zero terms dropped.
class DiffForm {
 public:
  using Index = std::vector<std::size_t>;
  using Terms = std::map<Index, ExprMatrix>;

  /// Zero form. `shape` 0 means scalar-valued, otherwise m x m matrices.
  DiffForm(VarCtx chart, int degree, std::size_t shape = 0);

  static DiffForm function(VarCtx chart, const Expr& f);
  static DiffForm matrix_function(VarCtx chart, const ExprMatrix& m);
  /// d(x_i) for the chart variable `name`.
  static DiffForm differential(VarCtx chart, const std::string& name);
  static DiffForm one_form(VarCtx chart, const std::vector<Expr>& coeffs);
  static DiffForm matrix_one_form(VarCtx chart, const std::vector<ExprMatrix>& coeffs);

  const VarCtx& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool is_scalar() const { return shape_ == 0; }
  /// Matrix size; 0 for scalar forms.
  std::size_t shape() const { return shape_; }
  const Terms& terms() const { return terms_; }

  /// Adds coeff * dx_{idx[0]} ^ ... ^ dx_{idx[k-1]}; `idx` may be unsorted.
  void add_term(Index idx, const ExprMatrix& coeff);
  void add_term(Index idx, const Expr& coeff);

  /// Coefficient at a sorted index (zero when absent).
  ExprMatrix coefficient(const Index& idx) const;
  Expr scalar_coefficient(const Index& idx) const;
  /// Coefficient of the 1-form along chart variable i.
  ExprMatrix component(std::size_t i) const { return coefficient({i}); }

  bool is_zero() const { return terms_.empty(); }

  DiffForm scaled(const Expr& c) const;
  DiffForm left_multiply(const ExprMatrix& m) const;
  DiffForm right_multiply(const ExprMatrix& m) const;
  /// Scalar form with the trace of each coefficient.
  DiffForm trace() const;

  std::string str() const;

  friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
  DiffForm operator-() const { return scaled(Expr(-1)); }

 private:
  ExprMatrix zero_coeff() const;

  VarCtx chart_;
  int degree_;
  std::size_t shape_;
  Terms terms_;
};

/// Graded product. Matrix coefficients multiply as matrices, so for a
/// matrix 1-form (A ^ A)(X, Y) = [A(X), A(Y)].
DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm ext_d(const DiffForm& a);
/// Contraction in the first slot.
DiffForm interior(const VectorField& x, const DiffForm& a);
DiffForm pullback(const SmoothMap& phi, const DiffForm& a);
/// a(X_1, ..., X_k) = i_{X_k} ... i_{X_1} a.
ExprMatrix evaluate(const DiffForm& a, const std::vector<VectorField>& vectors);

/// F = dA + A ^ A.
DiffForm curvature(const DiffForm& a);
/// A' = g A g^-1 - dg g^-1, the law under which a section transforms as
/// s -> g s and curvature as F -> g F g^-1.
DiffForm gauge_transform(const DiffForm& a, const ExprMatrix& g);
/// tr(A ^ dA + 2/3 A ^ A ^ A).
DiffForm chern_simons_form(const DiffForm& a);
/// tr(F ^ F).
DiffForm chern_form(const DiffForm& f);

/// Sum of dq_i ^ dp_i over the named pairs.
DiffForm canonical_symplectic_form(const VarCtx& chart, const std::vector<std::string>& qs,
                                   const std::vector<std::string>& ps);

}  // namespace darboux
