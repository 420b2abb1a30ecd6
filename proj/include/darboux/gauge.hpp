#pragma once

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/forms.hpp"
#include "darboux/lie.hpp"

namespace darboux::gauge {

using lie::Mat;

/// Curve on [0, 1] in a chart: either symbolic components in a parameter,
/// or a polyline whose segments each take an equal share of the interval.
class PathCurve {
 public:
  static PathCurve symbolic(VarCtx chart, std::vector<Expr> components, std::string param = "t");
  static PathCurve polyline(VarCtx chart, std::vector<std::vector<double>> points);

  const VarCtx& chart() const { return chart_; }
  bool is_polyline() const { return !points_.empty(); }
  const std::vector<std::vector<double>>& points() const { return points_; }
  /// Number of pieces with their own smooth parameterization.
  std::size_t segments() const { return is_polyline() ? points_.size() - 1 : 1; }

  std::vector<double> point(double t) const;
  /// Velocity at t; `segment` selects the side at polyline corners.
  std::vector<double> velocity(double t, std::size_t segment) const;
  std::size_t segment_of(double t) const;

  bool is_closed(double tol = 1e-12) const;
  PathCurve reversed() const;

 private:
  VarCtx chart_;
  std::vector<std::vector<double>> points_;
  std::string param_;
  std::vector<Expr> components_, derivatives_;
  std::vector<CompiledExpr> compiled_, compiled_derivatives_;
};

enum class Method { rk4, prodexp };
Method parse_method(std::string_view name);

/// Gamma(t) = sum_mu A_mu(gamma(t)) dgamma^mu/dt.
Mat transport_coefficient(const DiffForm& a, const PathCurve& curve, double t);

/// Solves dg/dt = -Gamma(t) g, g(0) = g0 with N steps. rk4 is the classical
/// scheme; prodexp multiplies exp(-Gamma(t_mid) dt) factors on the left.
/// For polylines the steps are shared out over segments so that no step
/// straddles a corner.
Mat parallel_transport(const DiffForm& a, const PathCurve& curve, const Mat& g0, Method method,
                       std::size_t steps);

/// Transport around a closed curve starting from the identity.
Mat holonomy(const DiffForm& a, const PathCurve& loop, Method method, std::size_t steps);

/// tr P exp(i oint A) in the defining representation.
std::complex<double> wilson_loop(const DiffForm& a, const PathCurve& loop, Method method,
                                 std::size_t steps);

/// Componentwise Y(s) + A(Y) s.
std::vector<Expr> covariant_derivative_section(const std::vector<Expr>& s, const VectorField& y,
                                               const DiffForm& a);

}  // namespace darboux::gauge
