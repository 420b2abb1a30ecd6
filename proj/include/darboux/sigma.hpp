#pragma once

#include <span>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/expr_matrix.hpp"
#include "darboux/forms.hpp"
#include "darboux/gauge.hpp"

namespace darboux::sigma {

/// Riemannian (or pseudo-Riemannian) metric g_ij on a chart.
class Metric {
 public:
  /// Throws DimensionError unless g is square, chart-sized and symmetric,
  /// and DivisionByZeroError if det g is symbolically zero.
  Metric(VarCtx chart, ExprMatrix g);

  const VarCtx& chart() const { return chart_; }
  std::size_t dim() const { return chart_.size(); }
  const ExprMatrix& g() const { return g_; }
  const ExprMatrix& inverse() const { return inv_; }
  const Expr& determinant() const { return det_; }

 private:
  VarCtx chart_;
  ExprMatrix g_, inv_;
  Expr det_;
};

/// gamma[i][j][k] = Gamma^i_{jk}.
using Christoffel = std::vector<std::vector<std::vector<Expr>>>;

/// Gamma^i_{jk} = 1/2 g^{il} (d_j g_{kl} + d_k g_{jl} - d_l g_{jk}).
Christoffel christoffel(const Metric& g);

struct GeodesicTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> positions;
  std::vector<std::vector<double>> velocities;
};

/// RK4 on (x, v) for x'' + Gamma(x)(x', x') = 0, with the same stepping rule
/// as the Hamiltonian flow. Throws NonFiniteError, or DivisionByZeroError
/// where the metric degenerates.
GeodesicTrajectory geodesic_integrate(const Metric& g, std::span<const double> x0, std::span<const double> v0,
                                      double t_end, double h);

/// Composite midpoint rule for int g_ij(f) f'^i f'^j dt over [t0, t1].
double energy(const gauge::PathCurve& path, const Metric& g, std::size_t n, double t0 = 0.0, double t1 = 1.0);

/// Euler-Lagrange residual of the energy of f: (source chart) -> (target
/// chart). The Laplace-Beltrami term is expanded as
/// d_a(gamma^ab d_b f) + gamma^ab d_b f d_a(det gamma) / (2 det gamma),
/// which equals the radical form and needs no square roots.
std::vector<Expr> harmonic_residual(const SmoothMap& f, const Metric& source, const Metric& target);

}  // namespace darboux::sigma
