#pragma once

#include <span>
#include <string>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/forms.hpp"

namespace darboux::mech {

/// Phase-space coordinates (q_1..q_n, p_1..p_n) with omega = sum dq_i ^ dp_i.
class PhaseChart {
 public:
  /// q, p for n = 1, otherwise q1..qn, p1..pn.
  static PhaseChart standard(std::size_t n);
  PhaseChart(std::vector<std::string> qs, std::vector<std::string> ps);

  std::size_t n() const { return qs_.size(); }
  const std::vector<std::string>& qs() const { return qs_; }
  const std::vector<std::string>& ps() const { return ps_; }
  /// q variables followed by p variables.
  const VarCtx& ctx() const { return ctx_; }
  DiffForm omega() const;
  /// Throws DimensionError if `f` uses a symbol outside the chart
  /// (`hbar` and `pi` are allowed as parameters).
  void check(const Expr& f) const;

 private:
  std::vector<std::string> qs_, ps_;
  VarCtx ctx_;
};

/// X_f = sum df/dp_i d/dq_i - df/dq_i d/dp_i, so that i_{X_f} omega = df.
VectorField hamiltonian_vf(const Expr& f, const PhaseChart& chart);
VectorField hamiltonian_vf(const Expr& f, std::size_t n);

/// {f, g} = sum df/dp_i dg/dq_i - df/dq_i dg/dp_i; {q, p} = -1.
Expr poisson(const Expr& f, const Expr& g, const PhaseChart& chart);
Expr poisson(const Expr& f, const Expr& g, std::size_t n);

/// [X_f, X_g] - X_{f, g}, simplified; identically zero.
VectorField bracket_homomorphism_residual(const Expr& f, const Expr& g, const PhaseChart& chart);

struct HamiltonianSystem {
  HamiltonianSystem(PhaseChart chart, Expr h);
  PhaseChart chart;
  Expr hamiltonian;
};

struct Trajectory {
  std::vector<double> times;
  /// One state (q..., p...) per time.
  std::vector<std::vector<double>> states;
};

/// Classical fixed-step RK4 for Hamilton's equations: floor(T/h) steps of
/// size h, the last one stretched by the remainder so it lands exactly on T.
/// The trajectory has floor(T/h) + 1 samples.
/// Throws NonFiniteError with the offending step index.
Trajectory flow_integrate(const HamiltonianSystem& sys, std::span<const double> x0, double t_end,
                          double h);

/// i_X omega - d mu on the chart's symplectic form; zero iff mu is a
/// Hamiltonian for X.
DiffForm moment_condition_residual(const VectorField& x, const Expr& mu, const PhaseChart& chart);

/// L_{X_f} mu + L_{X_mu} f, which vanishes identically.
Expr noether_residual(const Expr& f, const Expr& mu, const PhaseChart& chart);

}  // namespace darboux::mech
