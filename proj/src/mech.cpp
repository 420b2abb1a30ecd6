#include "darboux/mech.hpp"

#include <cmath>
#include <utility>

#include "darboux/error.hpp"

namespace darboux::mech {

namespace {

VarCtx join(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return VarCtx(std::move(all));
}

}  // namespace

PhaseChart PhaseChart::standard(std::size_t n) {
  if (n == 0) throw DimensionError("phase space needs at least one degree of freedom");
  if (n == 1) return PhaseChart({"q"}, {"p"});
  std::vector<std::string> qs, ps;
  for (std::size_t i = 1; i <= n; ++i) {
    qs.push_back("q" + std::to_string(i));
    ps.push_back("p" + std::to_string(i));
  }
  return PhaseChart(std::move(qs), std::move(ps));
}

PhaseChart::PhaseChart(std::vector<std::string> qs, std::vector<std::string> ps)
    : qs_(std::move(qs)), ps_(std::move(ps)), ctx_(join(qs_, ps_)) {
  if (qs_.empty() || qs_.size() != ps_.size()) throw DimensionError("need equally many q and p variables");
}

DiffForm PhaseChart::omega() const { return canonical_symplectic_form(ctx_, qs_, ps_); }

void PhaseChart::check(const Expr& f) const {
  for (const auto& s : f.free_symbols()) {
    if (!ctx_.contains(s) && s != "hbar" && s != "pi") {
      throw DimensionError("foreign variable '" + s + "' outside the phase-space chart");
    }
  }
}

VectorField hamiltonian_vf(const Expr& f, const PhaseChart& chart) {
  chart.check(f);
  std::vector<Expr> c(2 * chart.n());
  for (std::size_t i = 0; i < chart.n(); ++i) {
    c[i] = simplify(differentiate(f, chart.ps()[i]));
    c[chart.n() + i] = simplify(-differentiate(f, chart.qs()[i]));
  }
  return VectorField(chart.ctx(), std::move(c));
}

VectorField hamiltonian_vf(const Expr& f, std::size_t n) { return hamiltonian_vf(f, PhaseChart::standard(n)); }

Expr poisson(const Expr& f, const Expr& g, const PhaseChart& chart) {
  chart.check(f);
  chart.check(g);
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < chart.n(); ++i) {
    const auto& q = chart.qs()[i];
    const auto& p = chart.ps()[i];
    terms.push_back(differentiate(f, p) * differentiate(g, q));
    terms.push_back(-(differentiate(f, q) * differentiate(g, p)));
  }
  return simplify(Expr::sum(std::move(terms)));
}

Expr poisson(const Expr& f, const Expr& g, std::size_t n) { return poisson(f, g, PhaseChart::standard(n)); }

VectorField bracket_homomorphism_residual(const Expr& f, const Expr& g, const PhaseChart& chart) {
  VectorField comm = lie_bracket(hamiltonian_vf(f, chart), hamiltonian_vf(g, chart));
  VectorField xfg = hamiltonian_vf(poisson(f, g, chart), chart);
  std::vector<Expr> c;
  for (std::size_t i = 0; i < comm.components().size(); ++i) c.push_back(simplify(comm[i] - xfg[i]));
  return VectorField(chart.ctx(), std::move(c));
}

HamiltonianSystem::HamiltonianSystem(PhaseChart c, Expr h) : chart(std::move(c)), hamiltonian(std::move(h)) {
  chart.check(hamiltonian);
}

Trajectory flow_integrate(const HamiltonianSystem& sys, std::span<const double> x0, double t_end, double h) {
  const std::size_t dim = sys.chart.ctx().size();
  if (!(h > 0) || !std::isfinite(h)) throw DimensionError("step size must be positive");
  if (!(t_end >= 0) || !std::isfinite(t_end)) throw DimensionError("duration must be non-negative");
  if (x0.size() != dim) throw DimensionError("initial state has the wrong length");

  VectorField xh = hamiltonian_vf(sys.hamiltonian, sys.chart);
  std::vector<CompiledExpr> rhs;
  for (const auto& c : xh.components()) rhs.emplace_back(c, sys.chart.ctx());

  using State = std::vector<double>;
  auto field = [&](const State& x) {
    State out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = rhs[i](std::span<const double>(x)).real();
    return out;
  };
  auto axpy = [&](const State& x, double a, const State& k) {
    State out(dim);
    for (std::size_t i = 0; i < dim; ++i) out[i] = x[i] + a * k[i];
    return out;
  };

  Trajectory traj;
  State x(x0.begin(), x0.end());
  double t = 0;
  traj.times.push_back(t);
  traj.states.push_back(x);
  // floor(T/h) steps; the last one absorbs the remainder and lands on T.
  const auto steps = static_cast<std::size_t>(std::floor(t_end / h * (1 + 1e-12)));
  for (std::size_t step = 1; step <= steps; ++step) {
    double dt = step == steps ? t_end - t : h;
    State k1 = field(x);
    State k2 = field(axpy(x, dt / 2, k1));
    State k3 = field(axpy(x, dt / 2, k2));
    State k4 = field(axpy(x, dt, k3));
    for (std::size_t i = 0; i < dim; ++i) x[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    for (double v : x) {
      if (!std::isfinite(v)) throw NonFiniteError("non-finite state in Hamiltonian flow", step);
    }
    t = step == steps ? t_end : t + dt;
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

DiffForm moment_condition_residual(const VectorField& x, const Expr& mu, const PhaseChart& chart) {
  if (x.chart() != chart.ctx()) throw DimensionError("vector field is not on the phase-space chart");
  chart.check(mu);
  for (const auto& c : x.components()) chart.check(c);
  return interior(x, chart.omega()) - ext_d(DiffForm::function(chart.ctx(), mu));
}

Expr noether_residual(const Expr& f, const Expr& mu, const PhaseChart& chart) {
  Expr lf = hamiltonian_vf(f, chart).apply(mu);
  Expr lmu = hamiltonian_vf(mu, chart).apply(f);
  return simplify(lf + lmu);
}

}  // namespace darboux::mech
