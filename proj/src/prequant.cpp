#include "darboux/prequant.hpp"

#include <utility>

#include "darboux/error.hpp"

namespace darboux::prequant {

namespace {

const Expr& hbar() {
  static const Expr h = Expr::var("hbar");
  return h;
}

Expr i_over_hbar() { return Expr::imaginary_unit() / hbar(); }

}  // namespace

PrequantConnection PrequantConnection::standard(std::size_t n) {
  auto chart = mech::PhaseChart::standard(n);
  DiffForm a(chart.ctx(), 1);
  for (std::size_t i = 0; i < n; ++i) {
    a.add_term({chart.ctx().index_of(chart.ps()[i])}, -i_over_hbar() * Expr::var(chart.qs()[i]));
  }
  return PrequantConnection(std::move(chart), std::move(a));
}

PrequantConnection::PrequantConnection(mech::PhaseChart chart, DiffForm a)
    : chart_(std::move(chart)), a_(std::move(a)) {
  if (a_.chart() != chart_.ctx() || a_.degree() != 1 || !a_.is_scalar()) {
    throw DimensionError("prequantum connection must be a scalar 1-form on the phase-space chart");
  }
}

Expr prequant_op(const Expr& f, const PrequantConnection& conn, const Expr& s) {
  conn.chart().check(s);
  VectorField xf = mech::hamiltonian_vf(f, conn.chart());
  Expr ax = evaluate(conn.form(), {xf})(0, 0);
  Expr nabla = xf.apply(s) + ax * s;
  return simplify(-Expr::imaginary_unit() * hbar() * nabla - f * s);
}

Expr quantum_condition_residual(const Expr& f, const Expr& g, const PrequantConnection& conn, const Expr& s) {
  Expr fg = prequant_op(f, conn, prequant_op(g, conn, s));
  Expr gf = prequant_op(g, conn, prequant_op(f, conn, s));
  Expr bracket = mech::poisson(f, g, conn.chart());
  return simplify(fg - gf + Expr::imaginary_unit() * hbar() * prequant_op(bracket, conn, s));
}

DiffForm curvature_check(const PrequantConnection& conn) {
  return curvature(conn.form()) + conn.chart().omega().scaled(i_over_hbar());
}

}  // namespace darboux::prequant
