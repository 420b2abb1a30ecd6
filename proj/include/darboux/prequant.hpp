#pragma once

#include "darboux/expr.hpp"
#include "darboux/forms.hpp"
#include "darboux/mech.hpp"

namespace darboux::prequant {

/// Connection d + A on the trivial line bundle over a phase-space chart.
class PrequantConnection {
 public:
  /// A = -(i/hbar) sum q_i dp_i on the standard chart with n freedoms.
  static PrequantConnection standard(std::size_t n);
  PrequantConnection(mech::PhaseChart chart, DiffForm a);

  const mech::PhaseChart& chart() const { return chart_; }
  const DiffForm& form() const { return a_; }

 private:
  mech::PhaseChart chart_;
  DiffForm a_;
};

/// Q(f) s = -i hbar (X_f(s) + A(X_f) s) - f s.
Expr prequant_op(const Expr& f, const PrequantConnection& conn, const Expr& s);

/// [Q(f), Q(g)] s + i hbar Q({f, g}) s, simplified.
Expr quantum_condition_residual(const Expr& f, const Expr& g, const PrequantConnection& conn, const Expr& s);

/// curvature(A) + (i/hbar) omega; the zero form for the standard connection.
DiffForm curvature_check(const PrequantConnection& conn);

}  // namespace darboux::prequant
