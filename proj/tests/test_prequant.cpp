#include "doctest.h"
#include "generators.hpp"

#include "darboux/error.hpp"
#include "darboux/prequant.hpp"

using namespace darboux;
using namespace darboux::prequant;

namespace {

Expr P(const char* s) { return parse(s); }

}  // namespace

TEST_CASE("worked operators") {
  auto conn = PrequantConnection::standard(1);
  for (int trial = 0; trial < 10; ++trial) {
    Expr psi = testgen::random_poly({"q", "p", "hbar"}, 3);
    Expr dq = differentiate(psi, "q"), dp = differentiate(psi, "p");
    CHECK(is_zero(prequant_op(P("q"), conn, psi) - P("i*hbar") * dp));
    CHECK(is_zero(prequant_op(P("p"), conn, psi) - (P("-i*hbar") * dq - P("p") * psi)));
    CHECK(is_zero(prequant_op(P("1"), conn, psi) + psi));
  }
  CHECK(prequant_op(P("q"), conn, P("p^2")).str() == "2*i*hbar*p");
  CHECK_THROWS_AS(prequant_op(P("q"), conn, P("x")), DimensionError);
}

TEST_CASE("Q is linear in f") {
  auto conn = PrequantConnection::standard(2);
  const auto& v = conn.chart().ctx().names();
  for (int trial = 0; trial < 10; ++trial) {
    Expr f = testgen::random_poly(v, 2), g = testgen::random_poly(v, 2), s = testgen::random_poly(v, 2);
    Expr c = P("3/2 - 2*i");
    Expr lhs = prequant_op(c * f + g, conn, s);
    CHECK(is_zero(lhs - c * prequant_op(f, conn, s) - prequant_op(g, conn, s)));
  }
}

TEST_CASE("quantum condition") {
  auto conn = PrequantConnection::standard(1);
  CHECK(quantum_condition_residual(P("q"), P("p"), conn, P("1")).is_zero_constant());
  CHECK(quantum_condition_residual(P("q^2"), P("p^2"), conn, P("q*p")).is_zero_constant());
  CHECK(quantum_condition_residual(P("q*p^2"), P("q*p^2"), conn, P("q + p")).is_zero_constant());
  // [Q(p), Q(q)] is multiplication by i*hbar
  Expr s = P("q^2*p - 3*p");
  Expr comm = prequant_op(P("p"), conn, prequant_op(P("q"), conn, s)) -
              prequant_op(P("q"), conn, prequant_op(P("p"), conn, s));
  CHECK(is_zero(comm - P("i*hbar") * s));

  const char* fs[] = {"1", "q", "p", "q^2", "p^2", "q*p"};
  const char* ss[] = {"1", "q", "p", "q*p"};
  for (auto f : fs)
    for (auto g : fs)
      for (auto sec : ss) CHECK(quantum_condition_residual(P(f), P(g), conn, P(sec)).is_zero_constant());

  auto conn3 = PrequantConnection::standard(3);
  const auto& v = conn3.chart().ctx().names();
  for (int trial = 0; trial < 10; ++trial) {
    CHECK(quantum_condition_residual(testgen::random_poly(v, 2), testgen::random_poly(v, 2), conn3,
                                     testgen::random_poly(v, 2))
              .is_zero_constant());
  }
}

TEST_CASE("curvature of the prequantum connection") {
  CHECK(curvature_check(PrequantConnection::standard(1)).is_zero());
  CHECK(curvature_check(PrequantConnection::standard(3)).is_zero());
  auto std1 = PrequantConnection::standard(1);
  auto perturbed = PrequantConnection(std1.chart(), std1.form() + DiffForm::one_form(std1.chart().ctx(), {0, P("q")}));
  auto res = curvature_check(perturbed);
  CHECK_FALSE(res.is_zero());
  CHECK((res - std1.chart().omega()).is_zero());
}
