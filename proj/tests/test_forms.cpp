#include "doctest.h"
#include "generators.hpp"

#include "darboux/error.hpp"
#include "darboux/forms.hpp"

using namespace darboux;

namespace {

const Expr I = Expr::imaginary_unit();

ExprMatrix u1() { return ExprMatrix{{0, I}, {I, 0}}; }
ExprMatrix u2() { return ExprMatrix{{0, -1}, {1, 0}}; }
ExprMatrix u3() { return ExprMatrix{{I, 0}, {0, -I}}; }

Expr P(const char* s) { return parse(s); }

bool zero_form(const DiffForm& f) { return f.is_zero(); }

bool same_form(const DiffForm& a, const DiffForm& b) { return (a - b).is_zero(); }

const VarCtx XY{"x", "y"};
const VarCtx QP{"q", "p"};

}  // namespace

TEST_CASE("wedge is graded antisymmetric") {
  auto dx = DiffForm::differential(XY, "x");
  auto dy = DiffForm::differential(XY, "y");
  CHECK(same_form(wedge(dx, dy), -wedge(dy, dx)));
  CHECK(wedge(dx, dy).scalar_coefficient({0, 1}).is_one_constant());
  auto alpha = DiffForm::one_form(XY, {P("x*y"), P("x^2 - 3")});
  CHECK(zero_form(wedge(alpha, alpha)));
  CHECK_THROWS_AS(wedge(wedge(dx, dy), dx), DimensionError);
}

TEST_CASE("matrix wedge of su(2) connection") {
  auto a = DiffForm::matrix_one_form(XY, {u1(), u2()});
  auto aa = wedge(a, a);
  CHECK(aa.degree() == 2);
  CHECK(equivalent(aa.coefficient({0, 1}), u3().scaled(2)));
}

TEST_CASE("wedge evaluation convention") {
  // (alpha ^ beta)(X, Y) = alpha(X) beta(Y) - alpha(Y) beta(X)
  for (int trial = 0; trial < 10; ++trial) {
    auto a = testgen::random_form(XY, 1, 0);
    auto b = testgen::random_form(XY, 1, 0);
    VectorField x(XY, {testgen::random_poly(XY.names(), 1), testgen::random_poly(XY.names(), 1)});
    VectorField y(XY, {testgen::random_poly(XY.names(), 1), testgen::random_poly(XY.names(), 1)});
    Expr lhs = evaluate(wedge(a, b), {x, y})(0, 0);
    Expr rhs = evaluate(a, {x})(0, 0) * evaluate(b, {y})(0, 0) - evaluate(a, {y})(0, 0) * evaluate(b, {x})(0, 0);
    CHECK(is_zero(lhs - rhs));
  }
}

TEST_CASE("exterior derivative examples") {
  auto w = DiffForm::one_form(XY, {P("-y/(x^2 + y^2)"), P("x/(x^2 + y^2)")});
  CHECK(zero_form(ext_d(w)));
  auto qdp = DiffForm::one_form(QP, {Expr(), P("q")});
  CHECK(same_form(ext_d(qdp), canonical_symplectic_form(QP, {"q"}, {"p"})));
  VarCtx xyz{"x", "y", "z"};
  for (int trial = 0; trial < 10; ++trial) {
    auto f = DiffForm::function(xyz, testgen::random_poly(xyz.names(), 4));
    CHECK(zero_form(ext_d(ext_d(f))));
  }
}

TEST_CASE("interior product examples") {
  VarCtx polar{"r", "theta"};
  DiffForm w(polar, 2);
  w.add_term({0, 1}, P("r"));
  VectorField dtheta(polar, {Expr(), Expr(1)});
  auto expected = DiffForm::one_form(polar, {P("-r"), Expr()});
  CHECK(same_form(interior(dtheta, w), expected));

  Expr f = P("x^3*y - 2*y");
  VectorField x(XY, {P("y"), P("x + 1")});
  CHECK(is_zero(interior(x, ext_d(DiffForm::function(XY, f))).scalar_coefficient({}) - x.apply(f)));

  VarCtx xyz{"x", "y", "z"};
  for (int trial = 0; trial < 10; ++trial) {
    auto a = testgen::random_form(xyz, testgen::uniform_int(2, 3), 0);
    VectorField v(xyz, {testgen::random_poly(xyz.names(), 2), testgen::random_poly(xyz.names(), 2),
                        testgen::random_poly(xyz.names(), 2)});
    CHECK(zero_form(interior(v, interior(v, a))));
  }
  CHECK_THROWS_AS(interior(x, DiffForm::function(XY, f)), DimensionError);
}

TEST_CASE("pullback examples") {
  auto dxdy = wedge(DiffForm::differential(XY, "x"), DiffForm::differential(XY, "y"));
  SmoothMap id(XY, XY, {P("x"), P("y")});
  CHECK(same_form(pullback(id, dxdy), dxdy));

  VarCtx polar{"r", "theta"};
  SmoothMap to_cart(polar, XY, {P("r*cos(theta)"), P("r*sin(theta)")});
  auto pb = pullback(to_cart, dxdy);
  // chain-rule oracle: the Jacobian determinant
  Expr j = differentiate(to_cart.components[0], "r") * differentiate(to_cart.components[1], "theta") -
           differentiate(to_cart.components[0], "theta") * differentiate(to_cart.components[1], "r");
  CHECK(simplify(pb.scalar_coefficient({0, 1}) - j).is_zero_constant());
  CHECK(pb.scalar_coefficient({0, 1}).str() == "r");

  SmoothMap squeeze(QP, QP, {P("2*q"), P("p/2")});
  auto om = canonical_symplectic_form(QP, {"q"}, {"p"});
  CHECK(same_form(pullback(squeeze, om), om));

  CHECK_THROWS_AS(pullback(to_cart, DiffForm::differential(polar, "r")), DimensionError);
}

TEST_CASE("curvature examples") {
  auto zero = DiffForm(XY, 1, 2);
  CHECK(zero_form(curvature(zero)));

  Expr f = P("x^2*y + 3*y^3");
  auto abelian = DiffForm::matrix_one_form(XY, {u3().scaled(f), ExprMatrix(2, 2)});
  DiffForm expected(XY, 2, 2);
  expected.add_term({0, 1}, u3().scaled(-differentiate(f, "y")));
  CHECK(same_form(curvature(abelian), expected));

  auto constant = DiffForm::matrix_one_form(XY, {u1(), u2()});
  CHECK(equivalent(curvature(constant).coefficient({0, 1}), u3().scaled(2)));
}

TEST_CASE("gauge transformations") {
  auto a = DiffForm::matrix_one_form(XY, {u1().scaled(P("y")), u3().scaled(P("x"))});

  SUBCASE("constant g conjugates") {
    ExprMatrix g{{1, 2}, {0, 1}};
    auto expected = a.left_multiply(g).right_multiply(g.inverse());
    CHECK(same_form(gauge_transform(a, g), expected));
  }
  SUBCASE("pure gauge is flat") {
    ExprMatrix g{{1, P("x*y^2")}, {0, 1}};
    auto pure = gauge_transform(DiffForm(XY, 1, 2), g);
    CHECK_FALSE(pure.is_zero());
    CHECK(zero_form(curvature(pure)));
    ExprMatrix h{{P("1 + x*y"), P("x")}, {P("y"), 1}};  // det = 1
    CHECK(zero_form(curvature(gauge_transform(DiffForm(XY, 1, 2), h))));
  }
  SUBCASE("the opposite sign on dg g^-1 is not flat") {
    ExprMatrix g{{P("1 + x*y"), P("x")}, {P("y"), 1}};
    auto dg = ext_d(DiffForm::matrix_function(XY, g));
    auto plus = dg.right_multiply(g.inverse());
    CHECK_FALSE(curvature(plus).is_zero());
  }
  SUBCASE("curvature transforms by conjugation") {
    for (int trial = 0; trial < 5; ++trial) {
      VarCtx chart{"x", "y", "z"};
      auto b = testgen::random_form(chart, 1, 2, 1);
      Expr s = testgen::random_poly(chart.names(), 2);
      ExprMatrix g{{1, s}, {0, 1}};
      if (trial % 2) g = ExprMatrix{{P("1 + x*y"), P("x")}, {P("y"), 1}};
      ExprMatrix ginv = g.inverse();
      auto lhs = curvature(gauge_transform(b, g));
      auto rhs = curvature(b).left_multiply(g).right_multiply(ginv);
      CHECK(same_form(lhs, rhs));
    }
  }
  SUBCASE("singular g is rejected") {
    ExprMatrix g{{P("x"), P("x*y")}, {1, P("y")}};
    CHECK_THROWS_AS(gauge_transform(a, g), DivisionByZeroError);
  }
}

TEST_CASE("Chern-Simons form") {
  VarCtx r3{"x", "y", "z"};
  CHECK(zero_form(chern_simons_form(DiffForm(r3, 1, 2))));
  auto ab = DiffForm::matrix_one_form(r3, {u3().scaled(P("y")), u3().scaled(P("z^2")), u3().scaled(P("x"))});
  CHECK(same_form(chern_simons_form(ab), wedge(ab, ext_d(ab)).trace()));
  CHECK_THROWS_AS(chern_simons_form(DiffForm(XY, 1, 2)), DimensionError);

  VarCtx r4{"x", "y", "z", "w"};
  for (int trial = 0; trial < 3; ++trial) {
    auto a = testgen::random_form(r4, 1, 2, 2);
    auto lhs = ext_d(chern_simons_form(a));
    auto rhs = chern_form(curvature(a));
    CHECK(same_form(lhs, rhs));
  }
}

TEST_CASE("property: d squared vanishes in every degree") {
  VarCtx r4{"x", "y", "z", "w"};
  for (int trial = 0; trial < 30; ++trial) {
    int k = testgen::uniform_int(0, 2);
    auto a = testgen::random_form(r4, k, trial % 3 == 0 ? 2 : 0, 3);
    CHECK(zero_form(ext_d(ext_d(a))));
  }
}

TEST_CASE("property: Leibniz rule") {
  VarCtx r4{"x", "y", "z", "w"};
  for (int trial = 0; trial < 30; ++trial) {
    int ka = testgen::uniform_int(0, 2), kb = testgen::uniform_int(0, 1);
    auto a = testgen::random_form(r4, ka, 0);
    auto b = testgen::random_form(r4, kb, 0);
    auto lhs = ext_d(wedge(a, b));
    auto rhs = wedge(ext_d(a), b) + wedge(a, ext_d(b)).scaled(Expr(ka % 2 ? -1 : 1));
    CHECK(same_form(lhs, rhs));
  }
}

TEST_CASE("property: pullback is natural") {
  VarCtx src{"s", "t", "u"};
  VarCtx tgt{"x", "y", "z"};
  for (int trial = 0; trial < 15; ++trial) {
    SmoothMap phi(src, tgt, {testgen::random_poly(src.names(), 2), testgen::random_poly(src.names(), 2),
                             testgen::random_poly(src.names(), 2)});
    auto a = testgen::random_form(tgt, testgen::uniform_int(0, 1), 0);
    auto b = testgen::random_form(tgt, 1, 0);
    CHECK(same_form(pullback(phi, ext_d(a)), ext_d(pullback(phi, a))));
    CHECK(same_form(pullback(phi, wedge(a, b)), wedge(pullback(phi, a), pullback(phi, b))));
  }
}

TEST_CASE("property: Bianchi identity") {
  VarCtx r3{"x", "y", "z"};
  for (int trial = 0; trial < 10; ++trial) {
    auto a = testgen::random_form(r3, 1, 2, 2);
    auto f = curvature(a);
    CHECK(zero_form(ext_d(f) + wedge(a, f) - wedge(f, a)));
  }
}
