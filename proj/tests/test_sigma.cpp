#include <cmath>
#include <numbers>

#include "doctest.h"
#include "generators.hpp"

#include "darboux/error.hpp"
#include "darboux/sigma.hpp"

using namespace darboux;
using namespace darboux::sigma;

namespace {

Expr P(const char* s) { return parse(s); }
const VarCtx XY{"x", "y"};
const VarCtx S2{"theta", "phi"};

Metric round_sphere() { return Metric(S2, ExprMatrix{{1, 0}, {0, P("sin(theta)^2")}}); }
Metric euclid(const VarCtx& c) { return Metric(c, ExprMatrix::identity(c.size())); }

double num(const Expr& e, std::map<std::string, std::complex<double>> at) { return eval_numeric(e, at).real(); }

}  // namespace

TEST_CASE("Christoffel symbols: flat and round sphere") {
  auto flat = christoffel(euclid(VarCtx{"x", "y", "z"}));
  for (const auto& a : flat)
    for (const auto& b : a)
      for (const auto& c : b) CHECK(c.is_zero_constant());

  auto gam = christoffel(round_sphere());
  CHECK(gam[0][1][1].str() == "-cos(theta)*sin(theta)");
  CHECK(gam[1][0][1].str() == "cos(theta)/sin(theta)");
  CHECK(gam[1][1][0].str() == "cos(theta)/sin(theta)");
  CHECK(gam[0][0][0].is_zero_constant());

  // finite-difference metric derivatives at theta = 1
  const double th = 1.0, hstep = 1e-5;
  auto g11 = [](double t) { return std::sin(t) * std::sin(t); };
  double dg11 = (g11(th + hstep) - g11(th - hstep)) / (2 * hstep);
  std::map<std::string, std::complex<double>> at{{"theta", th}, {"phi", 0.3}};
  CHECK(std::abs(num(gam[0][1][1], at) - (-0.5 * dg11)) < 1e-8);
  CHECK(std::abs(num(gam[1][0][1], at) - 0.5 * dg11 / g11(th)) < 1e-8);
}

TEST_CASE("Christoffel symbols: conformal plane") {
  auto gam = christoffel(Metric(XY, ExprMatrix{{P("exp(2*x)"), 0}, {0, P("exp(2*x)")}}));
  CHECK(gam[0][0][0].str() == "1");
  CHECK(gam[0][1][1].str() == "-1");
  CHECK(gam[1][0][1].str() == "1");
}

TEST_CASE("metric validation") {
  CHECK_THROWS_AS(Metric(XY, ExprMatrix{{1, P("x")}, {0, 1}}), DimensionError);
  CHECK_THROWS_AS(Metric(XY, ExprMatrix{{P("x"), P("x*y")}, {P("x*y"), P("x*y^2")}}), DivisionByZeroError);
  CHECK_THROWS_AS(Metric(XY, ExprMatrix::identity(3)), DimensionError);
}

TEST_CASE("property: Christoffel symbols are metric compatible and symmetric") {
  for (int trial = 0; trial < 8; ++trial) {
    Expr a = testgen::random_poly(XY.names(), 2, 2), b = testgen::random_poly(XY.names(), 2, 2),
         c = testgen::random_poly(XY.names(), 2, 2);
    ExprMatrix gm{{Expr(5) + a * a, b}, {b, Expr(7) + c * c}};
    Metric g(XY, gm);
    auto gam = christoffel(g);
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          CHECK(is_zero(gam[k][i][j] - gam[k][j][i]));
          // d_k g_ij = Gamma^l_ki g_lj + Gamma^l_kj g_il
          Expr rhs = gam[0][k][i] * gm(0, j) + gam[1][k][i] * gm(1, j) + gam[0][k][j] * gm(i, 0) +
                     gam[1][k][j] * gm(i, 1);
          CHECK(is_zero(differentiate(gm(i, j), XY[k]) - rhs));
        }
  }
}

TEST_CASE("geodesics") {
  std::vector<double> x0{0.5, -1.0, 2.0}, v0{0.3, 0.7, -1.1};
  auto line = geodesic_integrate(euclid(VarCtx{"x", "y", "z"}), x0, v0, 3.0, 0.01);
  for (std::size_t k = 0; k < line.times.size(); ++k)
    for (int i = 0; i < 3; ++i) CHECK(std::abs(line.positions[k][i] - (x0[i] + line.times[k] * v0[i])) < 1e-9);

  std::vector<double> eq0{std::numbers::pi / 2, 0}, ev0{0, 1};
  auto eq = geodesic_integrate(round_sphere(), eq0, ev0, 2 * std::numbers::pi, 1e-3);
  double worst = 0;
  for (const auto& p : eq.positions) worst = std::max(worst, std::abs(p[0] - std::numbers::pi / 2));
  CHECK(worst < 1e-6);
  CHECK(std::abs(eq.positions.back()[1] - 2 * std::numbers::pi) < 1e-9);

  std::vector<double> s0{1.0, 0.2}, sv{0.4, 0.9};
  auto tr = geodesic_integrate(round_sphere(), s0, sv, 10.0, 1e-3);
  auto speed = [](const std::vector<double>& x, const std::vector<double>& v) {
    return v[0] * v[0] + std::sin(x[0]) * std::sin(x[0]) * v[1] * v[1];
  };
  double e0 = speed(tr.positions[0], tr.velocities[0]), drift = 0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) drift = std::max(drift, std::abs(speed(tr.positions[k], tr.velocities[k]) - e0));
  CHECK(drift < 1e-7);

  std::vector<double> pole{0.0, 0.0};
  CHECK_THROWS_AS(geodesic_integrate(round_sphere(), pole, sv, 1.0, 0.01), DivisionByZeroError);
}

TEST_CASE("energy functional") {
  auto seg = gauge::PathCurve::symbolic(XY, {P("t"), P("0")});
  CHECK(std::abs(energy(seg, euclid(XY), 10) - 1) < 1e-10);
  auto quad = gauge::PathCurve::symbolic(XY, {P("t^2"), P("0")});
  CHECK(std::abs(energy(quad, euclid(XY), 2000) - 4.0 / 3) < 1e-6);
  CHECK(std::abs(energy(quad, euclid(XY), 100000) - 4.0 / 3) < 1e-8);
  double len = 1.9;
  auto arc = gauge::PathCurve::symbolic(S2, {P("pi/2"), P("t")});
  CHECK(std::abs(energy(arc, round_sphere(), 50, 0.0, len) - len) < 1e-8);
  auto bad = gauge::PathCurve::symbolic(S2, {P("0"), P("t")});
  CHECK_THROWS_AS(energy(bad, round_sphere(), 10), DivisionByZeroError);
}

TEST_CASE("harmonic residual") {
  VarCtx r{"u"};
  auto flat2 = euclid(XY);
  auto flat1 = euclid(r);
  auto res = harmonic_residual(SmoothMap(XY, r, {P("x^2 - y^2")}), flat2, flat1);
  CHECK(res[0].is_zero_constant());
  CHECK(harmonic_residual(SmoothMap(XY, r, {P("x^2")}), flat2, flat1)[0].str() == "2");
  auto lin = harmonic_residual(SmoothMap(XY, VarCtx{"a", "b", "c"}, {P("x + 2*y"), P("3*x"), P("-y + 1")}), flat2,
                               euclid(VarCtx{"a", "b", "c"}));
  for (const auto& e : lin) CHECK(e.is_zero_constant());

  // polar source metric: the Laplace-Beltrami operator in polar coordinates
  VarCtx polar{"r", "t"};
  Metric pm(polar, ExprMatrix{{1, 0}, {0, P("r^2")}});
  auto pr = harmonic_residual(SmoothMap(polar, r, {P("r^2")}), pm, flat1);
  CHECK(pr[0].str() == "4");  // f = x^2 + y^2
  auto pr2 = harmonic_residual(SmoothMap(polar, r, {P("r^2*cos(2*t)")}), pm, flat1);
  CHECK(pr2[0].is_zero_constant());  // x^2 - y^2 again
}

TEST_CASE("one-dimensional source reduces to the geodesic equation") {
  VarCtx line{"s"};
  Metric ds(line, ExprMatrix{{1}});
  SmoothMap curve(line, S2, {P("s^2 + 1"), P("s^3 - s")});
  auto res = harmonic_residual(curve, ds, round_sphere());
  auto gam = christoffel(round_sphere());
  std::map<std::string, Expr> at{{"theta", curve.components[0]}, {"phi", curve.components[1]}};
  for (std::size_t k = 0; k < 2; ++k) {
    Expr geo = differentiate(differentiate(curve.components[k], "s"), "s");
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        geo = geo + gam[k][i][j].substitute(at) * differentiate(curve.components[i], "s") *
                        differentiate(curve.components[j], "s");
      }
    CHECK(simplify(res[k] - geo).is_zero_constant());
  }
}
