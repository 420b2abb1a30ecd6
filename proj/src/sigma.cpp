#include "darboux/sigma.hpp"

#include <cmath>
#include <utility>

#include "darboux/error.hpp"

namespace darboux::sigma {

Metric::Metric(VarCtx chart, ExprMatrix g) : chart_(std::move(chart)), g_(g.simplified()) {
  if (!g_.is_square() || g_.rows() != chart_.size()) throw DimensionError("metric must be dim x dim");
  for (std::size_t i = 0; i < g_.rows(); ++i)
    for (std::size_t j = i + 1; j < g_.cols(); ++j) {
      if (!simplify(g_(i, j) - g_(j, i)).is_zero_constant()) throw DimensionError("metric is not symmetric");
    }
  det_ = g_.determinant();
  if (det_.is_zero_constant()) throw DivisionByZeroError("metric is singular");
  inv_ = g_.inverse();
}

Christoffel christoffel(const Metric& g) {
  const std::size_t n = g.dim();
  const auto& x = g.chart();
  // dg[l][j][k] = d_l g_jk
  std::vector<ExprMatrix> dg;
  for (std::size_t l = 0; l < n; ++l) dg.push_back(g.g().differentiate(x[l]).simplified());
  Christoffel out(n, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) {
        std::vector<Expr> terms;
        for (std::size_t l = 0; l < n; ++l) {
          const Expr& gil = g.inverse()(i, l);
          if (gil.is_zero_constant()) continue;
          terms.push_back(gil * (dg[j](k, l) + dg[k](j, l) - dg[l](j, k)));
        }
        Expr v = simplify(Expr(GaussQ(mpq_class(1, 2))) * Expr::sum(std::move(terms)));
        out[i][j][k] = v;
        out[i][k][j] = v;
      }
  return out;
}

GeodesicTrajectory geodesic_integrate(const Metric& g, std::span<const double> x0, std::span<const double> v0,
                                      double t_end, double h) {
  const std::size_t n = g.dim();
  if (x0.size() != n || v0.size() != n) throw DimensionError("initial data has the wrong length");
  if (!(h > 0) || !std::isfinite(h)) throw DimensionError("step size must be positive");
  if (!(t_end >= 0) || !std::isfinite(t_end)) throw DimensionError("duration must be non-negative");

  Christoffel gam = christoffel(g);
  std::vector<std::vector<std::vector<CompiledExpr>>> cg(n, std::vector<std::vector<CompiledExpr>>(n));
  std::vector<std::vector<std::vector<bool>>> zero(n, std::vector<std::vector<bool>>(n, std::vector<bool>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        cg[i][j].emplace_back(gam[i][j][k], g.chart());
        zero[i][j][k] = gam[i][j][k].is_zero_constant();
      }
  CompiledExpr det(g.determinant(), g.chart());

  using State = std::vector<double>;  // x then v
  std::size_t step = 0;
  auto field = [&](const State& s) {
    std::span<const double> x(s.data(), n);
    if (std::abs(det(x)) < 1e-12) {
      throw DivisionByZeroError("metric degenerates along the geodesic near step " + std::to_string(step));
    }
    State out(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = s[n + i];
      double acc = 0;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          if (zero[i][j][k]) continue;
          acc += cg[i][j][k](x).real() * s[n + j] * s[n + k];
        }
      out[n + i] = -acc;
    }
    return out;
  };
  auto axpy = [&](const State& s, double a, const State& k) {
    State out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i] + a * k[i];
    return out;
  };

  GeodesicTrajectory traj;
  State s(x0.begin(), x0.end());
  s.insert(s.end(), v0.begin(), v0.end());
  auto record = [&](double t) {
    traj.times.push_back(t);
    traj.positions.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
    traj.velocities.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(n), s.end());
  };
  double t = 0;
  record(t);
  const auto steps = static_cast<std::size_t>(std::floor(t_end / h * (1 + 1e-12)));
  for (step = 1; step <= steps; ++step) {
    double dt = step == steps ? t_end - t : h;
    State k1 = field(s);
    State k2 = field(axpy(s, dt / 2, k1));
    State k3 = field(axpy(s, dt / 2, k2));
    State k4 = field(axpy(s, dt, k3));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    for (double v : s) {
      if (!std::isfinite(v)) throw NonFiniteError("non-finite geodesic state", step);
    }
    t = step == steps ? t_end : t + dt;
    record(t);
  }
  return traj;
}

double energy(const gauge::PathCurve& path, const Metric& g, std::size_t n, double t0, double t1) {
  if (path.chart() != g.chart()) throw DimensionError("path and metric live on different charts");
  if (n == 0) throw DimensionError("energy quadrature needs at least one point");
  const std::size_t d = g.dim();
  std::vector<CompiledExpr> entries;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) entries.emplace_back(g.g()(i, j), g.chart());
  CompiledExpr det(g.determinant(), g.chart());
  const double dt = (t1 - t0) / static_cast<double>(n);
  double total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double t = t0 + (static_cast<double>(k) + 0.5) * dt;
    auto x = path.point(t);
    auto v = path.velocity(t, path.segment_of(t));
    if (std::abs(det(std::span<const double>(x))) < 1e-12) throw DivisionByZeroError("metric degenerates on the path");
    double e = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) e += entries[i * d + j](std::span<const double>(x)).real() * v[i] * v[j];
    total += e * dt;
  }
  return total;
}

std::vector<Expr> harmonic_residual(const SmoothMap& f, const Metric& source, const Metric& target) {
  if (f.source != source.chart() || f.target != target.chart()) {
    throw DimensionError("map charts do not match the metrics");
  }
  const auto& xs = source.chart();
  const std::size_t m = source.dim(), n = target.dim();
  const ExprMatrix& ginv = source.inverse();
  const Expr& d = source.determinant();

  std::map<std::string, Expr> at_f;
  for (std::size_t i = 0; i < n; ++i) at_f[target.chart()[i]] = f.components[i];
  Christoffel gam = christoffel(target);

  // df[i][a] = d f^i / d x^a
  std::vector<std::vector<Expr>> df(n, std::vector<Expr>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < m; ++a) df[i][a] = simplify(differentiate(f.components[i], xs[a]));
  std::vector<Expr> dlog;  // d_a(det) / (2 det)
  for (std::size_t a = 0; a < m; ++a) dlog.push_back(simplify(differentiate(d, xs[a]) / (Expr(2) * d)));

  std::vector<Expr> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Expr> terms;
    for (std::size_t a = 0; a < m; ++a) {
      std::vector<Expr> va;
      for (std::size_t b = 0; b < m; ++b) va.push_back(ginv(a, b) * df[i][b]);
      Expr v = Expr::sum(std::move(va));
      terms.push_back(differentiate(v, xs[a]));
      terms.push_back(v * dlog[a]);
    }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (gam[i][j][k].is_zero_constant()) continue;
        Expr c = gam[i][j][k].substitute(at_f);
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = 0; b < m; ++b) {
            if (ginv(a, b).is_zero_constant()) continue;
            terms.push_back(ginv(a, b) * c * df[j][a] * df[k][b]);
          }
      }
    out.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return out;
}

}  // namespace darboux::sigma
