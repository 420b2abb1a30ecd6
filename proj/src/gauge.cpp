#include "darboux/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "darboux/error.hpp"

namespace darboux::gauge {

PathCurve PathCurve::symbolic(VarCtx chart, std::vector<Expr> components, std::string param) {
  if (components.size() != chart.size()) throw DimensionError("curve needs one component per chart variable");
  for (const auto& c : components) {
    for (const auto& s : c.free_symbols()) {
      if (s != param && s != "pi") throw DimensionError("curve component uses symbol " + s);
    }
  }
  PathCurve c;
  c.chart_ = std::move(chart);
  c.param_ = std::move(param);
  VarCtx t{c.param_};
  for (const auto& e : components) {
    Expr d = simplify(differentiate(e, c.param_));
    c.compiled_.emplace_back(e, t);
    c.compiled_derivatives_.emplace_back(d, t);
    c.derivatives_.push_back(std::move(d));
  }
  c.components_ = std::move(components);
  return c;
}

PathCurve PathCurve::polyline(VarCtx chart, std::vector<std::vector<double>> points) {
  if (points.size() < 2) throw DimensionError("polyline needs at least two points");
  for (const auto& p : points) {
    if (p.size() != chart.size()) throw DimensionError("polyline point has the wrong dimension");
    for (double v : p) {
      if (!std::isfinite(v)) throw DimensionError("polyline point is not finite");
    }
  }
  PathCurve c;
  c.chart_ = std::move(chart);
  c.points_ = std::move(points);
  return c;
}

std::size_t PathCurve::segment_of(double t) const {
  if (!is_polyline()) return 0;
  auto m = segments();
  auto k = static_cast<std::size_t>(std::max(0.0, std::floor(t * static_cast<double>(m))));
  return std::min(k, m - 1);
}

std::vector<double> PathCurve::point(double t) const {
  std::vector<double> out(chart_.size());
  if (is_polyline()) {
    std::size_t k = segment_of(t);
    double s = t * static_cast<double>(segments()) - static_cast<double>(k);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = points_[k][i] + s * (points_[k + 1][i] - points_[k][i]);
    return out;
  }
  double arg[1] = {t};
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = compiled_[i](std::span<const double>(arg)).real();
  return out;
}

std::vector<double> PathCurve::velocity(double t, std::size_t segment) const {
  std::vector<double> out(chart_.size());
  if (is_polyline()) {
    auto m = static_cast<double>(segments());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = m * (points_[segment + 1][i] - points_[segment][i]);
    return out;
  }
  double arg[1] = {t};
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = compiled_derivatives_[i](std::span<const double>(arg)).real();
  }
  return out;
}

bool PathCurve::is_closed(double tol) const {
  auto a = point(0.0);
  auto b = is_polyline() ? points_.back() : point(1.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

PathCurve PathCurve::reversed() const {
  if (is_polyline()) {
    auto pts = points_;
    std::reverse(pts.begin(), pts.end());
    return polyline(chart_, std::move(pts));
  }
  std::map<std::string, Expr> flip{{param_, Expr(1) - Expr::var(param_)}};
  std::vector<Expr> comps;
  for (const auto& c : components_) comps.push_back(c.substitute(flip));
  return symbolic(chart_, std::move(comps), param_);
}

Method parse_method(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "prodexp") return Method::prodexp;
  throw DimensionError("unknown transport method '" + std::string(name) + "'");
}

namespace {

// Connection coefficients compiled for repeated numeric evaluation.
class NumericConnection {
 public:
  NumericConnection(const DiffForm& a, const VarCtx& chart, std::complex<double> factor)
      : m_(a.is_scalar() ? 1 : a.shape()), factor_(factor) {
    if (a.degree() != 1) throw DimensionError("transport needs a connection 1-form");
    if (a.chart() != chart) throw DimensionError("connection and curve live on different charts");
    for (std::size_t mu = 0; mu < chart.size(); ++mu) {
      ExprMatrix c = a.component(mu);
      std::vector<CompiledExpr> entries;
      for (std::size_t r = 0; r < m_; ++r)
        for (std::size_t k = 0; k < m_; ++k) entries.emplace_back(c(r, k), chart);
      comps_.push_back(std::move(entries));
      zero_.push_back(c.is_zero());
    }
  }

  std::size_t size() const { return m_; }

  Mat gamma(const PathCurve& curve, double t, std::size_t segment) const {
    auto x = curve.point(t);
    auto v = curve.velocity(t, segment);
    Mat out = Mat::Zero(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(m_));
    for (std::size_t mu = 0; mu < comps_.size(); ++mu) {
      if (zero_[mu] || v[mu] == 0) continue;
      std::size_t e = 0;
      for (std::size_t r = 0; r < m_; ++r)
        for (std::size_t k = 0; k < m_; ++k) {
          out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) +=
              comps_[mu][e++](std::span<const double>(x)) * v[mu];
        }
    }
    return factor_ * out;
  }

 private:
  std::size_t m_;
  std::complex<double> factor_;
  std::vector<std::vector<CompiledExpr>> comps_;
  std::vector<bool> zero_;
};

Mat transport(const NumericConnection& conn, const PathCurve& curve, const Mat& g0, Method method,
              std::size_t steps) {
  if (steps == 0) throw DimensionError("transport needs at least one step");
  auto m = static_cast<Eigen::Index>(conn.size());
  if (g0.rows() != m || g0.cols() != m) throw DimensionError("initial group element has the wrong size");

  const std::size_t segs = curve.segments();
  Mat g = g0;
  std::size_t step_index = 0;
  for (std::size_t s = 0; s < segs; ++s) {
    std::size_t n = std::max<std::size_t>(1, steps / segs + (s < steps % segs ? 1 : 0));
    double t0 = static_cast<double>(s) / static_cast<double>(segs);
    double t1 = static_cast<double>(s + 1) / static_cast<double>(segs);
    double dt = (t1 - t0) / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
      double t = t0 + dt * static_cast<double>(k);
      if (method == Method::rk4) {
        Mat k1 = -conn.gamma(curve, t, s) * g;
        Mat k2 = -conn.gamma(curve, t + dt / 2, s) * (g + dt / 2 * k1);
        Mat k3 = -conn.gamma(curve, t + dt / 2, s) * (g + dt / 2 * k2);
        Mat k4 = -conn.gamma(curve, t + dt, s) * (g + dt * k3);
        g += dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      } else {
        g = lie::exp_matrix(-dt * conn.gamma(curve, t + dt / 2, s)) * g;
      }
      ++step_index;
      if (!g.allFinite()) throw NonFiniteError("non-finite transport state", step_index);
    }
  }
  return g;
}

}  // namespace

Mat transport_coefficient(const DiffForm& a, const PathCurve& curve, double t) {
  NumericConnection conn(a, curve.chart(), 1.0);
  return conn.gamma(curve, t, curve.segment_of(t));
}

Mat parallel_transport(const DiffForm& a, const PathCurve& curve, const Mat& g0, Method method,
                       std::size_t steps) {
  return transport(NumericConnection(a, curve.chart(), 1.0), curve, g0, method, steps);
}

Mat holonomy(const DiffForm& a, const PathCurve& loop, Method method, std::size_t steps) {
  if (!loop.is_closed()) throw DimensionError("holonomy needs a closed loop");
  auto m = static_cast<Eigen::Index>(a.is_scalar() ? 1 : a.shape());
  return parallel_transport(a, loop, Mat::Identity(m, m), method, steps);
}

std::complex<double> wilson_loop(const DiffForm& a, const PathCurve& loop, Method method, std::size_t steps) {
  if (!loop.is_closed()) throw DimensionError("Wilson loop needs a closed loop");
  NumericConnection conn(a, loop.chart(), std::complex<double>(0, -1));
  auto m = static_cast<Eigen::Index>(conn.size());
  return transport(conn, loop, Mat::Identity(m, m), method, steps).trace();
}

std::vector<Expr> covariant_derivative_section(const std::vector<Expr>& s, const VectorField& y,
                                               const DiffForm& a) {
  if (a.degree() != 1) throw DimensionError("covariant derivative needs a connection 1-form");
  std::size_t m = a.is_scalar() ? 1 : a.shape();
  if (s.size() != m) throw DimensionError("section length does not match the connection");
  ExprMatrix ay = evaluate(a, {y});
  std::vector<Expr> out;
  for (std::size_t r = 0; r < m; ++r) {
    std::vector<Expr> terms{y.apply(s[r])};
    for (std::size_t k = 0; k < m; ++k) terms.push_back(ay(r, k) * s[k]);
    out.push_back(simplify(Expr::sum(std::move(terms))));
  }
  return out;
}

}  // namespace darboux::gauge
