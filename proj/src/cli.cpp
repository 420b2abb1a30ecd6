#include "darboux/cli.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "darboux/error.hpp"
#include "darboux/expr.hpp"
#include "darboux/gauge.hpp"
#include "darboux/io.hpp"
#include "darboux/lie.hpp"
#include "darboux/link_diagram.hpp"
#include "darboux/mech.hpp"
#include "darboux/prequant.hpp"
#include "darboux/reidemeister.hpp"
#include "darboux/sigma.hpp"
#include "darboux/skein.hpp"
#include "darboux/symplin.hpp"

namespace darboux::cli {

namespace {

using io::Json;

struct Options {
  std::string format = "text";
  bool timings = false;
};

std::string compact(std::string s) {
  std::erase(s, ' ');
  return s;
}

std::string qmatrix_text(const symplin::QMatrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) s += ", ";
      s += m(r, c).get_str();
    }
    s += "]";
  }
  return s + "]";
}

double max_abs(const lie::Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Each handler fills a report; text output is produced separately.
struct Result {
  Json report = Json::object();
  std::string text;
};

void emit(const Options& opt, const std::string& command, Result r, double seconds, std::ostream& out) {
  if (opt.format == "json") {
    Json doc;
    doc["command"] = command;
    for (auto& [k, v] : r.report.items()) doc[k] = v;
    if (opt.timings) doc["timings"] = {{"seconds", seconds}};
    out << doc.dump() << "\n";
  } else {
    out << r.text;
    if (!r.text.empty() && r.text.back() != '\n') out << "\n";
    if (opt.timings) out << "# seconds: " << io::format_real(seconds) << "\n";
  }
}

Result symplectic_basis(const std::string& matrix) {
  auto m = io::qmatrix_from_json(io::load_json(matrix));
  symplin::SkewForm omega(m);
  auto dec = symplin::canonical_decomposition(omega);
  bool ok = dec.basis.transpose() * m * dec.basis == symplin::standard_form(dec.kernel_dim, dec.pairs);
  Result r;
  r.report["inputs"] = {{"matrix", io::qmatrix_to_json(m)}};
  r.report["value"] = {{"basis", io::qmatrix_to_json(dec.basis)},
                       {"kernel_dim", dec.kernel_dim},
                       {"pairs", dec.pairs}};
  r.report["residuals"] = {{"congruence", ok ? "0" : "nonzero"}};
  r.text = "basis: " + qmatrix_text(dec.basis) + "\nkernel_dim: " + std::to_string(dec.kernel_dim) +
           "\npairs: " + std::to_string(dec.pairs) + "\n";
  return r;
}

Result poisson_cmd(const std::string& f, const std::string& g, std::size_t n) {
  Expr v = mech::poisson(parse(f), parse(g), n);
  Result r;
  r.report["inputs"] = {{"f", f}, {"g", g}, {"n", n}};
  r.report["value"] = compact(v.str());
  r.text = v.str();
  return r;
}

Result flow_cmd(const std::string& h_text, std::size_t n, const std::string& x0_text, double t_end, double h,
                const Options& opt) {
  auto chart = mech::PhaseChart::standard(n);
  Expr ham = parse(h_text);
  mech::HamiltonianSystem sys(chart, ham);
  auto x0 = io::parse_csv_reals(x0_text);
  auto tr = mech::flow_integrate(sys, x0, t_end, h);
  CompiledExpr energy(ham, chart.ctx());
  double e0 = energy(std::span<const double>(x0)).real(), drift = 0;
  for (const auto& s : tr.states) drift = std::max(drift, std::abs(energy(std::span<const double>(s)).real() - e0));
  Result r;
  r.report["inputs"] = {{"H", h_text}, {"n", n}, {"x0", x0}, {"T", t_end}, {"h", h}};
  Json final_state = Json::array();
  for (double v : tr.states.back()) final_state.push_back(io::format_real(v));
  r.report["value"] = {{"rows", tr.times.size()}, {"t", io::format_real(tr.times.back())}, {"state", final_state}};
  r.report["residuals"] = {{"energy_drift", io::format_real(drift)}};
  if (opt.format != "json") {
    std::ostringstream os;
    os << "t";
    for (const auto& name : chart.ctx().names()) os << "," << name;
    os << "\n";
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      os << io::format_real(tr.times[k]);
      for (double v : tr.states[k]) os << "," << io::format_real(v);
      os << "\n";
    }
    r.text = os.str();
  }
  return r;
}

Result matrix_result(const lie::Mat& m) {
  Result r;
  r.report["value"] = io::matrix_to_json(m);
  r.text = io::format_matrix(m);
  return r;
}

Result holonomy_cmd(const std::string& a_text, const std::string& loop_text, const std::string& method,
                    std::size_t steps, bool wilson) {
  DiffForm a = io::one_form_from_json(io::load_json(a_text));
  auto loop = io::polyline_from_json(io::load_json(loop_text), a.chart());
  auto m = gauge::parse_method(method);
  Result r;
  Json inputs = {{"A", io::load_json(a_text)}, {"loop", io::load_json(loop_text)}, {"method", method}, {"steps", steps}};
  if (wilson) {
    auto w = gauge::wilson_loop(a, loop, m, steps);
    r.report["inputs"] = inputs;
    r.report["value"] = io::complex_to_json(w);
    r.text = io::format_complex(w);
  } else {
    auto hol = gauge::holonomy(a, loop, m, steps);
    r = matrix_result(hol);
    r.report = Json{{"inputs", inputs}, {"value", r.report["value"]}};
    lie::Mat id = lie::Mat::Identity(hol.rows(), hol.cols());
    r.report["residuals"] = {{"deviation_from_identity", io::format_real(max_abs(hol - id))}};
  }
  return r;
}

Result quantize_cmd(const std::string& f, const std::string& g, std::size_t n, const std::string& psi) {
  auto conn = prequant::PrequantConnection::standard(n);
  Result r;
  Json inputs = {{"f", f}, {"n", n}, {"psi", psi}};
  if (!g.empty()) {
    inputs["g"] = g;
    Expr res = prequant::quantum_condition_residual(parse(f), parse(g), conn, parse(psi));
    r.report["inputs"] = inputs;
    r.report["residual"] = compact(res.str());
    r.text = res.str();
  } else {
    Expr v = prequant::prequant_op(parse(f), conn, parse(psi));
    r.report["inputs"] = inputs;
    r.report["value"] = compact(v.str());
    r.text = v.str();
  }
  return r;
}

Result geodesic_cmd(const std::string& metric_text, const std::string& x0_text, const std::string& v0_text,
                    double t_end, double h, const Options& opt) {
  auto g = io::metric_from_json(io::load_json(metric_text));
  auto x0 = io::parse_csv_reals(x0_text), v0 = io::parse_csv_reals(v0_text);
  auto tr = sigma::geodesic_integrate(g, x0, v0, t_end, h);
  const std::size_t n = g.dim();
  std::vector<CompiledExpr> gij;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gij.emplace_back(g.g()(i, j), g.chart());
  auto speed2 = [&](const std::vector<double>& x, const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += gij[i * n + j](std::span<const double>(x)).real() * v[i] * v[j];
    return s;
  };
  double s0 = speed2(tr.positions.front(), tr.velocities.front()), drift = 0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    drift = std::max(drift, std::abs(speed2(tr.positions[k], tr.velocities[k]) - s0));
  }
  Result r;
  r.report["inputs"] = {{"metric", io::load_json(metric_text)}, {"x0", x0}, {"v0", v0}, {"T", t_end}, {"h", h}};
  Json pos = Json::array(), vel = Json::array();
  for (double v : tr.positions.back()) pos.push_back(io::format_real(v));
  for (double v : tr.velocities.back()) vel.push_back(io::format_real(v));
  r.report["value"] = {{"rows", tr.times.size()}, {"t", io::format_real(tr.times.back())}, {"x", pos}, {"v", vel}};
  r.report["residuals"] = {{"speed_drift", io::format_real(drift)}};
  if (opt.format != "json") {
    std::ostringstream os;
    os << "t";
    for (const auto& name : g.chart().names()) os << "," << name;
    for (const auto& name : g.chart().names()) os << ",d" << name;
    os << "\n";
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      os << io::format_real(tr.times[k]);
      for (double v : tr.positions[k]) os << "," << io::format_real(v);
      for (double v : tr.velocities[k]) os << "," << io::format_real(v);
      os << "\n";
    }
    r.text = os.str();
  }
  return r;
}

Result christoffel_cmd(const std::string& metric_text) {
  auto g = io::metric_from_json(io::load_json(metric_text));
  auto gamma = sigma::christoffel(g);
  const auto& names = g.chart().names();
  Result r;
  Json all = Json::array();
  std::ostringstream os;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    Json mat = Json::array();
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      Json row = Json::array();
      for (std::size_t k = 0; k < gamma.size(); ++k) {
        const Expr& e = gamma[i][j][k];
        row.push_back(compact(e.str()));
        if (!e.is_zero_constant() && j <= k) {
          os << "Gamma^" << names[i] << "_" << names[j] << "," << names[k] << " = " << e.str() << "\n";
        }
      }
      mat.push_back(row);
    }
    all.push_back(mat);
  }
  r.report["inputs"] = {{"metric", io::load_json(metric_text)}};
  r.report["value"] = all;
  r.text = os.str().empty() ? "all Christoffel symbols vanish\n" : os.str();
  return r;
}

struct KnotArgs {
  std::string pd, invariant = "jones", move;
  int level = 0;
  int arc = 0, sign = 1;
  std::string side = "left";
  std::size_t crossing = 0, face = 0, over_edge = 0, under_edge = 1;
};

Result knot_cmd(const KnotArgs& a) {
  auto d = knots::parse_pd(io::load_text(a.pd));
  Result r;
  r.report["inputs"] = {{"pd", a.pd}};
  if (!a.move.empty()) {
    knots::Site site;
    site.arc = a.arc;
    site.sign = a.sign;
    if (a.side != "left" && a.side != "right") throw DiagramError("side must be left or right");
    site.side = a.side == "left" ? knots::Side::left : knots::Side::right;
    site.crossing = a.crossing;
    site.face = a.face;
    site.over_edge = a.over_edge;
    site.under_edge = a.under_edge;
    auto e = knots::reidemeister(d, knots::parse_move(a.move), site);
    r.report["move"] = a.move;
    r.report["value"] = Json::parse(knots::to_pd_json(e));
    r.text = knots::to_pd_json(e);
    return r;
  }
  if (a.invariant == "writhe") {
    r.report["invariant"] = "writhe";
    r.report["value"] = knots::writhe(d);
    r.text = std::to_string(knots::writhe(d));
    return r;
  }
  auto inv = knots::parse_invariant(a.invariant);
  r.report["invariant"] = knots::invariant_name(inv);
  if (a.level != 0) {
    if (inv != knots::Invariant::jones) throw DiagramError("--at-level evaluates the Jones polynomial only");
    auto v = knots::jones_at_level(d, a.level);
    r.report["level"] = a.level;
    r.report["value"] = io::complex_to_json(v);
    r.text = io::format_complex(v);
    if (d.size() > 0) {
      auto res = knots::witten_residuals(d, 0, a.level);
      r.report["residuals"] = {{"adopted", io::format_real(std::abs(res.adopted))},
                               {"variant", io::format_real(std::abs(res.variant))}};
    }
    return r;
  }
  auto v = knots::skein_evaluate(d, inv);
  r.report["value"] = v.compact();
  r.text = v.str();
  return r;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"darboux: symplectic geometry, quantization and knot invariants"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_flag("--timings", opt.timings, "Append wall-clock timing to the output");

  std::function<Result()> action;
  std::string command;

  std::string matrix;
  auto* sb = app.add_subcommand("symplectic-basis", "Symplectic basis of a rational skew form");
  sb->add_option("--matrix", matrix, "Skew matrix as JSON (inline or file), entries \"p/q\"")->required();
  sb->callback([&] { action = [&] { return symplectic_basis(matrix); }; });

  std::string f, g, psi;
  std::size_t n = 1;
  auto* pb = app.add_subcommand("poisson", "Poisson bracket {f, g} on the standard chart");
  pb->add_option("--f", f)->required();
  pb->add_option("--g", g)->required();
  pb->add_option("--n", n, "Degrees of freedom")->check(CLI::PositiveNumber);
  pb->callback([&] { action = [&] { return poisson_cmd(f, g, n); }; });

  std::string hamiltonian, x0, v0;
  double t_end = 1, step = 1e-3;
  auto* fl = app.add_subcommand("flow", "RK4 Hamiltonian flow, CSV t,q...,p...");
  fl->set_help_flag("--help", "Print this help message and exit");
  fl->add_option("--H", hamiltonian)->required();
  fl->add_option("--n", n)->check(CLI::PositiveNumber);
  fl->add_option("--x0", x0, "Initial state, comma separated")->required();
  fl->add_option("--T", t_end)->required()->check(CLI::NonNegativeNumber);
  fl->add_option("--h", step)->check(CLI::PositiveNumber);
  fl->callback([&] { action = [&] { return flow_cmd(hamiltonian, n, x0, t_end, step, opt); }; });

  std::string xm, ym, algebra = "su";
  double tol = 1e-10;
  auto* lie_cmd = app.add_subcommand("lie", "Matrix Lie group and algebra operations");
  lie_cmd->require_subcommand(1);
  auto* lexp = lie_cmd->add_subcommand("exp", "Matrix exponential");
  lexp->add_option("--X", xm)->required();
  lexp->callback([&] {
    action = [&] {
      auto x = io::complex_matrix_from_json(io::load_json(xm));
      auto e = lie::exp_matrix(x);
      Result r = matrix_result(e);
      r.report = Json{{"inputs", {{"X", io::load_json(xm)}}}, {"value", r.report["value"]}};
      if (x.rows() == x.cols()) {
        r.report["residuals"] = {{"det_exp_minus_exp_trace", io::format_real(std::abs(e.determinant() - std::exp(x.trace())))}};
      }
      return r;
    };
  });
  auto* lad = lie_cmd->add_subcommand("ad", "Commutator ad_X Y = XY - YX");
  lad->add_option("--X", xm)->required();
  lad->add_option("--Y", ym)->required();
  lad->callback([&] {
    action = [&] {
      Result r = matrix_result(lie::ad(io::complex_matrix_from_json(io::load_json(xm)),
                                       io::complex_matrix_from_json(io::load_json(ym))));
      r.report = Json{{"inputs", {{"X", io::load_json(xm)}, {"Y", io::load_json(ym)}}}, {"value", r.report["value"]}};
      return r;
    };
  });
  auto* lAd = lie_cmd->add_subcommand("Ad", "Conjugation Ad_g X = g X g^-1");
  lAd->add_option("--g", g)->required();
  lAd->add_option("--X", xm)->required();
  lAd->callback([&] {
    action = [&] {
      Result r = matrix_result(lie::Ad(io::complex_matrix_from_json(io::load_json(g)),
                                       io::complex_matrix_from_json(io::load_json(xm))));
      r.report = Json{{"inputs", {{"g", io::load_json(g)}, {"X", io::load_json(xm)}}}, {"value", r.report["value"]}};
      return r;
    };
  });
  auto* lmem = lie_cmd->add_subcommand("member", "Membership in su, so, sl, u or gl");
  lmem->add_option("--X", xm)->required();
  lmem->add_option("--algebra", algebra)->check(CLI::IsMember({"su", "so", "sl", "u", "gl"}));
  lmem->add_option("--tol", tol)->check(CLI::PositiveNumber);
  lmem->callback([&] {
    action = [&] {
      bool in = lie::algebra_membership(io::complex_matrix_from_json(io::load_json(xm)), lie::parse_algebra(algebra), tol);
      Result r;
      r.report["inputs"] = {{"X", io::load_json(xm)}, {"algebra", algebra}, {"tol", tol}};
      r.report["value"] = in;
      r.text = in ? "true" : "false";
      return r;
    };
  });

  std::string a_json, loop_json, method = "rk4";
  std::size_t steps = 1000;
  for (const char* name : {"holonomy", "wilson"}) {
    bool wilson = std::string(name) == "wilson";
    auto* sc = app.add_subcommand(name, wilson ? "Wilson loop tr P exp(-i closed-integral A)"
                                              : "Holonomy of a matrix connection around a closed polyline");
    sc->add_option("--A", a_json, "Matrix-valued 1-form as JSON")->required();
    sc->add_option("--loop", loop_json, "Closed polyline as JSON")->required();
    sc->add_option("--method", method)->check(CLI::IsMember({"rk4", "prodexp"}));
    sc->add_option("--steps", steps)->check(CLI::PositiveNumber);
    sc->callback([&, wilson] { action = [&, wilson] { return holonomy_cmd(a_json, loop_json, method, steps, wilson); }; });
  }

  auto* qz = app.add_subcommand("quantize", "Prequantum operator Q(f) applied to psi");
  qz->add_option("--f", f)->required();
  qz->add_option("--g", g, "With g, print the quantum-condition residual instead");
  qz->add_option("--n", n)->check(CLI::PositiveNumber);
  qz->add_option("--psi", psi)->required();
  qz->callback([&] { action = [&] { return quantize_cmd(f, g, n, psi); }; });

  std::string metric;
  auto* gd = app.add_subcommand("geodesic", "RK4 geodesic, CSV t,x...,dx...");
  gd->set_help_flag("--help", "Print this help message and exit");
  gd->add_option("--metric", metric, "Metric as JSON")->required();
  gd->add_option("--x0", x0)->required();
  gd->add_option("--v0", v0)->required();
  gd->add_option("--T", t_end)->required()->check(CLI::NonNegativeNumber);
  gd->add_option("--h", step)->check(CLI::PositiveNumber);
  gd->callback([&] { action = [&] { return geodesic_cmd(metric, x0, v0, t_end, step, opt); }; });

  auto* ch = app.add_subcommand("christoffel", "Christoffel symbols of a metric");
  ch->add_option("--metric", metric)->required();
  ch->callback([&] { action = [&] { return christoffel_cmd(metric); }; });

  KnotArgs ka;
  auto* kn = app.add_subcommand("knot", "Knot and link invariants from a planar diagram");
  kn->add_option("--pd", ka.pd, "Planar diagram JSON file")->required();
  kn->add_option("--invariant", ka.invariant)
      ->check(CLI::IsMember({"generic", "conway", "jones", "homfly", "writhe"}));
  kn->add_option("--at-level", ka.level, "Evaluate Jones at t = exp(2 pi i/(k+2))")->check(CLI::PositiveNumber);
  kn->add_option("--move", ka.move, "Apply R1+, R1-, R2+, R2- or R3 and print the new diagram");
  kn->add_option("--arc", ka.arc);
  kn->add_option("--sign", ka.sign);
  kn->add_option("--side", ka.side);
  kn->add_option("--crossing", ka.crossing);
  kn->add_option("--face", ka.face);
  kn->add_option("--over-edge", ka.over_edge);
  kn->add_option("--under-edge", ka.under_edge);
  kn->callback([&] { action = [&] { return knot_cmd(ka); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* sc : app.get_subcommands()) {
    command = sc->get_name();
    for (auto* inner : sc->get_subcommands()) command += " " + inner->get_name();
  }
  if (!action) {
    err << app.help();
    return 2;
  }
  try {
    auto start = std::chrono::steady_clock::now();
    Result r = action();
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    emit(opt, command, std::move(r), seconds, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace darboux::cli
