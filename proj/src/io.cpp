#include "darboux/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "darboux/error.hpp"

namespace darboux::io {

namespace {

bool looks_inline(const std::string& s) {
  auto p = s.find_first_not_of(" \t\r\n");
  return p != std::string::npos && (s[p] == '{' || s[p] == '[');
}

const Json& rows_of(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw DimensionError(std::string(what) + " must be a non-empty array of rows");
  std::size_t cols = 0;
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].empty()) throw DimensionError(std::string(what) + " rows must be non-empty arrays");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) throw DimensionError(std::string(what) + " rows have different lengths");
  }
  return j;
}

std::string entry_text(const Json& e) {
  if (e.is_string()) return e.get<std::string>();
  if (e.is_number_integer()) return std::to_string(e.get<long long>());
  if (e.is_number()) {
    std::ostringstream os;
    os.precision(17);
    os << e.get<double>();
    return os.str();
  }
  throw DimensionError("matrix entries must be numbers or strings");
}

}  // namespace

std::string load_text(const std::string& arg) {
  if (looks_inline(arg)) return arg;
  std::ifstream in(arg);
  if (!in) throw DimensionError("cannot read file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json load_json(const std::string& arg) {
  std::string text = load_text(arg);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
}

symplin::QMatrix qmatrix_from_json(const Json& j) {
  rows_of(j, "matrix");
  symplin::QMatrix m(j.size(), j[0].size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const Json& e = j[r][c];
      std::string s;
      if (e.is_number_integer()) {
        s = std::to_string(e.get<long long>());
      } else if (e.is_string()) {
        s = e.get<std::string>();
      } else {
        throw DimensionError("rational entries must be integers or \"p/q\" strings");
      }
      mpq_class q;
      if (s.empty() || q.set_str(s, 10) != 0) throw ParseError("not a rational number: '" + s + "'", 0);
      if (q.get_den() == 0) throw DivisionByZeroError("zero denominator in '" + s + "'");
      q.canonicalize();
      m(r, c) = q;
    }
  }
  return m;
}

Json qmatrix_to_json(const symplin::QMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    out.push_back(row);
  }
  return out;
}

lie::Mat complex_matrix_from_json(const Json& j) {
  rows_of(j, "matrix");
  lie::Mat m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(j[0].size()));
  for (std::size_t r = 0; r < j.size(); ++r) {
    for (std::size_t c = 0; c < j[r].size(); ++c) {
      const Json& e = j[r][c];
      std::complex<double> v;
      if (e.is_number()) {
        v = e.get<double>();
      } else if (e.is_string()) {
        v = eval_numeric(parse(e.get<std::string>()), {});
      } else {
        throw DimensionError("complex entries must be numbers or expression strings");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return m;
}

ExprMatrix expr_matrix_from_json(const Json& j) {
  rows_of(j, "matrix");
  std::vector<std::vector<Expr>> rows;
  for (const auto& row : j) {
    std::vector<Expr> r;
    for (const auto& e : row) r.push_back(parse(entry_text(e)));
    rows.push_back(std::move(r));
  }
  return ExprMatrix(rows);
}

VarCtx chart_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("chart") || !j["chart"].is_array() || j["chart"].empty()) {
    throw DimensionError("expected a non-empty \"chart\" array of coordinate names");
  }
  std::vector<std::string> names;
  for (const auto& n : j["chart"]) {
    if (!n.is_string()) throw DimensionError("chart coordinates must be strings");
    names.push_back(n.get<std::string>());
  }
  return VarCtx(names);
}

DiffForm one_form_from_json(const Json& j) {
  VarCtx chart = chart_from_json(j);
  if (!j.contains("components") || !j["components"].is_array()) {
    throw DimensionError("a 1-form needs a \"components\" array");
  }
  const Json& comps = j["components"];
  if (comps.size() != chart.size()) {
    throw DimensionError("a 1-form needs one component per chart coordinate");
  }
  bool scalar = std::all_of(comps.begin(), comps.end(), [](const Json& c) { return !c.is_array(); });
  if (scalar) {
    std::vector<Expr> cs;
    for (const auto& c : comps) cs.push_back(parse(entry_text(c)));
    return DiffForm::one_form(chart, cs);
  }
  std::vector<ExprMatrix> ms;
  for (const auto& c : comps) ms.push_back(expr_matrix_from_json(c));
  return DiffForm::matrix_one_form(chart, ms);
}

gauge::PathCurve polyline_from_json(const Json& j, const VarCtx& chart) {
  if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
    throw DimensionError("a polyline needs a \"points\" array");
  }
  if (j.contains("chart") && chart_from_json(j) != chart) {
    throw DimensionError("polyline chart does not match the connection's chart");
  }
  std::vector<std::vector<double>> pts;
  for (const auto& p : j["points"]) {
    if (!p.is_array()) throw DimensionError("polyline points must be arrays");
    std::vector<double> x;
    for (const auto& c : p) {
      if (c.is_number()) {
        x.push_back(c.get<double>());
      } else if (c.is_string()) {
        x.push_back(eval_numeric(parse(c.get<std::string>()), {}).real());
      } else {
        throw DimensionError("polyline coordinates must be numbers");
      }
    }
    pts.push_back(std::move(x));
  }
  return gauge::PathCurve::polyline(chart, pts);
}

sigma::Metric metric_from_json(const Json& j) {
  VarCtx chart = chart_from_json(j);
  if (!j.contains("g")) throw DimensionError("a metric needs a \"g\" matrix");
  return sigma::Metric(chart, expr_matrix_from_json(j["g"]));
}

std::vector<double> parse_csv_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty entry in list '" + text + "'", 0);
    item = item.substr(b, e - b + 1);
    out.push_back(eval_numeric(parse(item), {}).real());
  }
  if (out.empty()) throw ParseError("empty list", 0);
  return out;
}

std::string format_real(double x) {
  if (x == 0) return "0";  // also folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string format_complex(std::complex<double> z) {
  double re = std::abs(z.real()) < 1e-14 ? 0.0 : z.real();
  double im = std::abs(z.imag()) < 1e-14 ? 0.0 : z.imag();
  if (im == 0) return format_real(re);
  std::string imag = (std::abs(im) == 1 ? "" : format_real(std::abs(im))) + "i";
  if (re == 0) return (im < 0 ? "-" : "") + imag;
  return format_real(re) + (im < 0 ? "-" : "+") + imag;
}

std::string format_matrix(const lie::Mat& m) {
  std::string s = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) s += ", ";
      s += format_complex(m(r, c));
    }
    s += "]";
  }
  return s + "]";
}

Json complex_to_json(std::complex<double> z) { return format_complex(z); }

Json matrix_to_json(const lie::Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format_complex(m(r, c)));
    out.push_back(row);
  }
  return out;
}

}  // namespace darboux::io
