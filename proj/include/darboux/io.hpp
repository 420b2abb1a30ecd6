#pragma once

#include <complex>
#include <string>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/expr_matrix.hpp"
#include "darboux/forms.hpp"
#include "darboux/gauge.hpp"
#include "darboux/lie.hpp"
#include "darboux/sigma.hpp"
#include "darboux/symplin.hpp"
#include "json.hpp"

namespace darboux::io {

using Json = nlohmann::ordered_json;

/// `arg` is either inline JSON (starts with '{' or '[') or a path to a file.
/// Throws ParseError on bad JSON and DimensionError on an unreadable file.
Json load_json(const std::string& arg);
/// Contents of a file, or `arg` itself when it is inline JSON.
std::string load_text(const std::string& arg);

/// Rational matrix: array of rows, entries "p/q" strings or integers.
symplin::QMatrix qmatrix_from_json(const Json& j);
Json qmatrix_to_json(const symplin::QMatrix& m);

/// Complex matrix: entries are numbers or expression strings without free
/// symbols, e.g. "i", "-1/2", "sqrt(2)*i".
lie::Mat complex_matrix_from_json(const Json& j);

/// Symbolic matrix of expression strings.
ExprMatrix expr_matrix_from_json(const Json& j);

/// {"chart": [...], "components": [c_1, ..., c_n]}: one component per chart
/// coordinate, each an expression string (scalar form) or a matrix.
DiffForm one_form_from_json(const Json& j);

/// {"points": [[...], ...]} with an optional "chart" that must match.
gauge::PathCurve polyline_from_json(const Json& j, const VarCtx& chart);

/// {"chart": [...], "g": [[...], ...]}.
sigma::Metric metric_from_json(const Json& j);

VarCtx chart_from_json(const Json& j);

/// Comma-separated reals.
std::vector<double> parse_csv_reals(const std::string& text);

/// Shortest round-trip-stable text for a real: 12 significant digits.
std::string format_real(double x);
/// "a", "bi", "a+bi" or "a-bi"; components below 1e-14 in magnitude print as 0.
std::string format_complex(std::complex<double> z);
/// "[[a, b], [c, d]]".
std::string format_matrix(const lie::Mat& m);
Json complex_to_json(std::complex<double> z);
Json matrix_to_json(const lie::Mat& m);

}  // namespace darboux::io
