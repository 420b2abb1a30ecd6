#pragma once

// Hand-rolled generators for property tests. Fixed seeds keep runs
// reproducible.

#include <random>
#include <string>
#include <vector>

#include "darboux/expr.hpp"
#include "darboux/expr_matrix.hpp"
#include "darboux/forms.hpp"

namespace testgen {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed1234ULL);
  return gen;
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline double uniform_real(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// Random polynomial with small integer coefficients in `vars`, total degree
/// at most `degree`, with up to `max_terms` terms.
inline darboux::Expr random_poly(const std::vector<std::string>& vars, int degree,
                                 int max_terms = 4) {
  std::vector<darboux::Expr> terms;
  int n = uniform_int(1, max_terms);
  for (int t = 0; t < n; ++t) {
    int c = uniform_int(-4, 4);
    if (c == 0) c = 1;
    std::vector<darboux::Expr> f{darboux::Expr(c)};
    int budget = uniform_int(0, degree);
    for (int k = 0; k < budget; ++k) {
      f.push_back(darboux::Expr::var(vars[static_cast<std::size_t>(
          uniform_int(0, static_cast<int>(vars.size()) - 1))]));
    }
    terms.push_back(darboux::Expr::product(std::move(f)));
  }
  return darboux::Expr::sum(std::move(terms));
}

inline darboux::ExprMatrix random_matrix(const std::vector<std::string>& vars, std::size_t m,
                                         int degree, int max_terms = 2) {
  darboux::ExprMatrix out(m, m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      out(r, c) = uniform_int(0, 3) == 0 ? darboux::Expr() : random_poly(vars, degree, max_terms);
  return out;
}

/// Random form of the given degree; `shape` 0 gives a scalar form.
inline darboux::DiffForm random_form(const darboux::VarCtx& chart, int degree, std::size_t shape,
                                     int poly_degree = 2) {
  darboux::DiffForm out(chart, degree, shape);
  int n = uniform_int(1, 3);
  for (int t = 0; t < n; ++t) {
    darboux::DiffForm::Index idx;
    for (int k = 0; k < degree; ++k) {
      idx.push_back(static_cast<std::size_t>(uniform_int(0, static_cast<int>(chart.size()) - 1)));
    }
    if (shape == 0) {
      out.add_term(idx, random_poly(chart.names(), poly_degree, 3));
    } else {
      out.add_term(idx, random_matrix(chart.names(), shape, poly_degree));
    }
  }
  return out;
}

}  // namespace testgen
