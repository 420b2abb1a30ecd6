#include "darboux/forms.hpp"

#include <algorithm>
#include <utility>

#include "darboux/error.hpp"

namespace darboux {

VectorField::VectorField(VarCtx chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (components_.size() != chart_.size()) {
    throw DimensionError("vector field needs one component per chart variable");
  }
}

Expr VectorField::apply(const Expr& f) const {
  std::vector<Expr> terms;
  for (std::size_t i = 0; i < chart_.size(); ++i) {
    if (components_[i].is_zero_constant()) continue;
    Expr d = differentiate(f, chart_[i]);
    if (!d.is_zero_constant()) terms.push_back(components_[i] * d);
  }
  return simplify(Expr::sum(std::move(terms)));
}

VectorField VectorField::simplified() const {
  std::vector<Expr> c;
  for (const auto& e : components_) c.push_back(simplify(e));
  return VectorField(chart_, std::move(c));
}

bool VectorField::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const Expr& e) { return simplify(e).is_zero_constant(); });
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  if (x.chart() != y.chart()) throw DimensionError("vector fields on different charts");
  std::vector<Expr> c;
  for (std::size_t i = 0; i < x.chart().size(); ++i) c.push_back(simplify(x.apply(y[i]) - y.apply(x[i])));
  return VectorField(x.chart(), std::move(c));
}

SmoothMap::SmoothMap(VarCtx src, VarCtx tgt, std::vector<Expr> comps)
    : source(std::move(src)), target(std::move(tgt)), components(std::move(comps)) {
  if (components.size() != target.size()) {
    throw DimensionError("smooth map needs one component per target variable");
  }
  for (const auto& e : components) {
    for (const auto& s : e.free_symbols()) {
      if (!source.contains(s) && s != "pi" && s != "hbar") {
        throw DimensionError("smooth map component uses foreign variable " + s);
      }
    }
  }
}

// ------------------------------------------------------------------ DiffForm

DiffForm::DiffForm(VarCtx chart, int degree, std::size_t shape)
    : chart_(std::move(chart)), degree_(degree), shape_(shape) {
  if (degree_ < 0 || static_cast<std::size_t>(degree_) > chart_.size()) {
    throw DimensionError("form degree exceeds chart dimension");
  }
}

DiffForm DiffForm::function(VarCtx chart, const Expr& f) {
  DiffForm out(std::move(chart), 0);
  out.add_term({}, f);
  return out;
}

DiffForm DiffForm::matrix_function(VarCtx chart, const ExprMatrix& m) {
  if (!m.is_square() || m.rows() == 0) throw DimensionError("matrix form needs square coefficients");
  DiffForm out(std::move(chart), 0, m.rows());
  out.add_term({}, m);
  return out;
}

DiffForm DiffForm::differential(VarCtx chart, const std::string& name) {
  std::size_t i = chart.index_of(name);
  DiffForm out(std::move(chart), 1);
  out.add_term({i}, Expr(1));
  return out;
}

DiffForm DiffForm::one_form(VarCtx chart, const std::vector<Expr>& coeffs) {
  if (coeffs.size() != chart.size()) throw DimensionError("one coefficient per chart variable expected");
  DiffForm out(std::move(chart), 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.add_term({i}, coeffs[i]);
  return out;
}

DiffForm DiffForm::matrix_one_form(VarCtx chart, const std::vector<ExprMatrix>& coeffs) {
  if (coeffs.size() != chart.size()) throw DimensionError("one coefficient per chart variable expected");
  std::size_t m = coeffs.empty() ? 0 : coeffs.front().rows();
  if (m == 0) throw DimensionError("matrix form needs square coefficients");
  DiffForm out(std::move(chart), 1, m);
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.add_term({i}, coeffs[i]);
  return out;
}

ExprMatrix DiffForm::zero_coeff() const {
  return shape_ == 0 ? ExprMatrix(1, 1) : ExprMatrix(shape_, shape_);
}

namespace {

// Sorts `idx` in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(DiffForm::Index& idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j) {
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
    }
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1]) return 0;
  }
  return sign;
}

}  // namespace

void DiffForm::add_term(Index idx, const ExprMatrix& coeff) {
  if (idx.size() != static_cast<std::size_t>(degree_)) throw DimensionError("index length must equal degree");
  for (auto i : idx) {
    if (i >= chart_.size()) throw DimensionError("form index outside chart");
  }
  std::size_t want = shape_ == 0 ? 1 : shape_;
  if (coeff.rows() != want || coeff.cols() != want) throw DimensionError("coefficient shape mismatch");
  int sign = sort_with_sign(idx);
  if (sign == 0) return;
  auto it = terms_.find(idx);
  ExprMatrix c = sign > 0 ? coeff : -coeff;
  ExprMatrix sum = (it == terms_.end() ? c : it->second + c).simplified();
  bool zero = true;
  for (std::size_t r = 0; r < sum.rows() && zero; ++r)
    for (std::size_t k = 0; k < sum.cols() && zero; ++k) zero = sum(r, k).is_zero_constant();
  if (zero) {
    if (it != terms_.end()) terms_.erase(it);
  } else {
    terms_[idx] = std::move(sum);
  }
}

void DiffForm::add_term(Index idx, const Expr& coeff) {
  if (shape_ != 0) throw DimensionError("scalar coefficient on a matrix-valued form");
  add_term(std::move(idx), ExprMatrix::scalar(coeff));
}

ExprMatrix DiffForm::coefficient(const Index& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? zero_coeff() : it->second;
}

Expr DiffForm::scalar_coefficient(const Index& idx) const {
  if (shape_ != 0) throw DimensionError("scalar coefficient requested from a matrix-valued form");
  return coefficient(idx)(0, 0);
}

DiffForm DiffForm::scaled(const Expr& c) const {
  DiffForm out(chart_, degree_, shape_);
  for (const auto& [idx, m] : terms_) out.add_term(idx, m.scaled(c));
  return out;
}

DiffForm DiffForm::left_multiply(const ExprMatrix& m) const {
  if (shape_ == 0) throw DimensionError("matrix multiple of a scalar form");
  DiffForm out(chart_, degree_, shape_);
  for (const auto& [idx, c] : terms_) out.add_term(idx, m * c);
  return out;
}

DiffForm DiffForm::right_multiply(const ExprMatrix& m) const {
  if (shape_ == 0) throw DimensionError("matrix multiple of a scalar form");
  DiffForm out(chart_, degree_, shape_);
  for (const auto& [idx, c] : terms_) out.add_term(idx, c * m);
  return out;
}

DiffForm DiffForm::trace() const {
  if (shape_ == 0) return *this;
  DiffForm out(chart_, degree_);
  for (const auto& [idx, c] : terms_) out.add_term(idx, c.trace());
  return out;
}

std::string DiffForm::str() const {
  if (terms_.empty()) return "0";
  std::vector<Expr> parts;
  std::string matrix_text;
  for (const auto& [idx, c] : terms_) {
    std::string basis;
    for (std::size_t k = 0; k < idx.size(); ++k) basis += (k ? "^d" : "d") + chart_[idx[k]];
    if (shape_ == 0) {
      parts.push_back(basis.empty() ? c(0, 0) : c(0, 0) * Expr::var(basis));
    } else {
      if (!matrix_text.empty()) matrix_text += " + ";
      matrix_text += c.str();
      if (!basis.empty()) matrix_text += "*" + basis;
    }
  }
  if (shape_ != 0) return matrix_text;
  return parts.size() == 1 ? parts.front().str() : Expr::sum(std::move(parts)).str();
}

namespace {

void require_same_chart(const DiffForm& a, const DiffForm& b) {
  if (a.chart() != b.chart()) throw DimensionError("forms live on different charts");
}

}  // namespace

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a, b);
  if (a.degree() != b.degree() || a.shape() != b.shape()) throw DimensionError("form sum shape mismatch");
  DiffForm out = a;
  for (const auto& [idx, c] : b.terms()) out.add_term(idx, c);
  return out;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

// ---------------------------------------------------------------- calculus

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a, b);
  if (!a.is_scalar() && !b.is_scalar() && a.shape() != b.shape()) {
    throw DimensionError("wedge of matrix forms with different shapes");
  }
  int degree = a.degree() + b.degree();
  if (static_cast<std::size_t>(degree) > a.chart().size()) throw DimensionError("wedge degree overflow");
  std::size_t shape = a.is_scalar() ? b.shape() : a.shape();
  DiffForm out(a.chart(), degree, shape);
  for (const auto& [ia, ca] : a.terms()) {
    for (const auto& [ib, cb] : b.terms()) {
      DiffForm::Index idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      ExprMatrix c;
      if (a.is_scalar() && b.is_scalar()) {
        c = ca * cb;
      } else if (a.is_scalar()) {
        c = cb.scaled(ca(0, 0));
      } else if (b.is_scalar()) {
        c = ca.scaled(cb(0, 0));
      } else {
        c = ca * cb;
      }
      out.add_term(std::move(idx), c);
    }
  }
  return out;
}

DiffForm ext_d(const DiffForm& a) {
  if (static_cast<std::size_t>(a.degree()) == a.chart().size()) return DiffForm(a.chart(), a.degree(), a.shape());
  DiffForm out(a.chart(), a.degree() + 1, a.shape());
  for (const auto& [idx, c] : a.terms()) {
    for (std::size_t j = 0; j < a.chart().size(); ++j) {
      if (std::find(idx.begin(), idx.end(), j) != idx.end()) continue;
      ExprMatrix dc = c.differentiate(a.chart()[j]);
      if (dc.is_zero()) continue;
      DiffForm::Index full{j};
      full.insert(full.end(), idx.begin(), idx.end());
      out.add_term(std::move(full), dc);
    }
  }
  return out;
}

DiffForm interior(const VectorField& x, const DiffForm& a) {
  if (x.chart() != a.chart()) throw DimensionError("vector field and form on different charts");
  if (a.degree() == 0) throw DimensionError("interior product of a 0-form");
  DiffForm out(a.chart(), a.degree() - 1, a.shape());
  for (const auto& [idx, c] : a.terms()) {
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const Expr& xr = x[idx[r]];
      if (xr.is_zero_constant()) continue;
      DiffForm::Index rest = idx;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(r));
      out.add_term(std::move(rest), c.scaled(r % 2 ? -xr : xr));
    }
  }
  return out;
}

ExprMatrix evaluate(const DiffForm& a, const std::vector<VectorField>& vectors) {
  if (vectors.size() != static_cast<std::size_t>(a.degree())) {
    throw DimensionError("number of vectors must equal the form degree");
  }
  DiffForm cur = a;
  for (const auto& v : vectors) cur = interior(v, cur);
  return cur.coefficient({});
}

DiffForm pullback(const SmoothMap& phi, const DiffForm& a) {
  if (phi.target != a.chart()) throw DimensionError("form does not live on the map's target chart");
  std::map<std::string, Expr> subst;
  for (std::size_t i = 0; i < phi.target.size(); ++i) subst[phi.target[i]] = phi.components[i];
  std::vector<DiffForm> dphi;
  for (const auto& comp : phi.components) {
    dphi.push_back(ext_d(DiffForm::function(phi.source, comp)));
  }
  if (static_cast<std::size_t>(a.degree()) > phi.source.size()) {
    throw DimensionError("pullback degree exceeds source dimension");
  }
  DiffForm out(phi.source, a.degree(), a.shape());
  for (const auto& [idx, c] : a.terms()) {
    DiffForm basis = DiffForm::function(phi.source, Expr(1));
    for (auto i : idx) basis = wedge(basis, dphi[i]);
    ExprMatrix pc = c.substitute(subst);
    for (const auto& [bidx, bc] : basis.terms()) {
      out.add_term(bidx, pc.scaled(bc(0, 0)));
    }
  }
  return out;
}

DiffForm curvature(const DiffForm& a) {
  if (a.degree() != 1) throw DimensionError("curvature needs a connection 1-form");
  if (a.chart().size() < 2) throw DimensionError("curvature needs a chart of dimension >= 2");
  return ext_d(a) + wedge(a, a);
}

DiffForm gauge_transform(const DiffForm& a, const ExprMatrix& g) {
  if (a.degree() != 1 || a.is_scalar()) throw DimensionError("gauge transform needs a matrix 1-form");
  if (g.rows() != a.shape() || g.cols() != a.shape()) throw DimensionError("gauge map shape mismatch");
  ExprMatrix ginv = g.inverse();
  DiffForm dg = ext_d(DiffForm::matrix_function(a.chart(), g));
  return a.left_multiply(g).right_multiply(ginv) - dg.right_multiply(ginv);
}

DiffForm chern_simons_form(const DiffForm& a) {
  if (a.degree() != 1) throw DimensionError("Chern-Simons form needs a connection 1-form");
  if (a.chart().size() < 3) throw DimensionError("Chern-Simons form needs a chart of dimension >= 3");
  DiffForm cubic = wedge(wedge(a, a), a).scaled(Expr(GaussQ(mpq_class(2, 3))));
  return (wedge(a, ext_d(a)) + cubic).trace();
}

DiffForm chern_form(const DiffForm& f) {
  if (f.degree() != 2) throw DimensionError("Chern form needs a curvature 2-form");
  return wedge(f, f).trace();
}

DiffForm canonical_symplectic_form(const VarCtx& chart, const std::vector<std::string>& qs,
                                   const std::vector<std::string>& ps) {
  if (qs.size() != ps.size()) throw DimensionError("unequal numbers of q and p variables");
  DiffForm out(chart, 2);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    out.add_term({chart.index_of(qs[i]), chart.index_of(ps[i])}, Expr(1));
  }
  return out;
}

}  // namespace darboux
