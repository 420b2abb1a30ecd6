#include "darboux/poly.hpp"

#include <algorithm>

#include "darboux/error.hpp"

namespace darboux {

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end());
  for (auto& f : factors) {
    if (f.second == 0) continue;
    if (!factors_.empty() && factors_.back().first == f.first) {
      factors_.back().second += f.second;
      if (factors_.back().second == 0) factors_.pop_back();
    } else {
      factors_.push_back(std::move(f));
    }
  }
}

Monomial Monomial::variable(std::string name, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.emplace_back(std::move(name), exponent);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

int Monomial::exponent(const std::string& name) const {
  for (const auto& f : factors_) {
    if (f.first == name) return f.second;
  }
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() || j < o.factors_.size()) {
    if (j == o.factors_.size() ||
        (i < factors_.size() && factors_[i].first < o.factors_[j].first)) {
      r.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() || o.factors_[j].first < factors_[i].first) {
      r.factors_.push_back(o.factors_[j++]);
    } else {
      int e = factors_[i].second + o.factors_[j].second;
      if (e != 0) r.factors_.emplace_back(factors_[i].first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0;
  for (const auto& f : o.factors_) {
    while (i < factors_.size() && factors_[i].first < f.first) r.factors_.push_back(factors_[i++]);
    if (i == factors_.size() || factors_[i].first != f.first) return std::nullopt;
    int e = factors_[i].second - f.second;
    if (e < 0) return std::nullopt;
    if (e > 0) r.factors_.emplace_back(f.first, e);
    ++i;
  }
  while (i < factors_.size()) r.factors_.push_back(factors_[i++]);
  return r;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first != name) r.factors_.push_back(f);
  }
  return r;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() && j < fb.size()) {
    if (fa[i].first == fb[j].first) {
      if (fa[i].second != fb[j].second) return fa[i].second > fb[j].second;
      ++i;
      ++j;
    } else {
      return fa[i].first < fb[j].first;
    }
  }
  return i < fa.size() && j == fb.size();
}

// -------------------------------------------------------------------- Poly

Poly::Poly(GaussQ c) {
  if (!c.is_zero()) terms_.emplace(Monomial(), std::move(c));
}

Poly Poly::variable(const std::string& name) { return term(GaussQ(1), Monomial::variable(name)); }

Poly Poly::term(GaussQ coeff, Monomial m) {
  Poly p;
  if (!coeff.is_zero()) p.terms_.emplace(std::move(m), std::move(coeff));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

GaussQ Poly::constant_value() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? GaussQ(0) : it->second;
}

int Poly::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

int Poly::degree_in(const std::string& name) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(name));
  return d;
}

std::set<std::string> Poly::symbols() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.insert(f.first);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const GaussQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::scaled(const GaussQ& k) const {
  if (k.is_zero()) return {};
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c *= k;
  return r;
}

Poly Poly::times_monomial(const Monomial& mono) const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m * mono, c);
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly result(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
  if (d.is_constant()) return scaled(d.constant_value().inverse());
  Poly rem = *this;
  Poly quot;
  const Monomial& lm = d.leading_monomial();
  GaussQ lc_inv = d.leading_coeff().inverse();
  while (!rem.is_zero()) {
    auto m = rem.leading_monomial().divide(lm);
    if (!m) return std::nullopt;
    Poly q = Poly::term(rem.leading_coeff() * lc_inv, *m);
    quot += q;
    rem -= q * d;
  }
  return quot;
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  return scaled(leading_coeff().inverse());
}

std::vector<Poly> Poly::coefficients_in(const std::string& name) const {
  std::vector<Poly> out(static_cast<std::size_t>(degree_in(name)) + 1);
  for (const auto& [m, c] : terms_) {
    out[static_cast<std::size_t>(m.exponent(name))].add_term(m.without(name), c);
  }
  return out;
}

Poly Poly::from_coefficients(const std::vector<Poly>& coeffs, const std::string& name) {
  Poly r;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    r += coeffs[k].times_monomial(Monomial::variable(name, static_cast<int>(k)));
  }
  return r;
}

// --------------------------------------------------------------------- gcd

namespace {

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw Error("internal: inexact polynomial division");
  return *q;
}

Poly content_in(const Poly& p, const std::string& v) {
  Poly g;
  for (const auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

Poly primitive_in(const Poly& p, const std::string& v) {
  if (p.is_zero()) return p;
  return exact(p, content_in(p, v));
}

// Pseudo-remainder of a by b as polynomials in v.
Poly pseudo_remainder(Poly a, const Poly& b, const std::string& v) {
  int db = b.degree_in(v);
  Poly lcb = b.coefficients_in(v).back();
  while (!a.is_zero()) {
    int da = a.degree_in(v);
    if (da < db) break;
    Poly lca = a.coefficients_in(v).back();
    a = lcb * a - (lca * b).times_monomial(Monomial::variable(v, da - db));
  }
  return a;
}

// gcd when one side is a single term: the common power product.
Poly monomial_gcd(const Poly& a, const Poly& b) {
  const Poly& mono = a.size() == 1 ? a : b;
  const Poly& other = a.size() == 1 ? b : a;
  std::vector<Monomial::Factor> common = mono.leading_monomial().factors();
  for (const auto& [m, c] : other.terms()) {
    std::vector<Monomial::Factor> next;
    for (const auto& [name, k] : common) {
      int e = std::min(k, m.exponent(name));
      if (e > 0) next.emplace_back(name, e);
    }
    common = std::move(next);
    if (common.empty()) break;
  }
  return Poly::term(GaussQ(1), Monomial(std::move(common)));
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  if (a == b) return a.monic();

  auto sa = a.symbols();
  auto sb = b.symbols();
  std::string v;
  for (const auto& s : sa) {
    if (sb.count(s)) {
      v = s;
      break;
    }
  }
  // A common factor can only involve shared symbols.
  if (v.empty()) return Poly(1);

  if (a.size() == 1 || b.size() == 1) return monomial_gcd(a, b);

  Poly ca = content_in(a, v);
  Poly cb = content_in(b, v);
  Poly g = gcd(ca, cb);
  Poly pa = exact(a, ca);
  Poly pb = exact(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    Poly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    // Rescaling keeps the rational coefficients from growing.
    pb = primitive_in(r, v).monic();
  }
  return (g * primitive_in(pb, v)).monic();
}

// ----------------------------------------------------------------- RatFunc

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(1) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  GaussQ lc = den_.leading_coeff();
  if (!lc.is_one()) {
    GaussQ inv = lc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw DivisionByZeroError("division by the zero polynomial");
  return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inverse(); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<unsigned>(e));
  r.den_ = den_.pow(static_cast<unsigned>(e));
  return r;
}

}  // namespace darboux
