#include "darboux/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "darboux/error.hpp"

namespace darboux {

Laurent::Laurent(long c) : Laurent(mpq_class(c)) {}

Laurent::Laurent(mpq_class c) {
  if (sgn(c) != 0) terms_[Key{}] = c;
}

Laurent Laurent::monomial(mpq_class c, Key key) {
  Laurent l;
  std::sort(key.begin(), key.end());
  Key clean;
  for (const auto& [n, e] : key) {
    if (!clean.empty() && clean.back().first == n) {
      clean.back().second += e;
    } else {
      clean.emplace_back(n, e);
    }
  }
  std::erase_if(clean, [](const auto& f) { return f.second == 0; });
  if (sgn(c) != 0) l.terms_[clean] = c;
  return l;
}

Laurent Laurent::variable(const std::string& name, int exponent) {
  return monomial(1, Key{{name, exponent}});
}

Laurent Laurent::monomial_inverse() const {
  if (!is_monomial()) throw DivisionByZeroError("only single-term Laurent polynomials are invertible");
  const auto& [k, c] = *terms_.begin();
  Key inv = k;
  for (auto& f : inv) f.second = -f.second;
  return monomial(1 / c, inv);
}

Laurent Laurent::pow(unsigned e) const {
  Laurent r(1), b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    e >>= 1u;
    if (e) b = b * b;
  }
  return r;
}

std::pair<int, int> Laurent::exponent_range(const std::string& name) const {
  bool first = true;
  int lo = 0, hi = 0;
  for (const auto& [k, c] : terms_) {
    int e = 0;
    for (const auto& [n, x] : k) {
      if (n == name) e = x;
    }
    if (first) {
      lo = hi = e;
      first = false;
    } else {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
  }
  return {lo, hi};
}

void Laurent::add(const Key& k, const mpq_class& c) {
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (sgn(c) != 0) terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (sgn(it->second) == 0) terms_.erase(it);
}

Laurent& Laurent::operator+=(const Laurent& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  for (const auto& [k, c] : o.terms_) add(k, -c);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      Laurent::Key k;
      std::size_t i = 0, j = 0;
      while (i < ka.size() || j < kb.size()) {
        if (j == kb.size() || (i < ka.size() && ka[i].first < kb[j].first)) {
          k.push_back(ka[i++]);
        } else if (i == ka.size() || kb[j].first < ka[i].first) {
          k.push_back(kb[j++]);
        } else {
          int e = ka[i].second + kb[j].second;
          if (e != 0) k.emplace_back(ka[i].first, e);
          ++i;
          ++j;
        }
      }
      out.add(k, ca * cb);
    }
  }
  return out;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

std::complex<double> Laurent::evaluate(const std::map<std::string, std::complex<double>>& at) const {
  std::complex<double> sum = 0;
  for (const auto& [k, c] : terms_) {
    std::complex<double> t = c.get_d();
    for (const auto& [n, e] : k) {
      auto it = at.find(n);
      if (it == at.end()) throw DimensionError("no value bound for '" + n + "'");
      t *= std::pow(it->second, e);
    }
    sum += t;
  }
  return sum;
}

RatFunc Laurent::to_ratfunc() const {
  std::map<std::string, int> shift;  // most negative exponent per variable
  for (const auto& [k, c] : terms_) {
    for (const auto& [n, e] : k) {
      if (e < 0) shift[n] = std::min(shift[n], e);
    }
  }
  Poly num;
  for (const auto& [k, c] : terms_) {
    std::map<std::string, int> exps;
    for (const auto& [n, e] : k) exps[n] = e;
    std::vector<Monomial::Factor> f;
    for (const auto& [n, s] : shift) exps[n] -= s;
    for (const auto& [n, e] : exps) {
      if (e > 0) f.emplace_back(n, e);
    }
    num += Poly::term(GaussQ(c), Monomial(std::move(f)));
  }
  std::vector<Monomial::Factor> d;
  for (const auto& [n, s] : shift) d.emplace_back(n, -s);
  return RatFunc(num, Poly::term(GaussQ(1), Monomial(std::move(d))));
}

}  // namespace darboux
