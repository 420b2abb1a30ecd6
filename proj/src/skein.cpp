#include "darboux/skein.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "darboux/error.hpp"
#include "darboux/expr.hpp"

namespace darboux::knots {

namespace {

struct Ring {
  Laurent x, y, z, delta, x_inv, y_inv;
};

Ring ring_for(Invariant inv) {
  using L = Laurent;
  switch (inv) {
    case Invariant::generic: {
      L x = L::variable("x"), y = L::variable("y"), z = L::variable("z");
      return {x, y, z, (x + y) * L::variable("z", -1), L::variable("x", -1), L::variable("y", -1)};
    }
    case Invariant::conway:
      return {L(1), L(-1), L::variable("z"), L(0), L(1), L(-1)};
    case Invariant::jones: {
      L s = L::variable("s"), si = L::variable("s", -1);
      return {L::variable("s", -2), -L::variable("s", 2), s - si, -(s + si), L::variable("s", 2),
              -L::variable("s", -2)};
    }
    case Invariant::homfly: {
      L a = L::variable("a"), ai = L::variable("a", -1);
      return {a, -ai, L::variable("z"), (a - ai) * L::variable("z", -1), ai, -a};
    }
  }
  throw DiagramError("unknown invariant");
}

Laurent unlink_value(const Ring& r, int components) { return r.delta.pow(static_cast<unsigned>(components - 1)); }

// x P+ + y P- = z P0, solved for the diagram's own crossing type.
Laurent combine(const Ring& r, int sign, const Laurent& switched, const Laurent& smoothed) {
  if (sign > 0) return (r.z * smoothed - r.y * switched) * r.x_inv;
  return (r.z * smoothed - r.x * switched) * r.y_inv;
}

class Engine {
 public:
  Engine(Invariant inv, const PivotRule* pivot) : ring_(ring_for(inv)), pivot_(pivot) {}

  Laurent eval(const LinkDiagram& d) {
    if (d.size() == 0) return unlink_value(ring_, d.components());
    std::string k = d.key();
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    auto bad = bad_crossings(d);
    Laurent v;
    if (bad.empty()) {
      v = unlink_value(ring_, d.components());
    } else {
      std::size_t c = pivot_ ? (*pivot_)(d, bad) : bad.front();
      v = combine(ring_, d.crossings()[c].sign, eval(switch_crossing(d, c)), eval(smooth_crossing(d, c)));
    }
    memo_.emplace(std::move(k), v);
    return v;
  }

  std::vector<Laurent> eval_all(const LinkDiagram& d) {
    if (d.size() == 0) return {unlink_value(ring_, d.components())};
    std::string k = d.key();
    if (auto it = memo_all_.find(k); it != memo_all_.end()) return it->second;
    auto bad = bad_crossings(d);
    std::vector<Laurent> out;
    auto add = [&out](const Laurent& v) {
      for (const auto& w : out) {
        if (w == v) return;
      }
      out.push_back(v);
    };
    if (bad.empty()) add(unlink_value(ring_, d.components()));
    for (std::size_t c : bad) {
      auto sw = eval_all(switch_crossing(d, c));
      auto sm = eval_all(smooth_crossing(d, c));
      for (const auto& a : sw) {
        for (const auto& b : sm) add(combine(ring_, d.crossings()[c].sign, a, b));
      }
    }
    memo_all_.emplace(std::move(k), out);
    return out;
  }

 private:
  Ring ring_;
  const PivotRule* pivot_;
  std::unordered_map<std::string, Laurent> memo_;
  std::unordered_map<std::string, std::vector<Laurent>> memo_all_;
};

void check_budget(const LinkDiagram& d) {
  if (d.size() > kCrossingBudget) {
    throw ComplexityError("diagram has " + std::to_string(d.size()) + " crossings; the skein engine accepts at most " +
                          std::to_string(kCrossingBudget));
  }
}

std::string t_power(int e) {
  if (e == 0) return "";
  std::string p = e % 2 == 0 ? std::to_string(e / 2) : std::to_string(e) + "/2";
  return p == "1" ? "t" : "t^" + p;
}

std::string jones_text(const Laurent& v, bool spaced) {
  if (v.is_zero()) return "0";
  std::string out;
  bool first = true;
  std::map<int, mpq_class> by_power;
  for (const auto& [key, c] : v.terms()) by_power[key.empty() ? 0 : key.front().second] = c;
  for (const auto& [e, c] : by_power) {
    bool neg = sgn(c) < 0;
    mpq_class mag = abs(c);
    std::string mono = t_power(e);
    std::string body;
    if (mono.empty()) {
      body = mag.get_str();
    } else {
      body = mag == 1 ? mono : mag.get_str() + "*" + mono;
    }
    if (first) {
      out += neg ? "-" + body : body;
    } else {
      out += spaced ? (neg ? " - " : " + ") : (neg ? "-" : "+");
      out += body;
    }
    first = false;
  }
  return out;
}

std::string without_spaces(std::string s) {
  std::erase(s, ' ');
  return s;
}

}  // namespace

Invariant parse_invariant(const std::string& name) {
  if (name == "generic") return Invariant::generic;
  if (name == "conway") return Invariant::conway;
  if (name == "jones") return Invariant::jones;
  if (name == "homfly") return Invariant::homfly;
  throw DiagramError("unknown invariant '" + name + "' (expected generic, conway, jones, homfly)");
}

std::string invariant_name(Invariant i) {
  switch (i) {
    case Invariant::generic: return "generic";
    case Invariant::conway: return "conway";
    case Invariant::jones: return "jones";
    case Invariant::homfly: return "homfly";
  }
  return "?";
}

std::string SkeinValue::str() const {
  if (kind_ == Invariant::jones) return jones_text(value_, true);
  return from_ratfunc(value_.to_ratfunc()).str();
}

std::string SkeinValue::compact() const {
  if (kind_ == Invariant::jones) return jones_text(value_, false);
  return without_spaces(str());
}

std::vector<std::size_t> bad_crossings(const LinkDiagram& d) {
  std::vector<bool> visited(d.size(), false);
  std::vector<std::size_t> bad;
  for (const auto& comp : d.component_arcs()) {
    for (int a : comp) {
      Slot h = d.head(a);
      if (visited[h.crossing]) continue;
      visited[h.crossing] = true;
      if (h.slot == 0) bad.push_back(h.crossing);
    }
  }
  return bad;
}

SkeinValue skein_evaluate(const LinkDiagram& d, Invariant inv) {
  check_budget(d);
  Engine e(inv, nullptr);
  return {inv, e.eval(d)};
}

SkeinValue skein_evaluate(const LinkDiagram& d, Invariant inv, const PivotRule& pivot) {
  check_budget(d);
  Engine e(inv, &pivot);
  return {inv, e.eval(d)};
}

std::vector<SkeinValue> skein_values_all_pivots(const LinkDiagram& d, Invariant inv) {
  check_budget(d);
  Engine e(inv, nullptr);
  std::vector<SkeinValue> out;
  for (auto& v : e.eval_all(d)) out.emplace_back(inv, std::move(v));
  return out;
}

namespace {

std::map<std::string, std::complex<double>> level_point(int k) {
  if (k < 1) throw DimensionError("level k must be a positive integer");
  return {{"s", std::polar(1.0, std::numbers::pi / (k + 2))}};
}

}  // namespace

std::complex<double> jones_at_level(const LinkDiagram& d, int k) {
  auto at = level_point(k);
  return skein_evaluate(d, Invariant::jones).laurent().evaluate(at);
}

WittenResiduals witten_residuals(const LinkDiagram& d, std::size_t c, int k) {
  auto at = level_point(k);
  const Crossing& x = d.crossing(c);
  LinkDiagram other = switch_crossing(d, c);
  std::complex<double> v = jones_at_level(d, k), w = jones_at_level(other, k);
  std::complex<double> v0 = jones_at_level(smooth_crossing(d, c), k);
  std::complex<double> plus = x.sign > 0 ? v : w, minus = x.sign > 0 ? w : v;
  std::complex<double> s = at.at("s"), t = s * s;
  std::complex<double> z = s - 1.0 / s;
  return {plus / t - t * minus - z * v0, plus / t - t * minus + z * v0};
}

}  // namespace darboux::knots
