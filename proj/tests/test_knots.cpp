#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <functional>
#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"

#include "darboux/error.hpp"
#include "darboux/expr.hpp"
#include "darboux/link_diagram.hpp"
#include "darboux/reidemeister.hpp"
#include "darboux/skein.hpp"

using namespace darboux;
using namespace darboux::knots;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(DARBOUX_TEST_DATA) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LinkDiagram load(const std::string& name) { return parse_pd(slurp(name)); }

RatFunc rf(const char* text) { return to_ratfunc(parse(text)); }

// Component count straight from the PD rows: each crossing passes the under
// strand i -> k and the over strand according to its sign.
int count_components(const std::vector<Crossing>& cs, int free_loops) {
  std::map<int, int> next;
  for (const auto& c : cs) {
    next[c.arcs[0]] = c.arcs[2];
    if (c.sign > 0) {
      next[c.arcs[3]] = c.arcs[1];
    } else {
      next[c.arcs[1]] = c.arcs[3];
    }
  }
  std::set<int> seen;
  int comps = 0;
  for (const auto& [a, b] : next) {
    if (seen.count(a)) continue;
    ++comps;
    for (int x = a; !seen.count(x); x = next[x]) seen.insert(x);
  }
  return comps + free_loops;
}

// Kauffman bracket state sum, normalised by the writhe. Returns V as a map
// from exponent of s = t^1/2 to integer coefficient. A = t^-1/4 = s^-1/2, so
// work with exponents of A and halve at the end.
std::map<int, long> jones_by_bracket(const LinkDiagram& d) {
  const std::size_t n = d.size();
  std::map<int, long> bracket;  // exponent of A -> coefficient
  for (std::size_t state = 0; state < (std::size_t{1} << n); ++state) {
    std::map<int, int> parent;
    std::function<int(int)> find = [&](int a) {
      if (!parent.count(a)) parent[a] = a;
      return parent[a] == a ? a : parent[a] = find(parent[a]);
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    int a_count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& x = d.crossings()[c].arcs;
      if (state >> c & 1u) {
        ++a_count;
        unite(x[0], x[1]);
        unite(x[2], x[3]);
      } else {
        unite(x[0], x[3]);
        unite(x[1], x[2]);
      }
    }
    std::set<int> roots;
    for (int a = 1; a <= d.arc_count(); ++a) roots.insert(find(a));
    int loops = static_cast<int>(roots.size()) + d.free_loops();
    // (-A^2 - A^-2)^(loops - 1)
    std::map<int, long> term{{a_count - (static_cast<int>(n) - a_count), 1}};
    for (int l = 1; l < loops; ++l) {
      std::map<int, long> next;
      for (const auto& [e, c] : term) {
        next[e + 2] -= c;
        next[e - 2] -= c;
      }
      term = next;
    }
    for (const auto& [e, c] : term) bracket[e] += c;
  }
  int w = writhe(d);
  long sign = (w % 2 == 0) ? 1 : -1;  // (-A^3)^-w
  std::map<int, long> v;
  for (const auto& [e, c] : bracket) {
    if (c == 0) continue;
    int ea = e - 3 * w;
    REQUIRE(ea % 2 == 0);
    v[-ea / 2] += sign * c;
  }
  std::erase_if(v, [](const auto& p) { return p.second == 0; });
  return v;
}

std::map<int, long> as_map(const SkeinValue& v) {
  std::map<int, long> out;
  for (const auto& [k, c] : v.laurent().terms()) {
    REQUIRE(c.get_den() == 1);
    out[k.empty() ? 0 : k.front().second] = c.get_num().get_si();
  }
  return out;
}

struct Named {
  std::string name;
  LinkDiagram d;
};

std::vector<Named> corpus() {
  std::vector<Named> c;
  c.push_back({"unknot", load("unknot.json")});
  c.push_back({"unlink2", load("unlink2.json")});
  c.push_back({"kprime", load("kprime.json")});
  c.push_back({"hopf", load("hopf.json")});
  c.push_back({"hopf_negative", load("hopf_negative.json")});
  c.push_back({"trefoil", load("trefoil.json")});
  c.push_back({"trefoil_right", load("trefoil_right.json")});
  c.push_back({"figure_eight", braid_closure(3, {1, -2, 1, -2})});
  c.push_back({"cinquefoil", braid_closure(2, {1, 1, 1, 1, 1})});
  c.push_back({"torus_link_2_4", braid_closure(2, {1, 1, 1, 1})});
  c.push_back({"borromean", braid_closure(3, {1, -2, 1, -2, 1, -2})});
  c.push_back({"braid_121", braid_closure(3, {1, 2, 1})});
  c.push_back({"two_crossing_unknot", braid_closure(3, {1, -2})});
  c.push_back({"trefoil_and_circle", braid_closure(3, {1, 1, 1})});
  c.push_back({"cancelling_pair", braid_closure(2, {1, -1, 1, 1, 1})});
  c.push_back({"three_twist", braid_closure(3, {1, 1, 1, 2, -1, 2})});
  return c;
}

}  // namespace

TEST_CASE("parse planar diagrams") {
  auto u = load("unknot.json");
  CHECK(u.size() == 0);
  CHECK(u.components() == 1);

  auto t = load("trefoil.json");
  CHECK(t.size() == 3);
  CHECK(t.components() == count_components(t.crossings(), t.free_loops()));
  CHECK(t.components() == 1);

  auto h = load("hopf.json");
  CHECK(h.size() == 2);
  CHECK(h.components() == count_components(h.crossings(), h.free_loops()));
  CHECK(h.components() == 2);

  for (const auto& [name, d] : corpus()) {
    CAPTURE(name);
    CHECK(d.components() == count_components(d.crossings(), d.free_loops()));
    auto back = parse_pd(to_pd_json(d));
    CHECK(back == d);
  }
}

TEST_CASE("invalid diagrams are rejected") {
  // label 1 three times, label 2 once
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[{"sign":1,"arcs":[1,1,1,2]}]})"), DiagramError);
  // with sign +1 the kink [1,2,2,1] gives arc 1 two heads
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[{"sign":1,"arcs":[1,2,2,1]}]})"), DiagramError);
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[],"free_loops":1,"colour":"red"})"), DiagramError);
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[{"sign":2,"arcs":[1,2,2,1]}]})"), DiagramError);
  CHECK_THROWS_AS(parse_pd(R"({"components":2,"crossings":[],"free_loops":1})"), DiagramError);
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[],"free_loops":0})"), DiagramError);
  // passes the head/tail count but cannot be drawn in the plane
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[{"sign":1,"arcs":[1,2,1,2]}]})"), DiagramError);
  CHECK_THROWS_AS(parse_pd(R"({"crossings":[)"), ParseError);
}

TEST_CASE("writhe") {
  CHECK(writhe(load("unknot.json")) == 0);
  CHECK(writhe(load("trefoil_right.json")) == 3);
  CHECK(writhe(load("kprime.json")) == -1);
  CHECK(writhe(load("trefoil.json")) == -3);
}

TEST_CASE("switch and smooth") {
  for (const auto& [name, d] : corpus()) {
    for (std::size_t c = 0; c < d.size(); ++c) {
      CAPTURE(name);
      CHECK(switch_crossing(switch_crossing(d, c), c) == d);
      CHECK(writhe(switch_crossing(d, c)) == writhe(d) - 2 * d.crossings()[c].sign);
      int diff = smooth_crossing(d, c).components() - d.components();
      CHECK((diff == 1 || diff == -1));
    }
  }
  auto hopf = load("hopf.json");
  auto s = smooth_crossing(hopf, 0);
  CHECK(s.components() == 1);
  CHECK(skein_evaluate(s, Invariant::generic).rational() == RatFunc(GaussQ(1)));

  auto tref = load("trefoil_right.json");
  auto t0 = smooth_crossing(tref, 0);
  CHECK(t0.components() == 2);
  CHECK(t0.size() == 2);
  CHECK(skein_evaluate(t0, Invariant::generic) == skein_evaluate(hopf, Invariant::generic));

  CHECK_THROWS_AS(switch_crossing(hopf, 2), DimensionError);
  CHECK_THROWS_AS(smooth_crossing(hopf, 7), DimensionError);
}

TEST_CASE("Reidemeister moves: examples") {
  auto k = load("kprime.json");
  auto u = reidemeister(k, Move::r1_remove, Site{});
  CHECK(u.size() == 0);
  CHECK(u.components() == 1);
  CHECK(u == LinkDiagram::unlink(1));

  auto t = load("trefoil_right.json");
  for (const auto& site : move_sites(t, Move::r1_add)) {
    auto k1 = reidemeister(t, Move::r1_add, site);
    CHECK(writhe(k1) == writhe(t) + site.sign);
    CHECK(k1.size() == 4);
  }

  for (const auto& [name, d] : corpus()) {
    for (const auto& site : move_sites(d, Move::r2_add)) {
      auto up = reidemeister(d, Move::r2_add, site);
      REQUIRE(up.size() == d.size() + 2);
      bool restored = false;
      for (const auto& back : move_sites(up, Move::r2_remove)) {
        if (reidemeister(up, Move::r2_remove, back) == d.relabeled()) restored = true;
      }
      CAPTURE(name);
      CHECK(restored);
    }
  }

  CHECK_THROWS_AS(reidemeister(t, Move::r1_remove, Site{}), DiagramError);
  CHECK_THROWS_AS(reidemeister(t, Move::r3, Site{}), DiagramError);
  Site bad;
  bad.face = 99;
  CHECK_THROWS_AS(reidemeister(t, Move::r2_remove, bad), DiagramError);
  CHECK(parse_move("R1+") == Move::r1_add);
  CHECK_THROWS_AS(parse_move("R4"), DiagramError);
}

TEST_CASE("generic skein values") {
  CHECK(skein_evaluate(load("unknot.json"), Invariant::generic).rational() == RatFunc(GaussQ(1)));
  CHECK(skein_evaluate(load("unlink2.json"), Invariant::generic).rational() == rf("(x+y)/z"));
  CHECK(skein_evaluate(load("hopf.json"), Invariant::generic).rational() == rf("(z^2 - x*y - y^2)/(x*z)"));
  CHECK(skein_evaluate(load("trefoil_right.json"), Invariant::generic).rational() ==
        rf("(z^2 - 2*x*y - y^2)/x^2"));
  // mirror images exchange x and y
  CHECK(skein_evaluate(load("trefoil.json"), Invariant::generic).rational() == rf("(z^2 - 2*x*y - x^2)/y^2"));
  CHECK(skein_evaluate(load("unlink2.json"), Invariant::generic).str() == "(x + y)/z");
}

TEST_CASE("Jones values") {
  CHECK(skein_evaluate(load("trefoil.json"), Invariant::jones).str() == "-t^-4 + t^-3 + t^-1");
  CHECK(skein_evaluate(load("trefoil.json"), Invariant::jones).compact() == "-t^-4+t^-3+t^-1");
  CHECK(skein_evaluate(load("hopf_negative.json"), Invariant::jones).str() == "-t^-5/2 - t^-1/2");
  // the other chirality
  CHECK(skein_evaluate(load("trefoil_right.json"), Invariant::jones).str() == "t + t^3 - t^4");
  CHECK(skein_evaluate(load("hopf.json"), Invariant::jones).str() == "-t^1/2 - t^5/2");
  CHECK(skein_evaluate(braid_closure(3, {1, -2, 1, -2}), Invariant::jones).str() == "t^-2 - t^-1 + 1 - t + t^2");

  for (const auto& [name, d] : corpus()) {
    CAPTURE(name);
    CHECK(as_map(skein_evaluate(d, Invariant::jones)) == jones_by_bracket(d));
  }
}

TEST_CASE("Conway and HOMFLY") {
  CHECK(skein_evaluate(load("trefoil.json"), Invariant::conway).str() == "z^2 + 1");
  CHECK(skein_evaluate(load("hopf.json"), Invariant::conway).str() == "z");
  CHECK(skein_evaluate(load("unlink2.json"), Invariant::conway).str() == "0");
  CHECK(skein_evaluate(braid_closure(3, {1, -2, 1, -2}), Invariant::conway).str() == "-z^2 + 1");

  // HOMFLY at a = t^-1, z = t^1/2 - t^-1/2 is Jones; at a = 1 it is Conway.
  const std::complex<double> s(0.83, 0.41);
  for (const auto& [name, d] : corpus()) {
    CAPTURE(name);
    auto h = skein_evaluate(d, Invariant::homfly).laurent();
    auto j = skein_evaluate(d, Invariant::jones).laurent();
    auto c = skein_evaluate(d, Invariant::conway).laurent();
    auto hj = h.evaluate({{"a", 1.0 / (s * s)}, {"z", s - 1.0 / s}});
    CHECK(std::abs(hj - j.evaluate({{"s", s}})) < 1e-9);
    auto hc = h.evaluate({{"a", 1.0}, {"z", s}});
    CHECK(std::abs(hc - c.evaluate({{"z", s}})) < 1e-9);
  }
}

TEST_CASE("unlinks") {
  Laurent d = -(Laurent::variable("s") + Laurent::variable("s", -1));
  for (int c = 1; c <= 4; ++c) {
    CHECK(skein_evaluate(LinkDiagram::unlink(c), Invariant::jones).laurent() == d.pow(c - 1));
  }
}

TEST_CASE("skein triple at every crossing") {
  const Laurent s = Laurent::variable("s"), si = Laurent::variable("s", -1);
  const Laurent x = Laurent::variable("x"), y = Laurent::variable("y"), z = Laurent::variable("z");
  for (const auto& [name, d] : corpus()) {
    for (std::size_t c = 0; c < d.size(); ++c) {
      CAPTURE(name);
      CAPTURE(c);
      bool positive = d.crossings()[c].sign > 0;
      LinkDiagram plus = positive ? d : switch_crossing(d, c);
      LinkDiagram minus = positive ? switch_crossing(d, c) : d;
      LinkDiagram zero = smooth_crossing(d, c);
      auto v = [](const LinkDiagram& e) { return skein_evaluate(e, Invariant::jones).laurent(); };
      CHECK((si * si * v(plus) - s * s * v(minus) - (s - si) * v(zero)).is_zero());
      auto p = [](const LinkDiagram& e) { return skein_evaluate(e, Invariant::generic).laurent(); };
      CHECK((x * p(plus) + y * p(minus) - z * p(zero)).is_zero());
    }
  }
}

TEST_CASE("Reidemeister invariance over the corpus") {
  std::map<Move, int> applied;
  for (const auto& [name, d] : corpus()) {
    auto jones = skein_evaluate(d, Invariant::jones);
    auto conway = skein_evaluate(d, Invariant::conway);
    for (Move m : {Move::r1_add, Move::r1_remove, Move::r2_add, Move::r2_remove, Move::r3}) {
      for (const auto& site : move_sites(d, m)) {
        auto e = reidemeister(d, m, site);
        CAPTURE(name);
        CAPTURE(move_name(m));
        if (e.size() > 10) continue;
        ++applied[m];
        CHECK(skein_evaluate(e, Invariant::jones) == jones);
        CHECK(skein_evaluate(e, Invariant::conway) == conway);
        CHECK(e.components() == d.components());
        if (m == Move::r1_add) {
          CHECK(writhe(e) == writhe(d) + site.sign);
        } else if (m == Move::r1_remove) {
          CHECK(std::abs(writhe(e) - writhe(d)) == 1);
        } else {
          CHECK(writhe(e) == writhe(d));
        }
      }
    }
  }
  for (Move m : {Move::r1_add, Move::r1_remove, Move::r2_add, Move::r2_remove, Move::r3}) {
    CAPTURE(move_name(m));
    CHECK(applied[m] > 0);
  }
}

TEST_CASE("R3 undoes itself and R1 insert/remove round trip") {
  int r3_count = 0;
  for (const auto& [name, d] : corpus()) {
    for (const auto& site : move_sites(d, Move::r3)) {
      auto e = reidemeister(d, Move::r3, site);
      bool back = false;
      for (const auto& s2 : move_sites(e, Move::r3)) {
        if (reidemeister(e, Move::r3, s2) == d.relabeled()) back = true;
      }
      CAPTURE(name);
      CHECK(back);
      ++r3_count;
    }
    for (const auto& site : move_sites(d, Move::r1_add)) {
      auto e = reidemeister(d, Move::r1_add, site);
      Site rm;
      rm.crossing = e.size() - 1;
      CHECK(reidemeister(e, Move::r1_remove, rm) == d.relabeled());
    }
  }
  CHECK(r3_count > 0);
}

namespace {

// Relabel so that components are traversed in `order` and each starts
// `shift` arcs after its usual basepoint.
LinkDiagram rebased(const LinkDiagram& d, const std::vector<int>& order, int shift) {
  const auto& comps = d.component_arcs();
  std::vector<int> label(d.arc_count() + 1);
  int next = 1;
  for (int ci : order) {
    const auto& comp = comps[ci];
    for (std::size_t k = 0; k < comp.size(); ++k) {
      label[comp[(k + shift) % comp.size()]] = next++;
    }
  }
  std::vector<Crossing> cs = d.crossings();
  for (auto& c : cs) {
    for (int& a : c.arcs) a = label[a];
  }
  return LinkDiagram(cs, d.free_loops());
}

}  // namespace

TEST_CASE("pivot-order independence") {
  for (const auto& [name, d] : corpus()) {
    if (d.size() > 8) continue;
    CAPTURE(name);
    for (Invariant inv : {Invariant::generic, Invariant::jones}) {
      auto reference = skein_evaluate(d, inv);
      auto all = skein_values_all_pivots(d, inv);
      REQUIRE(all.size() == 1);
      CHECK(all.front() == reference);

      std::vector<int> order(d.component_arcs().size());
      std::iota(order.begin(), order.end(), 0);
      do {
        for (int shift = 0; shift < 4; ++shift) {
          auto e = rebased(d, order, shift);
          auto vals = skein_values_all_pivots(e, inv);
          REQUIRE(vals.size() == 1);
          CHECK(vals.front() == reference);
        }
      } while (std::next_permutation(order.begin(), order.end()));

      PivotRule last = [](const LinkDiagram&, const std::vector<std::size_t>& bad) { return bad.back(); };
      CHECK(skein_evaluate(d, inv, last) == reference);
    }
  }
}

TEST_CASE("crossing budget") {
  auto big = braid_closure(2, std::vector<int>(15, 1));
  CHECK_THROWS_AS(skein_evaluate(big, Invariant::jones), ComplexityError);
  auto ok = braid_closure(2, std::vector<int>(14, 1));
  CHECK_NOTHROW(skein_evaluate(ok, Invariant::jones));
}

TEST_CASE("Jones at level k") {
  for (int k = 1; k <= 5; ++k) CHECK(std::abs(jones_at_level(load("unknot.json"), k) - 1.0) < 1e-12);

  // direct substitution of t = i into -t^-4 + t^-3 + t^-1
  const std::complex<double> t(0, 1);
  auto expected = -std::pow(t, -4) + std::pow(t, -3) + std::pow(t, -1);
  auto got = jones_at_level(load("trefoil.json"), 2);
  CHECK(std::abs(got - expected) < 1e-12);
  CHECK(std::abs(got - std::complex<double>(-1, 0)) < 1e-12);

  auto d = load("trefoil.json");
  for (std::size_t c = 0; c < d.size(); ++c) {
    auto r = witten_residuals(d, c, 3);
    CHECK(std::abs(r.adopted) < 1e-10);
    MESSAGE("crossing " << c << ": variant residual |" << std::abs(r.variant) << "|");
  }
  CHECK_THROWS_AS(jones_at_level(d, 0), DimensionError);
}
