#include "darboux/reidemeister.hpp"

#include <array>

#include "darboux/error.hpp"
#include "knot_detail.hpp"

namespace darboux::knots {

using detail::UnionFind;

namespace {

enum Dir { east = 0, north = 1, west = 2, south = 3 };

constexpr std::array<std::array<int, 2>, 4> kUnit{{{1, 0}, {0, 1}, {-1, 0}, {0, -1}}};

// A crossing in a local picture: labels at the compass points plus the
// directions where each strand enters and leaves.
Crossing compass_crossing(const std::array<int, 4>& label, Dir under_in, Dir over_in) {
  Dir under_out = static_cast<Dir>((under_in + 2) % 4);
  Dir over_out = static_cast<Dir>((over_in + 2) % 4);
  const auto& o = kUnit[over_out];
  const auto& u = kUnit[under_out];
  Crossing c;
  c.sign = o[0] * u[1] - o[1] * u[0] > 0 ? 1 : -1;
  for (int k = 0; k < 4; ++k) c.arcs[k] = label[(under_in + k) % 4];
  return c;
}

// Slot of `arc` at crossing `c` other than `not_slot` (or any slot if -1).
int other_slot(const Crossing& x, int arc, int not_slot) {
  for (int p = 0; p < 4; ++p) {
    if (x.arcs[p] == arc && p != not_slot) return p;
  }
  return -1;
}

// The slot on the same strand as `slot` at a crossing.
int strand_partner(int slot) { return (slot + 2) % 4; }

std::vector<Crossing> replace_label(std::vector<Crossing> cs, Slot s, int label) {
  cs[s.crossing].arcs[s.slot] = label;
  return cs;
}

LinkDiagram r1_add(const LinkDiagram& d, const Site& site) {
  if (site.sign != 1 && site.sign != -1) throw DiagramError("R1+ sign must be +1 or -1");
  const int n = d.arc_count();
  const int a1 = n + 1, m = n + 2;
  int a3 = n + 3;
  std::vector<Crossing> cs = d.crossings();
  int free_loops = d.free_loops();
  if (site.arc == 0) {
    if (free_loops == 0) throw DiagramError("R1+ on a free loop needs a free loop");
    --free_loops;
    a3 = a1;
  } else {
    if (site.arc < 1 || site.arc > n) throw DiagramError("R1+: no arc " + std::to_string(site.arc));
    cs = replace_label(std::move(cs), d.tail(site.arc), a1);
    cs = replace_label(std::move(cs), d.head(site.arc), a3);
  }
  // The strand enters from the south heading north; the loop closes on the
  // chosen side and the strand leaves on the other.
  bool left = site.side == Side::left;
  std::array<int, 4> label{};
  label[south] = a1;
  label[north] = m;
  label[left ? west : east] = m;
  label[left ? east : west] = a3;
  Dir second_in = left ? west : east;
  // First pass under gives sign +1 on the left and -1 on the right.
  bool first_under = (site.sign > 0) == left;
  cs.push_back(first_under ? compass_crossing(label, south, second_in) : compass_crossing(label, second_in, south));
  return detail::from_raw(std::move(cs), free_loops);
}

LinkDiagram r1_remove(const LinkDiagram& d, const Site& site) {
  const std::size_t c = site.crossing;
  const Crossing& x = d.crossing(c);
  for (int p = 0; p < 4; ++p) {
    if (x.is_incoming(p)) continue;
    int m = x.arcs[p];
    Slot h = d.head(m);
    if (h.crossing != c || (h.slot != (p + 1) % 4 && h.slot != (p + 3) % 4)) continue;
    int a1 = x.arcs[strand_partner(h.slot)];
    int a3 = x.arcs[strand_partner(p)];
    UnionFind uf;
    uf.unite(a1, a3);
    return detail::remove_and_merge(d, {c}, uf, {a1, a3});
  }
  throw DiagramError("R1-: crossing " + std::to_string(c) + " carries no kink");
}

const std::vector<Slot>& face_at(const std::vector<std::vector<Slot>>& faces, std::size_t f) {
  if (f >= faces.size()) throw DiagramError("no face " + std::to_string(f));
  return faces[f];
}

LinkDiagram r2_add(const LinkDiagram& d, const Site& site) {
  auto faces = d.faces();
  const auto& face = face_at(faces, site.face);
  if (site.over_edge >= face.size() || site.under_edge >= face.size() || site.over_edge == site.under_edge) {
    throw DiagramError("R2+: needs two distinct edges of the face");
  }
  Slot ea = face[site.over_edge], eb = face[site.under_edge];
  const Crossing& xa = d.crossings()[ea.crossing];
  const Crossing& xb = d.crossings()[eb.crossing];
  int a = xa.arcs[ea.slot], b = xb.arcs[eb.slot];
  if (a == b) throw DiagramError("R2+: the two edges lie on the same arc");
  // Local picture: the face lies north of b and south of a; a dips across b
  // at C_L (x = -1) and C_R (x = +1). The face is left of the boundary walk.
  bool b_east = !xb.is_incoming(eb.slot);  // walked along its orientation
  bool a_east = xa.is_incoming(ea.slot);
  const int n = d.arc_count();
  const int a_before = n + 1, a_mid = n + 2, a_after = n + 3;
  const int b_before = n + 4, b_mid = n + 5, b_after = n + 6;
  std::array<int, 4> left{}, right{};
  left[north] = a_east ? a_before : a_after;
  left[south] = a_mid;
  left[east] = b_mid;
  left[west] = b_east ? b_before : b_after;
  right[north] = a_east ? a_after : a_before;
  right[south] = a_mid;
  right[west] = b_mid;
  right[east] = b_east ? b_after : b_before;
  std::vector<Crossing> cs = d.crossings();
  cs = replace_label(std::move(cs), d.tail(a), a_before);
  cs = replace_label(std::move(cs), d.head(a), a_after);
  cs = replace_label(std::move(cs), d.tail(b), b_before);
  cs = replace_label(std::move(cs), d.head(b), b_after);
  Dir b_in = b_east ? west : east;
  cs.push_back(compass_crossing(left, b_in, a_east ? north : south));
  cs.push_back(compass_crossing(right, b_in, a_east ? south : north));
  return detail::from_raw(std::move(cs), d.free_loops());
}

// Whether `arc` is the over strand at both of its endpoints.
bool over_both(const LinkDiagram& d, int arc) {
  Slot h = d.head(arc), t = d.tail(arc);
  return d.crossings()[h.crossing].is_over(h.slot) && d.crossings()[t.crossing].is_over(t.slot);
}

bool under_both(const LinkDiagram& d, int arc) {
  Slot h = d.head(arc), t = d.tail(arc);
  return !d.crossings()[h.crossing].is_over(h.slot) && !d.crossings()[t.crossing].is_over(t.slot);
}

int arc_of(const LinkDiagram& d, Slot s) { return d.crossings()[s.crossing].arcs[s.slot]; }

bool is_r2_bigon(const LinkDiagram& d, const std::vector<Slot>& face) {
  if (face.size() != 2 || face[0].crossing == face[1].crossing) return false;
  int x = arc_of(d, face[0]), y = arc_of(d, face[1]);
  return (over_both(d, x) && under_both(d, y)) || (over_both(d, y) && under_both(d, x));
}

LinkDiagram r2_remove(const LinkDiagram& d, const Site& site) {
  auto faces = d.faces();
  const auto& face = face_at(faces, site.face);
  if (!is_r2_bigon(d, face)) throw DiagramError("R2-: face " + std::to_string(site.face) + " is not a removable bigon");
  std::size_t c1 = face[0].crossing, c2 = face[1].crossing;
  UnionFind uf;
  std::vector<int> touched;
  for (int mid : {arc_of(d, face[0]), arc_of(d, face[1])}) {
    // The strand carrying `mid` continues through both crossings.
    Slot t = d.tail(mid), h = d.head(mid);
    int before = d.crossings()[t.crossing].arcs[strand_partner(t.slot)];
    int after = d.crossings()[h.crossing].arcs[strand_partner(h.slot)];
    uf.unite(before, after);
    touched.push_back(before);
    touched.push_back(after);
  }
  return detail::remove_and_merge(d, {c1, c2}, uf, touched);
}

bool is_r3_triangle(const LinkDiagram& d, const std::vector<Slot>& face) {
  if (face.size() != 3) return false;
  if (face[0].crossing == face[1].crossing || face[1].crossing == face[2].crossing ||
      face[0].crossing == face[2].crossing) {
    return false;
  }
  for (const auto& s : face) {
    if (over_both(d, arc_of(d, s))) return true;
  }
  return false;
}

LinkDiagram r3(const LinkDiagram& d, const Site& site) {
  auto faces = d.faces();
  const auto& face = face_at(faces, site.face);
  if (!is_r3_triangle(d, face)) {
    throw DiagramError("R3: face " + std::to_string(site.face) + " is not a non-cyclic triangle");
  }
  // Reverse the order in which each strand meets the two crossings of its
  // side. Slot geometry and crossing types stay as they are.
  std::vector<Crossing> cs = d.crossings();
  for (const auto& s : face) {
    int mid = arc_of(d, s);
    Slot t = d.tail(mid), h = d.head(mid);
    int in_slot_first = strand_partner(t.slot);
    int out_slot_second = strand_partner(h.slot);
    int before = d.crossings()[t.crossing].arcs[in_slot_first];
    int after = d.crossings()[h.crossing].arcs[out_slot_second];
    cs[h.crossing].arcs[h.slot] = before;
    cs[h.crossing].arcs[out_slot_second] = mid;
    cs[t.crossing].arcs[in_slot_first] = mid;
    cs[t.crossing].arcs[t.slot] = after;
  }
  return LinkDiagram(std::move(cs), d.free_loops()).relabeled();
}

}  // namespace

Move parse_move(const std::string& name) {
  if (name == "R1+") return Move::r1_add;
  if (name == "R1-") return Move::r1_remove;
  if (name == "R2+" || name == "R2") return Move::r2_add;
  if (name == "R2-") return Move::r2_remove;
  if (name == "R3") return Move::r3;
  throw DiagramError("unknown move '" + name + "' (expected R1+, R1-, R2+, R2-, R3)");
}

std::string move_name(Move m) {
  switch (m) {
    case Move::r1_add: return "R1+";
    case Move::r1_remove: return "R1-";
    case Move::r2_add: return "R2+";
    case Move::r2_remove: return "R2-";
    case Move::r3: return "R3";
  }
  return "?";
}

LinkDiagram reidemeister(const LinkDiagram& d, Move move, const Site& site) {
  switch (move) {
    case Move::r1_add: return r1_add(d, site);
    case Move::r1_remove: return r1_remove(d, site);
    case Move::r2_add: return r2_add(d, site);
    case Move::r2_remove: return r2_remove(d, site);
    case Move::r3: return r3(d, site);
  }
  throw DiagramError("unknown move");
}

std::vector<Site> move_sites(const LinkDiagram& d, Move move) {
  std::vector<Site> out;
  switch (move) {
    case Move::r1_add: {
      for (int a = d.free_loops() > 0 ? 0 : 1; a <= d.arc_count(); ++a) {
        for (int sign : {1, -1}) {
          for (Side side : {Side::left, Side::right}) {
            Site s;
            s.arc = a;
            s.sign = sign;
            s.side = side;
            out.push_back(s);
          }
        }
      }
      break;
    }
    case Move::r1_remove: {
      for (std::size_t c = 0; c < d.size(); ++c) {
        const Crossing& x = d.crossings()[c];
        for (int p = 0; p < 4; ++p) {
          if (!x.is_incoming(p)) continue;
          Slot t = d.tail(x.arcs[p]);
          if (t.crossing == c && (t.slot == (p + 1) % 4 || t.slot == (p + 3) % 4)) {
            Site s;
            s.crossing = c;
            out.push_back(s);
            break;
          }
        }
      }
      break;
    }
    case Move::r2_add: {
      auto faces = d.faces();
      for (std::size_t f = 0; f < faces.size(); ++f) {
        for (std::size_t i = 0; i < faces[f].size(); ++i) {
          for (std::size_t j = 0; j < faces[f].size(); ++j) {
            if (i == j || arc_of(d, faces[f][i]) == arc_of(d, faces[f][j])) continue;
            Site s;
            s.face = f;
            s.over_edge = i;
            s.under_edge = j;
            out.push_back(s);
          }
        }
      }
      break;
    }
    case Move::r2_remove:
    case Move::r3: {
      auto faces = d.faces();
      for (std::size_t f = 0; f < faces.size(); ++f) {
        bool ok = move == Move::r2_remove ? is_r2_bigon(d, faces[f]) : is_r3_triangle(d, faces[f]);
        if (ok) {
          Site s;
          s.face = f;
          out.push_back(s);
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace darboux::knots
