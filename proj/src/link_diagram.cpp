#include "darboux/link_diagram.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "darboux/error.hpp"
#include "knot_detail.hpp"
#include "json.hpp"

namespace darboux::knots {

using detail::UnionFind;

LinkDiagram detail::from_raw(std::vector<Crossing> raw, int free_loops) {
  std::set<int> labels;
  for (const auto& c : raw) labels.insert(c.arcs.begin(), c.arcs.end());
  std::map<int, int> renumber;
  int next = 1;
  for (int l : labels) renumber[l] = next++;
  for (auto& c : raw) {
    for (int& a : c.arcs) a = renumber.at(a);
  }
  return LinkDiagram(std::move(raw), free_loops).relabeled();
}

LinkDiagram detail::remove_and_merge(const LinkDiagram& d, const std::vector<std::size_t>& removed, UnionFind& uf,
                                     const std::vector<int>& touched) {
  std::vector<Crossing> cs;
  std::set<int> used;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (std::find(removed.begin(), removed.end(), k) != removed.end()) continue;
    Crossing y = d.crossings()[k];
    for (int& a : y.arcs) {
      a = uf.find(a);
      used.insert(a);
    }
    cs.push_back(y);
  }
  std::set<int> closed;
  for (int a : touched) {
    int r = uf.find(a);
    if (!used.count(r)) closed.insert(r);
  }
  return from_raw(std::move(cs), d.free_loops() + static_cast<int>(closed.size()));
}

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  validate(-1);
}

LinkDiagram::LinkDiagram(std::vector<Crossing> crossings, int free_loops, int declared_components)
    : crossings_(std::move(crossings)), free_loops_(free_loops) {
  validate(declared_components);
}

LinkDiagram LinkDiagram::unlink(int components) {
  return LinkDiagram({}, components);
}

void LinkDiagram::validate(int declared_components) {
  if (free_loops_ < 0) throw DiagramError("free_loops must be non-negative");
  const int n = static_cast<int>(crossings_.size());
  const int arcs = 2 * n;
  heads_.assign(arcs, Slot{});
  tails_.assign(arcs, Slot{});
  std::vector<int> head_count(arcs, 0), tail_count(arcs, 0);
  for (std::size_t c = 0; c < crossings_.size(); ++c) {
    const Crossing& x = crossings_[c];
    if (x.sign != 1 && x.sign != -1) {
      throw DiagramError("crossing " + std::to_string(c) + " has sign other than +1/-1");
    }
    for (int p = 0; p < 4; ++p) {
      int a = x.arcs[p];
      if (a < 1 || a > arcs) {
        throw DiagramError("arc label " + std::to_string(a) + " outside 1.." + std::to_string(arcs));
      }
      if (x.is_incoming(p)) {
        ++head_count[a - 1];
        heads_[a - 1] = Slot{c, p};
      } else {
        ++tail_count[a - 1];
        tails_[a - 1] = Slot{c, p};
      }
    }
  }
  for (int a = 1; a <= arcs; ++a) {
    if (head_count[a - 1] != 1 || tail_count[a - 1] != 1) {
      throw DiagramError("arc " + std::to_string(a) + " must have exactly one head and one tail (has " +
                         std::to_string(head_count[a - 1]) + " heads, " +
                         std::to_string(tail_count[a - 1]) + " tails)");
    }
  }

  components_.clear();
  component_index_.assign(arcs, -1);
  for (int a = 1; a <= arcs; ++a) {
    if (component_index_[a - 1] >= 0) continue;
    std::vector<int> comp;
    int b = a;
    do {
      component_index_[b - 1] = static_cast<int>(components_.size());
      comp.push_back(b);
      b = next_arc(b);
    } while (b != a);
    components_.push_back(std::move(comp));
  }

  // Genus zero: each connected piece must satisfy V - E + F = 2 with E = 2V.
  if (n > 0) {
    std::vector<int> piece(n);
    std::iota(piece.begin(), piece.end(), 0);
    auto find = [&](int v) {
      while (piece[v] != v) v = piece[v] = piece[piece[v]];
      return v;
    };
    for (int a = 1; a <= arcs; ++a) {
      int u = find(static_cast<int>(heads_[a - 1].crossing));
      int v = find(static_cast<int>(tails_[a - 1].crossing));
      piece[std::max(u, v)] = std::min(u, v);
    }
    std::map<int, int> vertices, face_count;
    for (int v = 0; v < n; ++v) ++vertices[find(v)];
    for (const auto& f : faces()) ++face_count[find(static_cast<int>(f.front().crossing))];
    for (const auto& [p, v] : vertices) {
      if (face_count[p] != v + 2) {
        throw DiagramError("diagram is not planar (a piece with " + std::to_string(v) + " crossings has " +
                           std::to_string(face_count[p]) + " faces, expected " + std::to_string(v + 2) + ")");
      }
    }
  }

  if (components() == 0) throw DiagramError("diagram has no components");
  if (declared_components >= 0 && declared_components != components()) {
    throw DiagramError("declared " + std::to_string(declared_components) + " components but the diagram has " +
                       std::to_string(components()));
  }
}

const Crossing& LinkDiagram::crossing(std::size_t c) const {
  if (c >= crossings_.size()) {
    throw DimensionError("crossing index " + std::to_string(c) + " out of range (diagram has " +
                         std::to_string(crossings_.size()) + ")");
  }
  return crossings_[c];
}

Slot LinkDiagram::head(int arc) const {
  if (arc < 1 || arc > arc_count()) throw DimensionError("no arc " + std::to_string(arc));
  return heads_[arc - 1];
}

Slot LinkDiagram::tail(int arc) const {
  if (arc < 1 || arc > arc_count()) throw DimensionError("no arc " + std::to_string(arc));
  return tails_[arc - 1];
}

int LinkDiagram::next_arc(int arc) const {
  Slot h = head(arc);
  const Crossing& x = crossings_[h.crossing];
  return h.slot == 0 ? x.under_out() : x.over_out();
}

int LinkDiagram::component_of(int arc) const {
  head(arc);
  return component_index_[arc - 1];
}

std::vector<std::vector<Slot>> LinkDiagram::faces() const {
  const std::size_t n = crossings_.size();
  std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});
  std::vector<std::vector<Slot>> out;
  for (std::size_t c = 0; c < n; ++c) {
    for (int p = 0; p < 4; ++p) {
      if (seen[c][p]) continue;
      std::vector<Slot> face;
      Slot s{c, p};
      while (!seen[s.crossing][s.slot]) {
        seen[s.crossing][s.slot] = true;
        face.push_back(s);
        int a = crossings_[s.crossing].arcs[s.slot];
        Slot other = crossings_[s.crossing].is_incoming(s.slot) ? tails_[a - 1] : heads_[a - 1];
        s = Slot{other.crossing, (other.slot + 3) % 4};
      }
      out.push_back(std::move(face));
    }
  }
  return out;
}

LinkDiagram LinkDiagram::relabeled() const {
  // Each component starts at the arc entering its earliest crossing slot, so
  // the result does not depend on the old labels.
  std::vector<std::pair<std::pair<std::size_t, int>, std::size_t>> order;
  std::vector<std::size_t> start(components_.size(), 0);
  for (std::size_t ci = 0; ci < components_.size(); ++ci) {
    const auto& comp = components_[ci];
    std::pair<std::size_t, int> best{SIZE_MAX, 0};
    for (std::size_t k = 0; k < comp.size(); ++k) {
      Slot h = heads_[comp[k] - 1];
      std::pair<std::size_t, int> key{h.crossing, h.slot};
      if (key < best) {
        best = key;
        start[ci] = k;
      }
    }
    order.emplace_back(best, ci);
  }
  std::sort(order.begin(), order.end());
  std::vector<int> renumber(arc_count() + 1, 0);
  int next = 1;
  for (const auto& [key, ci] : order) {
    const auto& comp = components_[ci];
    for (std::size_t k = 0; k < comp.size(); ++k) renumber[comp[(start[ci] + k) % comp.size()]] = next++;
  }
  std::vector<Crossing> cs = crossings_;
  for (auto& c : cs) {
    for (int& a : c.arcs) a = renumber[a];
  }
  return LinkDiagram(std::move(cs), free_loops_);
}

std::string LinkDiagram::key() const {
  std::ostringstream os;
  for (const auto& c : crossings_) {
    os << (c.sign > 0 ? '+' : '-') << c.arcs[0] << ',' << c.arcs[1] << ',' << c.arcs[2] << ',' << c.arcs[3]
       << ';';
  }
  os << 'o' << free_loops_;
  return os.str();
}

LinkDiagram parse_pd(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw DiagramError("a planar diagram must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (k != "components" && k != "crossings" && k != "free_loops") {
      throw DiagramError("unknown field '" + k + "'");
    }
  }
  if (!j.contains("crossings") || !j["crossings"].is_array()) {
    throw DiagramError("field 'crossings' must be an array");
  }
  std::vector<Crossing> cs;
  for (const auto& x : j["crossings"]) {
    if (!x.is_object()) throw DiagramError("each crossing must be an object");
    for (const auto& [k, v] : x.items()) {
      if (k != "sign" && k != "arcs") throw DiagramError("unknown crossing field '" + k + "'");
    }
    if (!x.contains("sign") || !x["sign"].is_number_integer()) {
      throw DiagramError("crossing sign must be the integer +1 or -1");
    }
    if (!x.contains("arcs") || !x["arcs"].is_array() || x["arcs"].size() != 4) {
      throw DiagramError("crossing arcs must be an array of four labels");
    }
    Crossing c;
    c.sign = x["sign"].get<int>();
    for (int p = 0; p < 4; ++p) {
      if (!x["arcs"][p].is_number_integer()) throw DiagramError("arc labels must be integers");
      c.arcs[p] = x["arcs"][p].get<int>();
    }
    cs.push_back(c);
  }
  int free_loops = 0;
  if (j.contains("free_loops")) {
    if (!j["free_loops"].is_number_integer()) throw DiagramError("free_loops must be an integer");
    free_loops = j["free_loops"].get<int>();
  }
  int declared = -1;
  if (j.contains("components")) {
    if (!j["components"].is_number_integer()) throw DiagramError("components must be an integer");
    declared = j["components"].get<int>();
    if (declared < 0) throw DiagramError("components must be non-negative");
  }
  return LinkDiagram(std::move(cs), free_loops, declared);
}

std::string to_pd_json(const LinkDiagram& d) {
  nlohmann::json j;
  j["components"] = d.components();
  j["crossings"] = nlohmann::json::array();
  for (const auto& c : d.crossings()) {
    j["crossings"].push_back({{"sign", c.sign}, {"arcs", c.arcs}});
  }
  j["free_loops"] = d.free_loops();
  return j.dump();
}

int writhe(const LinkDiagram& d) {
  int w = 0;
  for (const auto& c : d.crossings()) w += c.sign;
  return w;
}

LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t c) {
  const Crossing& x = d.crossing(c);
  std::vector<Crossing> cs = d.crossings();
  const auto& a = x.arcs;
  if (x.sign > 0) {
    cs[c] = Crossing{-1, {a[3], a[0], a[1], a[2]}};
  } else {
    cs[c] = Crossing{1, {a[1], a[2], a[3], a[0]}};
  }
  return LinkDiagram(std::move(cs), d.free_loops());
}

LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t c) {
  const Crossing& x = d.crossing(c);
  UnionFind uf;
  uf.unite(x.under_in(), x.over_out());
  uf.unite(x.over_in(), x.under_out());
  return detail::remove_and_merge(d, {c}, uf, {x.arcs.begin(), x.arcs.end()});
}

LinkDiagram braid_closure(int strands, const std::vector<int>& word) {
  if (strands < 1) throw DimensionError("a braid needs at least one strand");
  std::vector<int> start(strands), pos(strands);
  std::iota(start.begin(), start.end(), 1);
  pos = start;
  int fresh = strands + 1;
  std::vector<Crossing> cs;
  for (int g : word) {
    int i = std::abs(g);
    if (g == 0 || i >= strands) {
      throw DimensionError("braid generator " + std::to_string(g) + " invalid on " + std::to_string(strands) +
                           " strands");
    }
    int xl = pos[i - 1], xr = pos[i];
    int nl = fresh++, nr = fresh++;  // new labels at positions i and i+1
    if (g > 0) {
      cs.push_back(Crossing{1, {xr, nr, nl, xl}});
    } else {
      cs.push_back(Crossing{-1, {xl, xr, nr, nl}});
    }
    pos[i - 1] = nl;
    pos[i] = nr;
  }
  UnionFind uf;
  for (int p = 0; p < strands; ++p) uf.unite(pos[p], start[p]);
  std::set<int> used;
  for (auto& c : cs) {
    for (int& a : c.arcs) {
      a = uf.find(a);
      used.insert(a);
    }
  }
  std::set<int> loops;
  for (int p = 0; p < strands; ++p) {
    if (!used.count(uf.find(start[p]))) loops.insert(uf.find(start[p]));
  }
  return detail::from_raw(std::move(cs), static_cast<int>(loops.size()));
}

LinkDiagram mirror(const LinkDiagram& d) {
  LinkDiagram m = d;
  for (std::size_t c = 0; c < d.size(); ++c) m = switch_crossing(m, c);
  return m;
}

}  // namespace darboux::knots
