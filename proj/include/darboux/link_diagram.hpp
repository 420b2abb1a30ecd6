#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace darboux::knots {

/// One crossing in planar-diagram form. `arcs` lists the four arc labels
/// counterclockwise, starting with the incoming under-strand. For sign +1 the
/// over-strand runs from arcs[3] to arcs[1], for sign -1 from arcs[1] to arcs[3].
struct Crossing {
  int sign = 1;
  std::array<int, 4> arcs{};

  int under_in() const { return arcs[0]; }
  int under_out() const { return arcs[2]; }
  int over_in() const { return sign > 0 ? arcs[3] : arcs[1]; }
  int over_out() const { return sign > 0 ? arcs[1] : arcs[3]; }
  bool is_incoming(int slot) const { return slot == 0 || slot == (sign > 0 ? 3 : 1); }
  bool is_over(int slot) const { return slot == 1 || slot == 3; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// A position at a crossing: crossing index and slot 0..3.
struct Slot {
  std::size_t crossing = 0;
  int slot = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Oriented link diagram: crossings plus crossing-free unknotted circles.
/// Construction validates arc labels (exactly 1..2n, each with one head and one
/// tail), planarity, and the declared component count.
class LinkDiagram {
 public:
  LinkDiagram() = default;
  LinkDiagram(std::vector<Crossing> crossings, int free_loops);
  LinkDiagram(std::vector<Crossing> crossings, int free_loops, int declared_components);
  static LinkDiagram unlink(int components);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(std::size_t c) const;
  std::size_t size() const { return crossings_.size(); }
  int free_loops() const { return free_loops_; }
  /// Number of components, free loops included.
  int components() const { return static_cast<int>(components_.size()) + free_loops_; }
  int arc_count() const { return static_cast<int>(2 * crossings_.size()); }

  /// Slot where the arc ends (its head) and where it starts (its tail).
  Slot head(int arc) const;
  Slot tail(int arc) const;
  /// Arc that follows `arc` along its strand.
  int next_arc(int arc) const;
  /// Crossing-carrying components, each as its arcs in traversal order.
  /// Components are ordered by smallest label and start at that label.
  const std::vector<std::vector<int>>& component_arcs() const { return components_; }
  int component_of(int arc) const;

  /// Face boundaries. Each entry leaves crossing `crossing` through `slot`
  /// and runs along that arc; faces lie to the left of this walk.
  std::vector<std::vector<Slot>> faces() const;

  /// Same diagram with arcs renumbered 1..2n along components.
  LinkDiagram relabeled() const;
  /// Text key identifying the labelled diagram exactly.
  std::string key() const;

  friend bool operator==(const LinkDiagram& a, const LinkDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_;
  }

 private:
  void validate(int declared_components);
  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::vector<Slot> heads_, tails_;  // indexed by arc label - 1
  std::vector<std::vector<int>> components_;
  std::vector<int> component_index_;
};

/// Parse {"components": c, "crossings": [{"sign": s, "arcs": [i,j,k,l]}, ...],
/// "free_loops": f}. "free_loops" is optional; unknown fields are rejected.
LinkDiagram parse_pd(std::string_view json_text);
std::string to_pd_json(const LinkDiagram& d);

int writhe(const LinkDiagram& d);
/// Exchange over and under at crossing `c`. Labels are preserved.
LinkDiagram switch_crossing(const LinkDiagram& d, std::size_t c);
/// Orientation-respecting smoothing of crossing `c`.
LinkDiagram smooth_crossing(const LinkDiagram& d, std::size_t c);

/// Closure of a braid word on `strands` strands; generator +i is sigma_i
/// (a positive crossing), -i its inverse.
LinkDiagram braid_closure(int strands, const std::vector<int>& word);
/// The mirror image: every crossing switched.
LinkDiagram mirror(const LinkDiagram& d);

}  // namespace darboux::knots
