#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "darboux/link_diagram.hpp"

namespace darboux::knots::detail {

struct UnionFind {
  std::map<int, int> parent;
  int find(int a) {
    auto it = parent.find(a);
    if (it == parent.end()) {
      parent[a] = a;
      return a;
    }
    if (it->second == a) return a;
    int r = find(it->second);
    parent[a] = r;
    return r;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Build a diagram from crossings whose labels are distinct positive integers
/// (each used twice), renumbering to canonical labels.
LinkDiagram from_raw(std::vector<Crossing> raw, int free_loops);

/// Drop crossings in `removed`, identify labels through `uf`, and turn every
/// class of `touched` that no longer occurs into a free loop.
LinkDiagram remove_and_merge(const LinkDiagram& d, const std::vector<std::size_t>& removed, UnionFind& uf,
                             const std::vector<int>& touched);

}  // namespace darboux::knots::detail
