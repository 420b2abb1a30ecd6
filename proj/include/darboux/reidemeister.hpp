#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "darboux/link_diagram.hpp"

namespace darboux::knots {

/// R1+ inserts a kink, R1- removes one; R2+ / R2- likewise for a bigon.
enum class Move { r1_add, r1_remove, r2_add, r2_remove, r3 };
Move parse_move(const std::string& name);  // "R1+", "R1-", "R2+", "R2-", "R3"
std::string move_name(Move m);

enum class Side { left, right };

/// Where a move applies. Only the fields relevant to the move are read.
struct Site {
  int arc = 0;  // R1+: arc to kink; 0 kinks a free loop
  int sign = 1;  // R1+: sign of the new crossing
  Side side = Side::left;  // R1+: side of the arc (in its direction) holding the loop
  std::size_t crossing = 0;  // R1-
  std::size_t face = 0;  // R2+, R2-, R3: index into LinkDiagram::faces()
  std::size_t over_edge = 0;  // R2+: entries of that face; this arc is pushed over
  std::size_t under_edge = 0;
};

/// Apply a move. Throws DiagramError if the pattern is not present at `site`.
LinkDiagram reidemeister(const LinkDiagram& d, Move move, const Site& site);

/// Every site where `move` applies. For R1+ this lists each arc with both
/// signs and sides.
std::vector<Site> move_sites(const LinkDiagram& d, Move move);

}  // namespace darboux::knots
