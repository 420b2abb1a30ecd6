#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "darboux/laurent.hpp"
#include "darboux/link_diagram.hpp"

namespace darboux::knots {

/// generic: P(x, y, z) with x P+ + y P- = z P0 and P(unknot) = 1.
/// conway: x = 1, y = -1 (polynomial in z).
/// jones: x = t^-1, y = -t, z = t^1/2 - t^-1/2, kept in s = t^1/2.
/// homfly: x = a, y = -a^-1 (Laurent in a and z).
enum class Invariant { generic, conway, jones, homfly };
Invariant parse_invariant(const std::string& name);
std::string invariant_name(Invariant i);

/// Largest diagram the engine accepts.
inline constexpr std::size_t kCrossingBudget = 14;

/// Invariant value. Internally a Laurent polynomial; the generic value is
/// presented as a reduced rational function.
class SkeinValue {
 public:
  SkeinValue(Invariant kind, Laurent value) : kind_(kind), value_(std::move(value)) {}
  Invariant kind() const { return kind_; }
  const Laurent& laurent() const { return value_; }
  RatFunc rational() const { return value_.to_ratfunc(); }
  /// Human form, e.g. "-t^-4 + t^-3 + t^-1" or "(x + y)/z".
  std::string str() const;
  /// Same without spaces.
  std::string compact() const;
  friend bool operator==(const SkeinValue& a, const SkeinValue& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_;
  }

 private:
  Invariant kind_;
  Laurent value_;
};

/// Chooses the pivot among the bad crossings (indices into the diagram).
using PivotRule = std::function<std::size_t(const LinkDiagram&, const std::vector<std::size_t>& bad)>;

/// Crossings first reached on the under-strand when components are traversed
/// in order from their basepoints (smallest arc label of each component).
std::vector<std::size_t> bad_crossings(const LinkDiagram& d);

/// Throws ComplexityError above kCrossingBudget crossings.
SkeinValue skein_evaluate(const LinkDiagram& d, Invariant inv);
SkeinValue skein_evaluate(const LinkDiagram& d, Invariant inv, const PivotRule& pivot);

/// Values reached over every admissible pivot order, explored exhaustively and
/// deduplicated. A single entry means the choice did not matter.
std::vector<SkeinValue> skein_values_all_pivots(const LinkDiagram& d, Invariant inv);

/// Jones polynomial at t = q = exp(2 pi i/(k+2)), t^1/2 = exp(pi i/(k+2)).
std::complex<double> jones_at_level(const LinkDiagram& d, int k);

/// Residuals at crossing c with t = q of level k: the adopted relation
/// t^-1 V+ - t V- - (t^1/2 - t^-1/2) V0 and the variant with + on the last term.
struct WittenResiduals {
  std::complex<double> adopted;
  std::complex<double> variant;
};
WittenResiduals witten_residuals(const LinkDiagram& d, std::size_t c, int k);

}  // namespace darboux::knots
