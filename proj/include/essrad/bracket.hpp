#pragma once

#include <string>

namespace essrad {

/// Certified enclosure lo <= value <= hi of a nonnegative quantity.
/// `flagged` marks a bracket whose estimator ran out of budget before
/// reaching its width target; the enclosure itself is still valid.
struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  std::string method;
  bool flagged = false;

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0.0) const { return lo - tol <= x && x <= hi + tol; }
  bool overlaps(const Bracket& o, double tol = 0.0) const { return lo <= o.hi + tol && o.lo <= hi + tol; }
};

/// Exact value wrapped as a zero-width bracket.
inline Bracket exact(double v, std::string method) { return Bracket{v, v, std::move(method), false}; }

/// Monotone maps applied to both ends.
Bracket pow(const Bracket& b, double t);
Bracket times(const Bracket& a, const Bracket& b);
Bracket scaled(const Bracket& b, double c);

enum class SpaceTag { l1, l2, linf };

const char* to_string(SpaceTag s);
SpaceTag space_from_string(const std::string& s);

}  // namespace essrad
