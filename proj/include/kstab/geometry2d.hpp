#pragma once

#include <vector>

#include "kstab/polynomial.hpp"

namespace kstab {

struct Point2 {
  Rational u;
  Rational v;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Convex polygon in the (u, v) plane, vertices in counter-clockwise order
// without repetitions. May be empty or degenerate (segment/point).
using Polygon = std::vector<Point2>;

Polygon box(const Interval& u, const Interval& v);
// Intersection with the closed half-plane {form(u, v) >= 0}; form is affine.
Polygon clip(const Polygon& poly, const Polynomial& form);
Rational area(const Polygon& poly);
Point2 vertex_centroid(const Polygon& poly);

// Vertical section {v : (u, v) in poly} at a given u, as [lo, hi].
bool section(const Polygon& poly, const Rational& u, Interval* out);

// Exact integral of f over the polygon, inner in v and outer in u, summed
// over vertical slabs between consecutive vertex abscissae.
Rational integrate_over(const Polygon& poly, const Polynomial& f);

}  // namespace kstab
