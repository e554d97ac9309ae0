#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kstab/polynomial.hpp"

namespace kstab {

struct Piece {
  Interval interval;
  Polynomial poly;
};

// Finite list of polynomial pieces on closed intervals. Pieces may share
// endpoints but must not overlap in their interiors.
struct PiecewisePolynomial {
  std::vector<Piece> pieces;
};

struct ContinuityBreak {
  Rational at;
  Rational left;
  Rational right;
};

// Integral of a polynomial in a single variable (either u or v) over [lo, hi].
Rational definite_integral(const Polynomial& p, const Interval& interval);

// Sum of piece integrals; throws OverlappingPieces when interiors intersect.
Rational piecewise_integral(const PiecewisePolynomial& f);

// Points where consecutive pieces sharing an endpoint disagree.
std::vector<ContinuityBreak> continuity_breaks(const PiecewisePolynomial& f);

// Iterated integral: inner in v from lower(u) to upper(u), outer in u.
// The bounds must be polynomials in u of degree at most one.
Rational double_integral(const Polynomial& f, const Polynomial& lower, const Polynomial& upper,
                         const Interval& outer);

// Polynomial in u of the given degree through the samples. The first
// degree+1 samples determine it, the remaining ones must agree.
Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree);

}  // namespace kstab
