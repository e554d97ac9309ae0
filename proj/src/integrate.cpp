#include "kstab/integrate.hpp"

#include <algorithm>
#include <set>

#include "kstab/error.hpp"

namespace kstab {

Rational definite_integral(const Polynomial& p, const Interval& interval) {
  if (p.depends_on_u() && p.depends_on_v()) {
    throw Error("NotUnivariate", "definite_integral needs a polynomial in one variable, got " + p.str());
  }
  if (p.depends_on_v()) {
    Polynomial a = p.antiderivative_v();
    return a.eval(0, interval.hi) - a.eval(0, interval.lo);
  }
  Polynomial a = p.antiderivative_u();
  return a.eval(interval.hi) - a.eval(interval.lo);
}

namespace {

std::vector<const Piece*> sorted_pieces(const PiecewisePolynomial& f) {
  std::vector<const Piece*> out;
  for (const auto& piece : f.pieces) out.push_back(&piece);
  std::sort(out.begin(), out.end(), [](const Piece* a, const Piece* b) {
    if (a->interval.lo != b->interval.lo) return a->interval.lo < b->interval.lo;
    return a->interval.hi < b->interval.hi;
  });
  return out;
}

}  // namespace

Rational piecewise_integral(const PiecewisePolynomial& f) {
  auto pieces = sorted_pieces(f);
  Rational total;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Interval& iv = pieces[i]->interval;
    if (iv.hi < iv.lo) {
      throw Error("InvertedBounds", "piece [" + iv.lo.str() + "," + iv.hi.str() + "] is reversed");
    }
    if (i > 0 && pieces[i - 1]->interval.hi > iv.lo) {
      throw Error("OverlappingPieces", "pieces [" + pieces[i - 1]->interval.lo.str() + "," +
                                           pieces[i - 1]->interval.hi.str() + "] and [" + iv.lo.str() + "," +
                                           iv.hi.str() + "] overlap");
    }
    total += definite_integral(pieces[i]->poly, iv);
  }
  return total;
}

std::vector<ContinuityBreak> continuity_breaks(const PiecewisePolynomial& f) {
  auto pieces = sorted_pieces(f);
  std::vector<ContinuityBreak> out;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    const Piece& a = *pieces[i - 1];
    const Piece& b = *pieces[i];
    if (a.interval.hi != b.interval.lo) continue;
    Rational left = a.poly.eval(a.interval.hi);
    Rational right = b.poly.eval(b.interval.lo);
    if (left != right) out.push_back({a.interval.hi, left, right});
  }
  return out;
}

Rational double_integral(const Polynomial& f, const Polynomial& lower, const Polynomial& upper,
                         const Interval& outer) {
  for (const Polynomial* b : {&lower, &upper}) {
    if (b->depends_on_v() || b->degree() > 1) {
      throw Error("NonAffineBound", "inner bounds must be affine in u, got " + b->str());
    }
  }
  if (outer.hi < outer.lo) throw Error("InvertedBounds", "outer interval is reversed");
  // Both bounds are affine, so the gap is affine and its sign on the closed
  // interval is decided at the endpoints.
  Polynomial gap = upper - lower;
  if (gap.eval(outer.lo) < 0 || gap.eval(outer.hi) < 0) {
    throw Error("InvertedBounds", "inner bounds cross: upper-lower = " + gap.str() + " on [" + outer.lo.str() +
                                      "," + outer.hi.str() + "]");
  }
  Polynomial inner = f.antiderivative_v();
  Polynomial reduced = inner.substitute_v(upper) - inner.substitute_v(lower);
  return definite_integral(reduced, outer);
}

Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree) {
  if (degree < 0) throw Error("InvalidDegree", "degree must be nonnegative");
  std::set<Rational> xs;
  for (const auto& p : points) {
    if (!xs.insert(p.first).second) {
      throw Error("DuplicateSample", "sample abscissa " + p.first.str() + " repeated");
    }
  }
  std::size_t need = static_cast<std::size_t>(degree) + 1;
  if (points.size() < need) {
    throw Error("InsufficientSamples", "need " + std::to_string(need) + " samples, got " +
                                           std::to_string(points.size()));
  }
  // Lagrange form over the first degree+1 samples.
  Polynomial result;
  for (std::size_t i = 0; i < need; ++i) {
    Polynomial basis(1);
    Rational denom(1);
    for (std::size_t j = 0; j < need; ++j) {
      if (j == i) continue;
      basis *= Polynomial::affine(-points[j].first, 1);
      denom *= points[i].first - points[j].first;
    }
    result += basis * Polynomial(points[i].second / denom);
  }
  for (std::size_t i = need; i < points.size(); ++i) {
    if (result.eval(points[i].first) != points[i].second) {
      throw Error("InconsistentSamples", "sample at u=" + points[i].first.str() +
                                             " disagrees with the degree-" + std::to_string(degree) +
                                             " interpolant " + result.str());
    }
  }
  return result;
}

}  // namespace kstab
