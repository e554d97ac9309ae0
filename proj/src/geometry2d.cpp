#include "kstab/geometry2d.hpp"

#include <algorithm>
#include <set>

#include "kstab/error.hpp"
#include "kstab/integrate.hpp"

namespace kstab {

Polygon box(const Interval& u, const Interval& v) {
  return {{u.lo, v.lo}, {u.hi, v.lo}, {u.hi, v.hi}, {u.lo, v.hi}};
}

namespace {

Rational eval_form(const Polynomial& form, const Point2& p) { return form.eval(p.u, p.v); }

Polygon dedupe(const Polygon& in) {
  Polygon out;
  for (const auto& p : in) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

// Drops vertices lying on the segment between their neighbours.
Polygon drop_collinear(const Polygon& in) {
  if (in.size() < 3) return in;
  Polygon out;
  std::size_t n = in.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = in[(i + n - 1) % n];
    const Point2& b = in[i];
    const Point2& c = in[(i + 1) % n];
    Rational cr = (b.u - a.u) * (c.v - a.v) - (b.v - a.v) * (c.u - a.u);
    if (!cr.is_zero()) out.push_back(b);
  }
  return out;
}

}  // namespace

Polygon clip(const Polygon& poly, const Polynomial& form) {
  if (form.degree() > 1) throw Error("NonAffineForm", "clip needs an affine form, got " + form.str());
  Polygon out;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    Rational fa = eval_form(form, a);
    Rational fb = eval_form(form, b);
    if (fa.sign() >= 0) out.push_back(a);
    if ((fa.sign() > 0 && fb.sign() < 0) || (fa.sign() < 0 && fb.sign() > 0)) {
      Rational t = fa / (fa - fb);
      out.push_back({a.u + t * (b.u - a.u), a.v + t * (b.v - a.v)});
    }
  }
  return drop_collinear(dedupe(out));
}

Rational area(const Polygon& poly) {
  Rational twice;
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    twice += a.u * b.v - a.v * b.u;
  }
  return twice.abs() / Rational(2);
}

Point2 vertex_centroid(const Polygon& poly) {
  Point2 c{0, 0};
  for (const auto& p : poly) {
    c.u += p.u;
    c.v += p.v;
  }
  Rational n(static_cast<long>(poly.size()));
  c.u /= n;
  c.v /= n;
  return c;
}

bool section(const Polygon& poly, const Rational& u, Interval* out) {
  bool any = false;
  Rational lo, hi;
  auto take = [&](const Rational& v) {
    if (!any) {
      lo = hi = v;
      any = true;
    } else {
      lo = min(lo, v);
      hi = max(hi, v);
    }
  };
  std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    if (a.u == u) take(a.v);
    if ((a.u < u && u < b.u) || (b.u < u && u < a.u)) {
      Rational t = (u - a.u) / (b.u - a.u);
      take(a.v + t * (b.v - a.v));
    }
  }
  if (any && out) *out = {lo, hi};
  return any;
}

Rational integrate_over(const Polygon& poly, const Polynomial& f) {
  if (poly.size() < 3) return 0;
  std::set<Rational> xs;
  for (const auto& p : poly) xs.insert(p.u);
  std::vector<Rational> cuts(xs.begin(), xs.end());
  Rational total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational& x0 = cuts[k];
    const Rational& x1 = cuts[k + 1];
    // No vertex lies strictly inside the slab, so both boundary chains are
    // affine there and are fixed by their values at the slab ends.
    Interval s0, s1;
    section(poly, x0, &s0);
    section(poly, x1, &s1);
    Rational w = x1 - x0;
    auto line = [&](const Rational& y0, const Rational& y1) {
      Rational slope = (y1 - y0) / w;
      return Polynomial::affine(y0 - slope * x0, slope);
    };
    total += double_integral(f, line(s0.lo, s1.lo), line(s0.hi, s1.hi), {x0, x1});
  }
  return total;
}

}  // namespace kstab
