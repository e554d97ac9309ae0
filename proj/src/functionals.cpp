#include "kstab/functionals.hpp"

#include "kstab/error.hpp"

namespace kstab {

Rational s_from_volume(const PiecewisePolynomial& vol, const Rational& a_top) {
  if (a_top.sign() <= 0) throw Error("InvalidParameters", "top self-intersection must be positive");
  for (const auto& p : vol.pieces) {
    if (p.poly.depends_on_v()) throw Error("NotUnivariate", "volume function must depend on u only");
  }
  return piecewise_integral(vol) / a_top;
}

Rational beta_divisor(const Rational& a_log, const PiecewisePolynomial& vol, const Rational& a_top) {
  return a_log - s_from_volume(vol, a_top);
}

LogDiscrepancy log_discrepancy_weighted_blowup(long w1, long w2, const std::vector<BoundaryTerm>& boundary) {
  if (w1 < 1 || w2 < 1) throw Error("InvalidParameters", "blowup weights must be positive");
  LogDiscrepancy r{Rational(w1 + w2)};
  for (const auto& b : boundary) r.value -= b.coefficient * b.weighted_order;
  r.non_positive = r.value.sign() <= 0;
  return r;
}

DeltaReport delta_bound_report(const std::vector<DeltaEntry>& entries) {
  if (entries.empty()) throw Error("InvalidParameters", "no entries");
  DeltaReport r;
  bool first = true;
  for (const auto& e : entries) {
    if (e.s.is_zero()) throw Error("ZeroS", "entry '" + e.label + "' has S = 0");
    Rational q = e.a_log / e.s;
    if (first || q < r.bound) {
      r.bound = q;
      r.argmin = e.label;
      first = false;
    }
  }
  r.exceeds_one = r.bound > 1;
  return r;
}

}  // namespace kstab
