#pragma once

#include <string>
#include <vector>

#include "kstab/integrate.hpp"

namespace kstab {

// (1/A_top) * integral of the volume function.
Rational s_from_volume(const PiecewisePolynomial& vol, const Rational& a_top);
Rational beta_divisor(const Rational& a_log, const PiecewisePolynomial& vol, const Rational& a_top);

struct BoundaryTerm {
  Rational coefficient;
  Rational weighted_order;
};

struct LogDiscrepancy {
  Rational value;
  bool non_positive = false;
};

// w1 + w2 minus the weighted orders of the boundary components.
LogDiscrepancy log_discrepancy_weighted_blowup(long w1, long w2, const std::vector<BoundaryTerm>& boundary);

struct DeltaEntry {
  std::string label;
  Rational a_log;
  Rational s;
};

struct DeltaReport {
  Rational bound;
  std::string argmin;
  bool exceeds_one = false;
};

DeltaReport delta_bound_report(const std::vector<DeltaEntry>& entries);

}  // namespace kstab
