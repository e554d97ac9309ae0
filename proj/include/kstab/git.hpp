#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "kstab/rational.hpp"

namespace kstab {

// Exponent pairs (i, j) of the monomials x^(2-i) y^i u^(2-j) v^j with nonzero coefficient.
using MonomialSupport = std::set<std::pair<int, int>>;

struct OneParamSubgroup {
  long r0 = 0;
  long r1 = 1;
};

// Parses "02,12,21,22"; throws ParseError.
MonomialSupport parse_support(const std::string& text);
std::string format_support(const MonomialSupport& s);
MonomialSupport full_support();

// max over the support of r0(2-2i) + r1(2-2j). Accepts any integer pair so
// that symmetry checks can swap the entries.
long hm_weight(const MonomialSupport& s, const OneParamSubgroup& l);
// Same expression with min in place of max.
long hm_weight_min(const MonomialSupport& s, const OneParamSubgroup& l);

bool is_admissible(const OneParamSubgroup& l);

struct Destabilizer {
  OneParamSubgroup lambda;
  long weight = 0;
  bool strictly_semistable_direction = false;  // weight 0 rather than negative
};

// Coprime admissible subgroups with r1 <= bound. Returns the one with the
// smallest weight per unit r1 among negative weights (ties: smaller r1, then
// r0); failing that, the first weight-0 direction in the same order.
std::optional<Destabilizer> find_destabilizer(const MonomialSupport& s, long bound);

bool fixed_point_singularity(const std::map<std::pair<int, int>, Rational>& coeffs);

}  // namespace kstab
