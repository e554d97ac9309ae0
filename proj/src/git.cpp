#include "kstab/git.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "kstab/error.hpp"

namespace kstab {

MonomialSupport parse_support(const std::string& text) {
  MonomialSupport s;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.size() != 2 || item[0] < '0' || item[0] > '2' || item[1] < '0' || item[1] > '2') {
      throw Error("ParseError", "bad monomial '" + item + "', expected two digits in 0..2");
    }
    s.insert({item[0] - '0', item[1] - '0'});
  }
  return s;
}

std::string format_support(const MonomialSupport& s) {
  std::string out;
  for (const auto& [i, j] : s) {
    if (!out.empty()) out += ",";
    out += std::to_string(i) + std::to_string(j);
  }
  return out;
}

MonomialSupport full_support() {
  MonomialSupport s;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s.insert({i, j});
  }
  return s;
}

namespace {

long term_weight(const std::pair<int, int>& m, const OneParamSubgroup& l) {
  return l.r0 * (2 - 2 * m.first) + l.r1 * (2 - 2 * m.second);
}

}  // namespace

long hm_weight(const MonomialSupport& s, const OneParamSubgroup& l) {
  if (s.empty()) throw Error("EmptySupport", "support has no monomials");
  long best = std::numeric_limits<long>::min();
  for (const auto& m : s) best = std::max(best, term_weight(m, l));
  return best;
}

long hm_weight_min(const MonomialSupport& s, const OneParamSubgroup& l) {
  if (s.empty()) throw Error("EmptySupport", "support has no monomials");
  long best = std::numeric_limits<long>::max();
  for (const auto& m : s) best = std::min(best, term_weight(m, l));
  return best;
}

bool is_admissible(const OneParamSubgroup& l) { return l.r1 >= l.r0 && l.r0 >= 0 && l.r1 > 0; }

std::optional<Destabilizer> find_destabilizer(const MonomialSupport& s, long bound) {
  if (bound < 1) throw Error("InvalidParameters", "bound must be at least 1");
  std::optional<Destabilizer> negative;
  std::optional<Destabilizer> zero;
  for (long r1 = 1; r1 <= bound; ++r1) {
    for (long r0 = 0; r0 <= r1; ++r0) {
      if (std::gcd(r0, r1) != 1) continue;
      OneParamSubgroup l{r0, r1};
      long w = hm_weight(s, l);
      if (w < 0) {
        // Compare w / r1 without division: w * best.r1 < best.w * r1.
        if (!negative || w * negative->lambda.r1 < negative->weight * r1) negative = Destabilizer{l, w, false};
      } else if (w == 0 && !zero) {
        zero = Destabilizer{l, 0, true};
      }
    }
  }
  return negative ? negative : zero;
}

bool fixed_point_singularity(const std::map<std::pair<int, int>, Rational>& coeffs) {
  auto vanishes = [&](int i, int j) {
    auto it = coeffs.find({i, j});
    return it == coeffs.end() || it->second.is_zero();
  };
  return vanishes(0, 0) && vanishes(1, 0) && vanishes(0, 1);
}

}  // namespace kstab
