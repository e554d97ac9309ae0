#include <doctest.h>

#include <random>

#include "kstab/git.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::error_kind;
using kstab::testing::R;

namespace {

MonomialSupport transpose(const MonomialSupport& s) {
  MonomialSupport t;
  for (auto [i, j] : s) t.insert({j, i});
  return t;
}

}  // namespace

TEST_CASE("support parsing") {
  MonomialSupport s = parse_support("02,12,21,22");
  CHECK(s.size() == 4);
  CHECK(s.count({2, 1}) == 1);
  CHECK(format_support(s) == "02,12,21,22");
  CHECK(full_support().size() == 9);
  CHECK(error_kind([] { parse_support("03"); }) == "ParseError");
  CHECK(error_kind([] { parse_support("0,1"); }) == "ParseError");
}

TEST_CASE("Hilbert-Mumford weights") {
  CHECK(hm_weight(full_support(), {1, 1}) == 4);
  CHECK(hm_weight(parse_support("11,02,20,12,21,22"), {1, 1}) == 0);
  CHECK(hm_weight(parse_support("02,12,21,22"), {1, 2}) == -2);
  // The two extreme monomials of bidegree (2,2) have opposite weights.
  for (long r0 = 0; r0 <= 3; ++r0) {
    for (long r1 = 1; r1 <= 3; ++r1) {
      CHECK(hm_weight(parse_support("02"), {r0, r1}) == -hm_weight_min(parse_support("20"), {r0, r1}));
    }
  }
}

TEST_CASE("destabilizing subgroups") {
  auto d = find_destabilizer(parse_support("02,12,21,22"), 5);
  REQUIRE(d);
  CHECK(d->lambda.r0 == 1);
  CHECK(d->lambda.r1 == 2);
  CHECK(d->weight == -2);
  CHECK(!d->strictly_semistable_direction);

  CHECK(!find_destabilizer(full_support(), 5));

  auto w = find_destabilizer(parse_support("11,02,20,12,21,22"), 5);
  REQUIRE(w);
  CHECK(w->lambda.r0 == 1);
  CHECK(w->lambda.r1 == 1);
  CHECK(w->weight == 0);
  CHECK(w->strictly_semistable_direction);
}

TEST_CASE("singular torus-fixed point") {
  CHECK(fixed_point_singularity({{{1, 1}, R("1")}}));
  CHECK(!fixed_point_singularity({{{0, 0}, R("1")}, {{1, 1}, R("3")}}));
  CHECK(!fixed_point_singularity({{{0, 1}, R("1")}}));
}

TEST_CASE("random supports: monotone, scalable and symmetric") {
  std::mt19937_64 rng(2024);
  auto all = full_support();
  std::vector<std::pair<int, int>> monomials(all.begin(), all.end());
  for (int trial = 0; trial < 50; ++trial) {
    MonomialSupport s;
    for (const auto& m : monomials) {
      if (rng() % 2) s.insert(m);
    }
    if (s.empty()) s.insert(monomials[rng() % 9]);
    MonomialSupport bigger = s;
    bigger.insert(monomials[rng() % 9]);
    OneParamSubgroup l{static_cast<long>(rng() % 4), 1 + static_cast<long>(rng() % 4)};
    CHECK(hm_weight(bigger, l) >= hm_weight(s, l));
    CHECK(hm_weight(s, {3 * l.r0, 3 * l.r1}) == 3 * hm_weight(s, l));
    CHECK(hm_weight(transpose(s), {l.r1, l.r0}) == hm_weight(s, l));
  }
}
