#include <doctest.h>

#include "kstab/runner.hpp"
#include "kstab/toric.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::data_dir;
using kstab::testing::error_kind;
using kstab::testing::R;

namespace {

std::shared_ptr<const ToricModel> model(const std::string& name) { return load_model(data_dir() / "models" / (name + ".json")); }

ToricModel projective_space() {
  ToricModel::Input in;
  in.name = "P3";
  in.rays = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}};
  in.cones = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  return ToricModel(in);
}

DivisorClass L(const ToricModel& m, const Rational& u) {
  return combine(combine(combine({}, m.divisor("F0"), R("3") - u), m.divisor("F1"), R("3")), m.divisor("F5"));
}

}  // namespace

TEST_CASE("projective space has all top products equal to one") {
  ToricModel p3 = projective_space();
  CHECK(p3.is_complete());
  CHECK(p3.product({0, 0, 0}) == R("1"));
  CHECK(p3.product({0, 1, 3}) == R("1"));
  CHECK(p3.product({2, 2, 3}) == R("1"));
  CHECK(p3.self_power({{0, R("4")}}) == R("64"));
}

TEST_CASE("distinct products follow the determinant rule") {
  auto y0 = model("a1_y0");
  CHECK(y0->distinct_product({0, 1, 2}) == R("1"));
  CHECK(model("a2_y0")->distinct_product({0, 1, 2}) == R("1/3"));
  // x1 x2 x4 generates a component of the irrelevant ideal, so F1 F2 F4 is empty.
  CHECK(!y0->is_cone({1, 2, 4}));
  CHECK(y0->distinct_product({1, 2, 4}) == R("0"));
  for (int k : {1, 2, 4, 5}) CHECK(y0->distinct_product({0, 3, k}) == R("0"));
  CHECK(error_kind([&] { y0->distinct_product({1, 1, 2}); }) == "RepeatedIndex");
  CHECK(error_kind([&] { y0->distinct_product({1, 2, 9}); }) == "IndexOutOfRange");
}

TEST_CASE("triple products on the small models") {
  CHECK(model("a1_y0")->product({5, 5, 5}) == R("4"));
  CHECK(model("a2_y0")->product({0, 0, 0}) == R("1/18"));
  CHECK(model("a2_y1")->product({0, 0, 5}) == R("-1/6"));
  CHECK(model("a2_y2")->product({5, 5, 5}) == R("3"));
  auto y2 = model("a2_y2");
  DivisorClass d = combine(combine(y2->divisor("F0"), y2->divisor("F1")), y2->divisor("F5"), R("1/3"));
  CHECK(y2->self_power(d) == R("1/9"));
}

TEST_CASE("products do not depend on the chosen representative") {
  // F3 is linearly equivalent to F1 + F0 on the first model.
  auto y0 = model("a1_y0");
  for (int a = 0; a < 6; ++a) {
    for (int b = a; b < 6; ++b) {
      DivisorClass f3{{3, R("1")}};
      CHECK(y0->intersect({y0->divisor("F" + std::to_string(a)), y0->divisor("F" + std::to_string(b)), f3}) ==
            y0->intersect({y0->divisor("F" + std::to_string(a)), y0->divisor("F" + std::to_string(b)),
                           combine(y0->divisor("F0"), y0->divisor("F1"))}));
    }
  }
}

TEST_CASE("curve pairings") {
  auto y0 = model("a1_y0");
  CHECK(pair_curve_divisor(y0->curve("C12"), y0->divisor("F1")) == R("-1"));
  CHECK(pair_curve_divisor(model("a2_y1")->curve("C05"), model("a2_y1")->divisor("F0")) == R("-1/6"));
  CHECK(pair_curve_divisor(y0->curve("C12"), DivisorClass{}) == R("0"));
  CHECK(error_kind([&] { y0->curve("C99"); }) == "UnknownCurve");
  CHECK(error_kind([&] { y0->divisor("G2"); }) == "UnknownDivisor");
}

TEST_CASE("nef and effective checks along the family") {
  auto y0 = model("a1_y0");
  NefResult at1 = nef_check(*y0, L(*y0, R("1")));
  CHECK(at1.nef);
  CHECK(at1.pairings.at("C12") == R("0"));
  NefResult at2 = nef_check(*y0, L(*y0, R("2")));
  CHECK(!at2.nef);
  CHECK(at2.pairings.at("C12") < R("0"));
  CHECK(nef_check(*y0, DivisorClass{}).nef);

  CHECK(effective_check(*y0, L(*y0, R("3"))));
  CHECK(!effective_check(*y0, L(*y0, R("4"))));
  CHECK(effective_check(*y0, y0->divisor("F0")));

  ParametricDivisor fam{{0, Polynomial::affine(R("3"), R("-1"))}, {1, Polynomial(3)}, {5, Polynomial(1)}};
  CHECK(pseudoeffective_threshold(*y0, fam) == R("3"));
  ParametricDivisor constant{{1, Polynomial(1)}};
  CHECK(error_kind([&] { pseudoeffective_threshold(*y0, constant); }) == "Unbounded");
}

TEST_CASE("polytope barycenters") {
  Polytope cube;
  for (int x : {0, 1})
    for (int y : {0, 1})
      for (int z : {0, 1}) cube.vertices.push_back({Rational(x), Rational(y), Rational(z)});
  CHECK(polytope_volume(cube) == R("1"));
  CHECK(polytope_barycenter(cube) == Point3{R("1/2"), R("1/2"), R("1/2")});
  Polytope shifted = cube;
  for (auto& p : shifted.vertices) p[0] += R("1");
  CHECK(polytope_barycenter(shifted) == Point3{R("3/2"), R("1/2"), R("1/2")});

  Polytope simplex{{{R("0"), R("0"), R("0")}, {R("1"), R("0"), R("0")}, {R("0"), R("1"), R("0")}, {R("0"), R("0"), R("1")}}};
  CHECK(polytope_volume(simplex) == R("1/6"));
  CHECK(polytope_barycenter(simplex) == Point3{R("1/4"), R("1/4"), R("1/4")});

  Polytope flat{{{R("0"), R("0"), R("0")}, {R("1"), R("0"), R("0")}, {R("0"), R("1"), R("0")}}};
  CHECK(error_kind([&] { polytope_volume(flat); }) == "DegeneratePolytope");
}

TEST_CASE("the bundled polytope is centred") {
  Json j = load_json_file(data_dir() / "models" / "family42_polytope.json");
  Polytope p;
  for (const auto& v : j.at("vertices")) {
    p.vertices.push_back({rational_from_json(v[0], "v"), rational_from_json(v[1], "v"), rational_from_json(v[2], "v")});
  }
  REQUIRE(p.vertices.size() == 12);
  CHECK(polytope_barycenter(p) == Point3{R("0"), R("0"), R("0")});
}
