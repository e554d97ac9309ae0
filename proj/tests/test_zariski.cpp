#include <doctest.h>

#include "kstab/flags.hpp"
#include "kstab/runner.hpp"
#include "kstab/zariski.hpp"
#include "support.hpp"

using namespace kstab;
using kstab::testing::data_dir;
using kstab::testing::error_kind;
using kstab::testing::R;

namespace {

SurfaceLattice hirzebruch_one() {
  SurfaceLattice l;
  l.curves = {"e", "f"};
  l.gram = {{R("-1"), R("1")}, {R("1"), R("0")}};
  return l;
}

}  // namespace

TEST_CASE("pointwise decomposition on the first Hirzebruch surface") {
  SurfaceLattice l = hirzebruch_one();
  ZariskiResult nef = surface_zariski(l, {R("1"), R("2")});
  CHECK(nef.negative == Vector{R("0"), R("0")});
  CHECK(nef.support.empty());

  ZariskiResult z = surface_zariski(l, {R("2"), R("1")});
  CHECK(z.negative == Vector{R("1"), R("0")});
  CHECK(z.positive == Vector{R("1"), R("1")});
  CHECK(l.pair(z.positive, z.positive) == R("1"));
  CHECK(z.support == std::vector<int>{0});
}

TEST_CASE("lattice validation") {
  SurfaceLattice bad;
  bad.curves = {"a", "b"};
  bad.gram = {{R("-1"), R("1")}, {R("0"), R("0")}};
  CHECK(error_kind([&] { bad.validate(); }) != "");
  CHECK(error_kind([&] { hirzebruch_one().index("z"); }) == "UnknownCurve");
}

TEST_CASE("negative part on the fibre after the blowup") {
  // At u = 0 and v = 3/2 the fibre through the blown-up point splits off with coefficient v - 1.
  FlagCase fc = base_case_flag(R("3/2"), R("4"), R("1/2"), false);
  Vector d;
  for (std::size_t i = 0; i < 3; ++i) d.push_back(fc.pieces[0].positive[i].eval(R("0")) - R("3/2") * fc.flag_class[i]);
  ZariskiResult z = surface_zariski(fc.lattice, d);
  CHECK(z.negative == Vector{R("0"), R("1/2"), R("0")});
}

TEST_CASE("a constant nef family has one chamber") {
  SurfaceLattice l = hirzebruch_one();
  ChamberDecomposition dec = parametric_surface_zariski(l, {Polynomial(1), Polynomial(2)}, box({R("0"), R("1")}, {R("0"), R("1")}));
  REQUIRE(dec.chambers.size() == 1);
  CHECK(dec.chambers[0].negative[0].is_zero());
  CHECK(dec.chambers[0].negative[1].is_zero());
  CHECK(verify_chambers(l, {Polynomial(1), Polynomial(2)}, dec).empty());
}

TEST_CASE("a family crossing a wall splits into two chambers") {
  // D(u) = (1 + u) e + f: nef for u <= 0, negative part u e afterwards.
  SurfaceLattice l = hirzebruch_one();
  std::vector<Polynomial> fam{Polynomial::affine(R("1"), R("1")), Polynomial(1)};
  ChamberDecomposition dec = parametric_surface_zariski(l, fam, box({R("-1"), R("1")}, {R("0"), R("1")}));
  REQUIRE(dec.chambers.size() == 2);
  bool saw_negative = false;
  for (const auto& ch : dec.chambers) {
    if (!ch.negative[0].is_zero()) {
      saw_negative = true;
      CHECK(ch.negative[0] == Polynomial::u());
    }
  }
  CHECK(saw_negative);
  CHECK(verify_chambers(l, fam, dec).empty());
}

TEST_CASE("chambers of the flag surfaces satisfy orthogonality") {
  for (const char* name : {"a1_exceptional_curve", "a1_ordinary_blowup", "a1_weighted_blowup", "a2_curve_c1"}) {
    auto path = data_dir() / "flags" / (std::string(name) + ".json");
    FlagCase fc = flag_case_from_json(load_json_file(path), data_dir(), path.string());
    FlagEvaluation ev = evaluate_flag(fc);
    CHECK_MESSAGE(!ev.chambers.empty(), name);
    for (const auto& ch : ev.chambers) {
      for (int j : ch.chamber.support) {
        Vector e(fc.lattice.curves.size());
        e[j] = 1;
        CHECK_MESSAGE(fc.lattice.pair(ch.chamber.positive, e).is_zero(), name);
      }
    }
  }
}

TEST_CASE("threefold volumes from chamber data") {
  ChamberFixture f = load_chamber_fixture(data_dir() / "chambers" / "a1_small_models.json", data_dir());
  VolumeResult vr = threefold_chamber_volume(f.models, f.total, f.chambers);
  Polynomial u = Polynomial::u();
  REQUIRE(vr.volume.pieces.size() == 3);
  CHECK(vr.volume.pieces[0].poly == Polynomial(13) - u.pow(3));
  CHECK(vr.volume.pieces[1].poly == Polynomial(12) + Polynomial(3) * u - Polynomial(3) * u.pow(2));
  CHECK(vr.volume.pieces[2].poly == Polynomial(27) * u - Polynomial(18) * u.pow(2) + Polynomial(3) * u.pow(3));

  ChamberFixture g = load_chamber_fixture(data_dir() / "chambers" / "a2_small_models.json", data_dir());
  VolumeResult wr = threefold_chamber_volume(g.models, g.total, g.chambers);
  const Piece& last = wr.volume.pieces.back();
  CHECK(last.interval == Interval{R("6"), R("9")});
  CHECK(last.poly == Polynomial(R("-1/9")) * u.pow(3) + Polynomial(3) * u.pow(2) - Polynomial(27) * u + Polynomial(81));
  CHECK(continuity_breaks(wr.volume).empty());
}

TEST_CASE("a decomposition that does not add up is rejected") {
  ChamberFixture f = load_chamber_fixture(data_dir() / "chambers" / "a1_small_models.json", data_dir());
  f.chambers[0].negative[1] += Polynomial(1);
  CHECK(error_kind([&] { threefold_chamber_volume(f.models, f.total, f.chambers); }) == "DecompositionMismatch");
}
