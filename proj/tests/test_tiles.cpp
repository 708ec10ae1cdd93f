#include "randwalls/pipeline.hpp"
#include "randwalls/tiles.hpp"
#include "randwalls/walls.hpp"

#include <gtest/gtest.h>

using namespace randwalls;

namespace {

std::vector<CellSpec> distinct_cells(int n) {
  std::vector<CellSpec> cells;
  for (int i = 0; i < n; ++i) cells.push_back({i, 0, false});
  return cells;
}

PatchComplex pair(int ell, int overlap) {
  return PatchComplex(ell, distinct_cells(2), {{0, 0, 1, 0, overlap, true}});
}

CellSet cells_named(const FixtureSpec& f, std::initializer_list<const char*> names) {
  CellSet s = 0;
  for (const char* n : names) s |= single_cell(f.cell(n));
  return s;
}

std::optional<int> find_any(const TileCollection& tc, CellSet cells) {
  for (const Tile& t : tc.history()) {
    if (t.cells == cells) return t.id;
  }
  return std::nullopt;
}

std::unique_ptr<Build> fixture_build(const std::string& name) {
  const FixtureSpec& f = find_fixture(name);
  TileConfig cfg;
  if (f.d) cfg.d = *f.d;
  return std::make_unique<Build>(build_fixture(f, f.ell), cfg);
}

}  // namespace

TEST(Balance, FrozenValues) {
  for (int ell : {8, 20, 40}) {
    PatchComplex one(ell, distinct_cells(1), {});
    EXPECT_EQ(balance(one, 1), ell);  // ell/2 in half units
    for (int p = ell / 4; p <= ell / 2; ++p) {
      EXPECT_EQ(balance(pair(ell, p), 3), 2 * (3 * ell / 4 - p));
    }
    if (ell / 4 > 2) EXPECT_EQ(balance(pair(ell, ell / 4 - 2), 3), ell + 4);
  }
}

TEST(Potile, Examples) {
  EXPECT_TRUE(is_potile(PatchComplex(40, distinct_cells(1), {}), 1));
  EXPECT_FALSE(is_potile(pair(40, 9), 3));
  EXPECT_TRUE(is_potile(pair(40, 10), 3));
  PatchComplex apart(40, distinct_cells(2), {});
  EXPECT_THROW(is_potile(apart, 3), ComplexError);
}

TEST(Potile, UnionOfLongOverlapIsPotile) {
  for (const FixtureSpec& f : fixture_catalog()) {
    PatchComplex p = build_fixture(f, f.ell);
    std::vector<CellSet> pots;
    for (CellSet s : connected_subsets(p, 6)) {
      if (is_potile(p, s)) pots.push_back(s);
    }
    for (CellSet a : pots) {
      for (CellSet b : pots) {
        if (a & b) continue;
        int ov = overlap(p, a, b);
        if (4 * ov >= p.ell()) EXPECT_TRUE(is_potile(p, a | b)) << f.name;
      }
    }
  }
}

TEST(TileConfig, LambdaAndReturningCap) {
  TileConfig c;
  c.d = Rational(3, 14);
  EXPECT_EQ(c.lambda(), Rational(7));
  EXPECT_EQ(c.returning_cap(), 21);
  EXPECT_TRUE(c.density_fits());
  c.d = Rational(1, 5);
  EXPECT_EQ(c.lambda(), Rational(5));
  EXPECT_EQ(c.returning_cap(), 15);
  c.d = Rational(2, 9);
  EXPECT_FALSE(c.density_fits());
  c.n_ret = 4;
  EXPECT_EQ(c.returning_cap(), 4);
}

TEST(Collection, SingleCell) {
  auto b = fixture_build("single_cell");
  const TileCollection& tc = b->tiles();
  ASSERT_EQ(tc.alive().size(), 1U);
  EXPECT_EQ(tc.tile(tc.alive()[0]).cls, TileClass::One);
  EXPECT_TRUE(tc.log().empty());
}

TEST(Collection, Balancing2TileIsOneCoreTile) {
  auto b = fixture_build("balancing2tile");
  const TileCollection& tc = b->tiles();
  ASSERT_EQ(tc.alive().size(), 1U);
  const Tile& t = tc.tile(tc.alive()[0]);
  EXPECT_EQ(t.cls, TileClass::Core);
  EXPECT_EQ(t.cells, 3U);
}

TEST(Collection, BelowQuarterStaysApart) {
  auto b = fixture_build("pair_below_quarter");
  EXPECT_EQ(b->tiles().alive().size(), 2U);
  EXPECT_TRUE(b->tiles().log().empty());
}

TEST(Collection, ExampleTileFormsTheFullUnion) {
  const FixtureSpec& f = find_fixture("exampletile");
  auto b = fixture_build("exampletile");
  const TileCollection& tc = b->tiles();
  auto id = tc.find_alive(cells_named(f, {"S", "C1", "C2", "T"}));
  ASSERT_TRUE(id.has_value());
  EXPECT_EQ(tc.tile(*id).cls, TileClass::Core);
  EXPECT_EQ(tc.alive().size(), 1U);
}

TEST(Collection, UpdatedLifeOfATileAncestry) {
  const FixtureSpec& f = find_fixture("updatedlifeofatile");
  auto b = fixture_build("updatedlifeofatile");
  const TileCollection& tc = b->tiles();
  const PatchComplex& p = b->patch();
  CellSet ab = cells_named(f, {"A", "B"});
  CellSet de = cells_named(f, {"D", "E"});
  CellSet c = cells_named(f, {"C"});
  auto t_ab = find_any(tc, ab);
  auto t_de = find_any(tc, de);
  auto t_abc = find_any(tc, ab | c);
  auto t_all = find_any(tc, p.all_cells());
  ASSERT_TRUE(t_ab && t_de && t_abc && t_all);
  EXPECT_EQ(tc.tile(*t_ab).made_by, Provenance::Step1);
  EXPECT_EQ(tc.tile(*t_de).made_by, Provenance::Step1);
  EXPECT_EQ(tc.tile(*t_abc).made_by, Provenance::Step2);
  EXPECT_EQ(tc.tile(*t_all).made_by, Provenance::Step3);
  EXPECT_TRUE(tc.tile(*t_all).alive());

  EXPECT_GE(overlap(p, cells_named(f, {"A"}), cells_named(f, {"B"})),
            overlap(p, cells_named(f, {"D"}), cells_named(f, {"E"})));
  EXPECT_LT(4 * overlap(p, c, ab), p.ell());
  EXPECT_EQ(age_compare(tc, *t_ab, *t_de), Age::Older);
  EXPECT_EQ(age_compare(tc, *t_de, *t_ab), Age::Younger);
}

TEST(Age, StartingTilesAreYoungest) {
  auto b = fixture_build("balancing2tile");
  const TileCollection& tc = b->tiles();
  int glued = tc.alive()[0];
  EXPECT_EQ(age_compare(tc, 0, glued), Age::Younger);
  EXPECT_EQ(age_compare(tc, glued, glued), Age::Incomparable);
  EXPECT_EQ(age_compare(tc, 0, 1), Age::Incomparable);
  EXPECT_TRUE(is_older(tc, 0, 1));
  EXPECT_FALSE(is_older(tc, 1, 0));
}

TEST(Orbits, LabelledPatternIsomorphism) {
  PatchComplex p(12, {{0, 0, false}, {0, 3, false}, {1, 0, false}}, {{0, 0, 2, 0, 2, true}});
  EXPECT_TRUE(orbit_isomorphic(p, 1, 1));
  EXPECT_TRUE(orbit_isomorphic(p, 1, 2));
  EXPECT_FALSE(orbit_isomorphic(p, 1, 4));
  EXPECT_FALSE(orbit_isomorphic(p, 5, 2));
}

TEST(CheckCollection, CleanOnAdmissibleFixtures) {
  for (const FixtureSpec& f : fixture_catalog()) {
    auto b = fixture_build(f.name);
    if (!b->admissibility().admissible()) continue;
    CollectionReport r = check_collection(b->tiles());
    EXPECT_TRUE(r.violations.empty()) << f.name << ": " << r.violations.front().message;
  }
}

TEST(CheckCollection, NestedCoreTilesViolateItemOne) {
  PatchComplex p = pair(40, 12);
  TileCollection tc(p, TileConfig{});
  Tile big;
  big.cells = 3;
  big.cls = TileClass::Core;
  tc.add_tile(big);
  Tile small;
  small.cells = 1;
  small.cls = TileClass::Core;
  tc.add_tile(small);
  CollectionReport r = check_collection(tc);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().item, "item1");
}

TEST(CheckCollection, YoungerCellMeetingOlderCoreTileInAQuarter) {
  PatchComplex p(40, distinct_cells(4),
                 {{0, 0, 1, 0, 12, true}, {2, 0, 3, 0, 12, true}, {0, 20, 2, 20, 10, true}});
  TileCollection tc(p, TileConfig{});
  Tile old;
  old.cells = 3;
  old.cls = TileClass::Core;
  old.made_by = Provenance::Step1;
  old.birth = 1;
  tc.add_tile(old);
  Tile young = old;
  young.cells = 12;
  young.birth = 2;
  tc.add_tile(young);
  CollectionReport r = check_collection(tc);
  bool found = false;
  for (const auto& v : r.violations) found |= v.item == "small-intersections";
  EXPECT_TRUE(found);
}

TEST(Collection, BalanceBoundsForEveryTile) {
  for (const FixtureSpec& f : fixture_catalog()) {
    auto b = fixture_build(f.name);
    if (!b->admissibility().admissible()) continue;
    const TileCollection& tc = b->tiles();
    for (const Tile& t : tc.history()) {
      int bal = tc.balance(t.id);
      EXPECT_GE(bal, f.ell / 2) << f.name << " tile " << t.id;
      EXPECT_LE(bal, f.ell) << f.name << " tile " << t.id;
      EXPECT_LE(cell_count(t.cells), tc.config().max_potile_size);
    }
  }
}

TEST(Collection, StepOneFixedPointWhenOnlyStepOneFired) {
  for (const FixtureSpec& f : fixture_catalog()) {
    auto b = fixture_build(f.name);
    const TileCollection& tc = b->tiles();
    bool only_step1 = std::all_of(tc.log().begin(), tc.log().end(), [](const StepRecord& r) { return r.step == 1; });
    if (!only_step1 || !b->admissibility().admissible()) continue;
    auto alive = tc.alive();
    for (int a : alive) {
      for (int c : alive) {
        CellSet x = tc.tile(a).cells;
        CellSet y = tc.tile(c).cells;
        if (a >= c || (x & y) || cell_count(x | y) > tc.config().max_tile_size) continue;
        EXPECT_LT(4 * overlap(b->patch(), x, y), f.ell) << f.name;
      }
    }
  }
}

TEST(Collection, Deterministic) {
  for (const char* name : {"updatedlifeofatile", "wallcases", "exampletile"}) {
    auto a = fixture_build(name);
    auto b = fixture_build(name);
    EXPECT_EQ(steps_jsonl(a->tiles()), steps_jsonl(b->tiles()));
    EXPECT_EQ(tiles_json(a->tiles()), tiles_json(b->tiles()));
  }
}

TEST(Collection, CoreStrictLeavesExactQuarterOverlapToStepTwo) {
  PatchComplex p = build_fixture(find_fixture("pair_quarter"), 40);
  TileConfig loose;
  WallState s1(p);
  EXPECT_EQ(build_tile_collection(p, loose, s1).log().size(), 1U);
  TileConfig strict;
  strict.core_strict = true;
  WallState s2(p);
  TileCollection tc = build_tile_collection(p, strict, s2);
  ASSERT_EQ(tc.log().size(), 1U);
  EXPECT_EQ(tc.log()[0].step, 2);
}

TEST(Collection, FirstPairOfAStepOneTile) {
  const FixtureSpec& f = find_fixture("exampletile");
  auto b = fixture_build("exampletile");
  const TileCollection& tc = b->tiles();
  auto d = first_pair(tc, tc.alive()[0]);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(tc.tile(*d).cells, cells_named(f, {"C1", "C2"}));
}
