#include "randwalls/pipeline.hpp"
#include "randwalls/tracer.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <set>

using namespace randwalls;

namespace {

std::unique_ptr<Build> fixture_build(const std::string& name, bool bending = true) {
  const FixtureSpec& f = find_fixture(name);
  TileConfig cfg;
  if (f.d) cfg.d = *f.d;
  cfg.bending = bending;
  return std::make_unique<Build>(build_fixture(f, f.ell), cfg);
}

}  // namespace

TEST(Trace, SingleCellHasHalfEllOneEdgeWalls) {
  PatchComplex p(8, {{0, 0, false}}, {});
  WallState s(p);
  auto traces = trace_walls(p, s);
  ASSERT_EQ(traces.size(), 4U);
  std::set<int> seen;
  for (const WallTrace& w : traces) {
    ASSERT_EQ(w.midpoints.size(), 2U);
    EXPECT_EQ(w.edges.size(), 1U);
    EXPECT_EQ(w.midpoints[1] - w.midpoints[0], 4);
    seen.insert(w.midpoints.begin(), w.midpoints.end());
    EXPECT_TRUE(check_embedded(p, w).embedded);
  }
  EXPECT_EQ(seen.size(), 8U);
}

TEST(Trace, MidpointsPartitionEdges) {
  for (const FixtureSpec& f : fixture_catalog()) {
    auto b = fixture_build(f.name);
    std::vector<int> owner(b->patch().num_edges(), -1);
    for (const WallTrace& w : b->traces()) {
      for (int m : w.midpoints) {
        EXPECT_EQ(owner[m], -1) << f.name;
        owner[m] = w.id;
      }
    }
    for (int o : owner) EXPECT_GE(o, 0) << f.name;
  }
}

TEST(Trace, WallsThroughTheOverlapCrossBothCells) {
  auto b = fixture_build("pair_below_quarter");
  const PatchComplex& p = b->patch();
  int two_cell = 0;
  for (const WallTrace& w : b->traces()) {
    std::set<int> cells(w.cells.begin(), w.cells.end());
    if (cells.size() == 2) {
      ++two_cell;
      EXPECT_EQ(w.edges.size(), 2U);
      EXPECT_EQ(w.midpoints.size(), 3U);
    }
  }
  EXPECT_EQ(two_cell, overlap(p, 1, 2));
}

TEST(Embedded, AdmissibleFixturesAreEmbedded) {
  for (const FixtureSpec& f : fixture_catalog()) {
    auto b = fixture_build(f.name);
    if (!b->admissibility().admissible()) continue;
    for (const WallTrace& w : b->traces()) {
      EmbeddingReport r = check_embedded(b->patch(), w);
      EXPECT_TRUE(r.embedded) << f.name << " wall " << w.id << " " << r.problem;
    }
  }
}

TEST(Embedded, SelfOverlappingPairRevisitsACell) {
  auto b = fixture_build("pair_over_half");
  bool revisit = false;
  for (const WallTrace& w : b->traces()) revisit |= !check_embedded(b->patch(), w).embedded;
  EXPECT_TRUE(revisit);
  EXPECT_THROW(export_wallspace(b->patch(), b->traces(), b->tiles().config()), ComplexError);
}

TEST(Decompose, PathInsideOneTileHasLengthOne) {
  auto b = fixture_build("balancing2tile");
  const TileCollection& tc = b->tiles();
  for (const WallTrace& w : b->traces()) {
    for (const WallPath& path : trace_paths(b->patch(), w)) {
      Decomposition d = decompose(tc, path, b->walls());
      ASSERT_EQ(d.factors.size(), 1U);
      EXPECT_EQ(d.factors[0].first, 0);
      EXPECT_EQ(d.factors[0].last, static_cast<int>(path.midpoints.size()) - 1);
    }
  }
}

TEST(Decompose, FactorsCoverThePathAndFracturedAreDisjoint) {
  for (const char* name : {"pair_below_quarter", "updatedlifeofatile", "wallcases", "shards"}) {
    auto b = fixture_build(name);
    const TileCollection& tc = b->tiles();
    for (const WallTrace& w : b->traces()) {
      for (const WallPath& path : trace_paths(b->patch(), w)) {
        Decomposition d = decompose(tc, path, b->walls());
        ASSERT_FALSE(d.factors.empty());
        EXPECT_EQ(d.factors.front().first, 0);
        EXPECT_EQ(d.factors.back().last, static_cast<int>(path.midpoints.size()) - 1);
        for (std::size_t i = 1; i < d.factors.size(); ++i) {
          EXPECT_LE(d.factors[i].first, d.factors[i - 1].last + 1) << name;
        }
        if (!d.fractured_ok) continue;
        CellSet used = 0;
        for (const Factor& f : d.fractured) {
          EXPECT_EQ(used & tc.tile(f.tile).cells, 0U) << name;
          used |= tc.tile(f.tile).cells;
        }
      }
    }
  }
}

TEST(Returning, NoHitsOnAdmissibleFixtures) {
  for (const FixtureSpec& f : fixture_catalog()) {
    auto b = fixture_build(f.name);
    if (!b->admissibility().admissible()) continue;
    ReturningReport r = detect_returning(b->tiles(), b->traces(), b->walls(), 21);
    EXPECT_TRUE(r.hits.empty()) << f.name;
  }
}

TEST(Wallspace, SingleCellSidesSplitEvenly) {
  PatchComplex p(8, {{0, 0, false}}, {});
  WallState s(p);
  TileConfig cfg;
  cfg.d = Rational(3, 14);
  Wallspace ws = export_wallspace(p, trace_walls(p, s), cfg);
  EXPECT_EQ(ws.lambda, Rational(7));
  EXPECT_EQ(ws.n_ret, 21);
  ASSERT_EQ(ws.walls.size(), 4U);
  for (const WallspaceWall& w : ws.walls) {
    EXPECT_TRUE(w.separating);
    int ones = 0;
    for (auto [v, side] : w.sides) ones += side;
    EXPECT_EQ(ones, 4);
    EXPECT_EQ(static_cast<int>(w.sides.size()), 8);
  }
}

TEST(Wallspace, JsonRoundTrip) {
  for (const char* name : {"balancing2tile", "wallcases", "MPexample"}) {
    auto b = fixture_build(name);
    Wallspace ws = export_wallspace(b->patch(), b->traces(), b->tiles().config());
    EXPECT_EQ(parse_wallspace(wallspace_json(ws)), ws) << name;
  }
}

TEST(Wallspace, SegmentsFollowTheWalls) {
  auto b = fixture_build("balancing2tile");
  auto segs = wall_segments(b->patch(), b->traces());
  std::size_t edges = 0;
  for (const WallTrace& w : b->traces()) edges += w.edges.size();
  EXPECT_GE(segs.size(), b->traces().size());
  EXPECT_LE(segs.size(), edges);
}

TEST(Returning, InadmissibleRingReturnsAndIsFlagged) {
  auto b = fixture_build("returning_ring");
  EXPECT_FALSE(b->admissibility().admissible());
  ReturningReport r = detect_returning(b->tiles(), b->traces(), b->walls(), 21);
  ASSERT_FALSE(r.hits.empty());
  for (const ReturningHit& h : r.hits) {
    EXPECT_GE(h.length, 2);
    EXPECT_TRUE(h.claims_hold);
  }
  bool cycle = false;
  for (const WallTrace& w : b->traces()) {
    EmbeddingReport e = check_embedded(b->patch(), w);
    if (!e.embedded && e.problem == "cycle") cycle = !e.witness.empty();
  }
  EXPECT_TRUE(cycle);
}

// The same ring with two-edge gluings passes both admissibility checks, and a
// labelled copy exists for a sampled presentation. Its walls still close up:
// the filling of the hole is what rules it out, and the patch does not contain it.
TEST(Returning, NarrowRingPassesAdmissibilityButReturns) {
  Presentation pres = sample_presentation(2, Rational(3, 14), 40, 20240641);
  RelatorLabels labels = subdivided_labels(pres);
  Rng rng(7, "ring");
  std::optional<PatchComplex> ring;
  for (int tries = 0; tries < 200000 && !ring; ++tries) {
    std::vector<CellSpec> cells;
    for (int i = 0; i < 3; ++i) {
      cells.push_back({static_cast<int>(rng.below(pres.relators.size())), static_cast<int>(rng.below(40)),
                       rng.chance(1, 2)});
    }
    try {
      ring.emplace(40, cells, std::vector<Gluing>{{0, 0, 1, 0, 2, true}, {1, 20, 2, 0, 2, true}, {2, 20, 0, 20, 2, true}},
                   &labels);
    } catch (const ComplexError&) {
    }
  }
  ASSERT_TRUE(ring.has_value());
  TileConfig cfg;
  cfg.d = Rational(3, 14);
  Build b(*ring, cfg);
  EXPECT_TRUE(b.admissibility().admissible());
  EXPECT_FALSE(detect_returning(b.tiles(), b.traces(), b.walls(), cfg.returning_cap()).hits.empty());
}
