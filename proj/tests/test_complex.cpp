#include "randwalls/complex.hpp"
#include "randwalls/oracles.hpp"
#include "randwalls/sampler.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

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

// Three cells meeting at one vertex, each pair sharing a leg of the given length.
PatchComplex tripod(int ell, int leg) {
  return PatchComplex(ell, distinct_cells(3),
                      {{0, 0, 1, 0, leg, true}, {1, leg, 2, 0, leg, true}, {2, leg, 0, ell - leg, leg, true}});
}

std::vector<int> shared_edges(const PatchComplex& p) {
  std::vector<int> out;
  for (int e = 0; e < p.num_edges(); ++e) {
    if (p.degree(e) > 1) out.push_back(e);
  }
  return out;
}

int midpoint_gap(const PatchComplex& p, int cell, int a, int b) {
  return *skeleton_distance(Point::midpoint(p.edge_at(cell, a)), Point::midpoint(p.edge_at(cell, b)),
                            closure(p, single_cell(cell)));
}

}  // namespace

TEST(Patch, SingleCellShape) {
  PatchComplex p(12, distinct_cells(1), {});
  EXPECT_EQ(p.num_edges(), 12);
  EXPECT_EQ(p.num_vertices(), 12);
  for (int e = 0; e < 12; ++e) EXPECT_EQ(p.degree(e), 1);
}

TEST(Patch, RejectsInconsistentGluing) {
  EXPECT_THROW(PatchComplex(12, distinct_cells(2), {{0, 0, 1, 0, 13, true}}), ComplexError);
  EXPECT_THROW(PatchComplex(12, distinct_cells(2), {{0, 0, 3, 0, 2, true}}), ComplexError);
}

TEST(Patch, RejectsSameOccurrenceTwiceOnAnEdge) {
  // Two copies of one relator glued slot-for-slot would fold the relator onto itself.
  std::vector<CellSpec> cells{{0, 0, false}, {0, 0, false}};
  EXPECT_THROW(PatchComplex(12, cells, {{0, 0, 1, 0, 3, false}}), ComplexError);
}

TEST(Cancellation, Examples) {
  EXPECT_EQ(cancellation(PatchComplex(12, distinct_cells(1), {}), 1), 0);
  EXPECT_EQ(cancellation(pair(12, 5), 3), 5);
  for (int p : {1, 3, 5}) {
    PatchComplex three(12, distinct_cells(3), {{0, 0, 1, 0, p, true}, {0, 0, 2, 0, p, true}});
    EXPECT_EQ(cancellation(three, 7), 2 * p);
  }
}

TEST(Cancellation, AdditiveAcrossCellDisjointPiecesWithoutTripleEdges) {
  for (const FixtureSpec& f : fixture_catalog()) {
    PatchComplex p = build_fixture(f, f.ell);
    auto subsets = connected_subsets(p, 3);
    for (CellSet a : subsets) {
      for (CellSet b : subsets) {
        if (a & b) continue;
        int lhs = cancellation(p, a | b);
        int rhs = cancellation(p, a) + cancellation(p, b) + overlap(p, a, b);
        SubComplex u = closure(p, a | b);
        bool triple = std::any_of(u.edges.begin(), u.edges.end(), [&](int e) {
          int deg = 0;
          for (const SlotRef& s : p.slots_of(e)) deg += has_cell(a | b, s.cell);
          return deg >= 3;
        });
        if (triple) {
          EXPECT_GE(lhs, rhs) << f.name;
        } else {
          EXPECT_EQ(lhs, rhs) << f.name;
        }
      }
    }
  }
}

TEST(Intersection, Examples) {
  PatchComplex apart(12, distinct_cells(2), {});
  EXPECT_TRUE(intersection(closure(apart, 1), closure(apart, 2)).empty());
  for (int k : {1, 4, 6}) {
    PatchComplex p = pair(12, k);
    SubComplex a = intersection(closure(p, 1), closure(p, 2));
    EXPECT_EQ(a.edges.size(), static_cast<std::size_t>(k));
    EXPECT_FALSE(a.has_cells());
    TreeShape t = analyze_tree(a);
    EXPECT_EQ(t.diameter, k);
  }
  PatchComplex ex = build_fixture(find_fixture("exampletile"), 40);
  const FixtureSpec& spec = find_fixture("exampletile");
  CellSet tprime = single_cell(spec.cell("C1")) | single_cell(spec.cell("C2"));
  EXPECT_GE(overlap(ex, single_cell(spec.cell("T")), tprime), 10);
}

TEST(SkeletonDistance, Examples) {
  PatchComplex p(12, distinct_cells(1), {});
  EXPECT_EQ(midpoint_gap(p, 0, 0, 6), 12);
  EXPECT_EQ(midpoint_gap(p, 0, 2, 2), 0);
  EXPECT_EQ(midpoint_gap(p, 0, 1, 4), 6);
  EXPECT_EQ(skeleton_distance(Point::vertex(p.corner(0, 0)), Point::midpoint(p.edge_at(0, 0)), closure(p, 1)), 1);
}

TEST(SkeletonDistance, UnreachableAcrossComponents) {
  PatchComplex p(8, distinct_cells(2), {});
  SubComplex both = closure(p, 3);
  EXPECT_FALSE(skeleton_distance(Point::midpoint(p.edge_at(0, 0)), Point::midpoint(p.edge_at(1, 0)), both));
}

TEST(SkeletonDistance, SymmetricAndTriangleOnFixtures) {
  PatchComplex p = build_fixture(find_fixture("updatedlifeofatile"), 40);
  SkeletonMetric m(closure(p, p.all_cells()));
  std::vector<int> sample;
  for (int e = 0; e < p.num_edges(); e += 7) sample.push_back(e);
  for (int x : sample) {
    for (int y : sample) {
      int dxy = *m.distance(Point::midpoint(x), Point::midpoint(y));
      EXPECT_EQ(dxy, *m.distance(Point::midpoint(y), Point::midpoint(x)));
      for (int z : sample) {
        EXPECT_LE(dxy, *m.distance(Point::midpoint(x), Point::midpoint(z)) +
                           *m.distance(Point::midpoint(z), Point::midpoint(y)));
      }
    }
  }
}

TEST(SkeletonDistance, MatchesPathEnumeration) {
  PatchComplex p = pair(12, 3);
  SubComplex u = closure(p, 3);
  for (int x = 0; x < p.num_edges(); ++x) {
    for (int y = 0; y < p.num_edges(); ++y) {
      EXPECT_EQ(skeleton_distance(Point::midpoint(x), Point::midpoint(y), u),
                oracle_distance(u, Point::midpoint(x), Point::midpoint(y)));
    }
  }
}

TEST(Trees, PathAndTripod) {
  PatchComplex p = pair(24, 12);
  TreeShape path = analyze_tree(edge_subgraph(p, shared_edges(p)));
  EXPECT_EQ(path.size, 12);
  EXPECT_EQ(path.diameter, 12);
  EXPECT_EQ(path.leaves.size(), 2U);
  EXPECT_TRUE(path.branch_points.empty());

  PatchComplex t = tripod(48, 4);
  TreeShape tri = analyze_tree(edge_subgraph(t, shared_edges(t)));
  EXPECT_EQ(tri.size, 12);
  EXPECT_EQ(tri.diameter, 8);
  EXPECT_EQ(tri.leaves.size(), 3U);
  EXPECT_EQ(tri.branch_points.size(), 1U);
  EXPECT_EQ(tri.diameter_paths.size(), 3U);
}

TEST(Trees, CycleIsNotATree) {
  PatchComplex p(8, distinct_cells(1), {});
  EXPECT_THROW(analyze_tree(closure(p, 1)), NotATree);
  std::vector<int> all(8);
  for (int i = 0; i < 8; ++i) all[i] = i;
  EXPECT_THROW(analyze_tree(edge_subgraph(p, all)), NotATree);
}

TEST(Trees, Classification) {
  PatchComplex p = pair(24, 12);
  TreeShape path = analyze_tree(edge_subgraph(p, shared_edges(p)));
  EXPECT_EQ(classify_tree(path, 24).cls, TreeClass::Long);

  PatchComplex t = tripod(48, 4);
  EXPECT_EQ(classify_tree(analyze_tree(edge_subgraph(t, shared_edges(t))), 48).cls, TreeClass::Round);

  // 1/2 (6 + 6) = 6 = diam: equality is Round.
  PatchComplex q = pair(24, 6);
  TreeClassification c = classify_tree(analyze_tree(edge_subgraph(q, shared_edges(q))), 24);
  EXPECT_EQ(c.cls, TreeClass::Round);
  EXPECT_TRUE(c.in_range);

  PatchComplex small = pair(24, 3);
  EXPECT_FALSE(classify_tree(analyze_tree(edge_subgraph(small, shared_edges(small))), 24).in_range);
}

TEST(Trees, AlphaRegionsOfAPath) {
  PatchComplex p = pair(24, 12);
  TreeShape path = analyze_tree(edge_subgraph(p, shared_edges(p)));
  AlphaRegions r = alpha_regions(path, 24);
  EXPECT_EQ(r.plus.size(), 6U);
  EXPECT_EQ(r.minus.size(), 6U);
  std::vector<int> both;
  std::set_intersection(r.plus.begin(), r.plus.end(), r.minus.begin(), r.minus.end(), std::back_inserter(both));
  EXPECT_TRUE(both.empty());
  SubComplex a = path.graph;
  for (int e : r.plus) {
    int d = *skeleton_distance(Point::vertex(r.u_plus), Point::midpoint(e), a);
    EXPECT_LE(d, 12);
  }
}

TEST(Trees, AlphaRegionsRejectRound) {
  PatchComplex t = tripod(48, 4);
  EXPECT_THROW(alpha_regions(analyze_tree(edge_subgraph(t, shared_edges(t))), 48), ComplexError);
}

TEST(Trees, AlphaRegionsIndependentOfDiameterChoice) {
  // Legs 10, 2, 2: two diameters sharing the long leg.
  PatchComplex p(24, distinct_cells(3), {{0, 0, 1, 0, 10, true}, {1, 10, 2, 0, 2, true}, {2, 2, 0, 22, 2, true}});
  TreeShape t = analyze_tree(edge_subgraph(p, shared_edges(p)));
  ASSERT_EQ(t.size, 14);
  ASSERT_EQ(t.diameter, 12);
  ASSERT_EQ(t.diameter_paths.size(), 2U);
  ASSERT_EQ(classify_tree(t, 24).cls, TreeClass::Long);
  AlphaRegions r = alpha_regions(t, 24);
  EXPECT_FALSE(r.plus.empty());
  EXPECT_FALSE(r.minus.empty());
}

TEST(PathSymmetry, Reflection) {
  EXPECT_EQ(path_symmetry(10, 0), 10);
  EXPECT_EQ(path_symmetry(10, 10), 0);
  EXPECT_EQ(path_symmetry(10, 5), 5);
  EXPECT_EQ(path_symmetry(10, 3), 7);
  for (int len = 0; len < 12; ++len) {
    for (int x = 0; x <= len; ++x) EXPECT_EQ(path_symmetry(len, path_symmetry(len, x)), x);
  }
  EXPECT_THROW(path_symmetry(10, 11), std::invalid_argument);
}

TEST(Geodesics, ShortCyclesFlagged) {
  EXPECT_TRUE(check_embedded_geodesics(PatchComplex(12, distinct_cells(1), {})).ok());
  EXPECT_TRUE(check_embedded_geodesics(pair(12, 6)).ok());
  GeodesicReport r = check_embedded_geodesics(pair(12, 7));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.violations.front().length, 2 * 12 - 2 * 7);
  for (const FixtureSpec& f : fixture_catalog()) {
    bool expect_ok = f.name != "pair_over_half" && f.name != "returning_ring";
    EXPECT_EQ(check_embedded_geodesics(build_fixture(f, f.ell)).ok(), expect_ok) << f.name;
  }
}

TEST(Boundedness, KKBounded) {
  PatchComplex one(8, distinct_cells(1), {});
  EXPECT_TRUE(is_kk_bounded(one, 1, 1, 0));
  EXPECT_TRUE(is_kk_bounded(pair(8, 2), 3, 2, 1));

  std::vector<Gluing> gs;
  int slot[6] = {0, 0, 0, 0, 0, 0};
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) {
      gs.push_back({a, slot[a]++ * 2, b, slot[b]++ * 2, 1, true});
    }
  }
  gs.push_back({0, slot[0]++ * 2, 1, slot[1]++ * 2, 1, true});
  PatchComplex many(64, distinct_cells(6), gs);
  EXPECT_EQ(gluing_count(many, many.all_cells()), 16);
  EXPECT_FALSE(is_kk_bounded(many, many.all_cells(), 6, 15));
  EXPECT_TRUE(is_kk_bounded(many, many.all_cells(), 6, 16));
}

TEST(Ipi, Examples) {
  PatchComplex one(20, distinct_cells(1), {});
  EXPECT_TRUE(ipi_check(one, 1, Rational(1, 5), Rational(1, 100)).pass);
  IpiResult r = ipi_check(pair(20, 11), 3, Rational(1, 5), Rational(1, 100));
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.can, 11);
  EXPECT_EQ(r.bound, Rational(42, 5));
  EXPECT_FALSE(check_admissibility(pair(20, 11), Rational(1, 5), Rational(1, 100)).admissible());
}

TEST(CanonicalForm, InvariantUnderRelabelling) {
  PatchComplex a(12, {{0, 0, false}, {1, 0, false}}, {{0, 0, 1, 0, 4, true}});
  PatchComplex b(12, {{1, 0, false}, {0, 0, false}}, {{1, 0, 0, 0, 4, true}});
  EXPECT_EQ(canonical_form(a, a.all_cells()), canonical_form(b, b.all_cells()));
  PatchComplex c(12, {{0, 0, false}, {1, 0, false}}, {{0, 0, 1, 0, 5, true}});
  EXPECT_NE(canonical_form(a, a.all_cells()), canonical_form(c, c.all_cells()));
}

TEST(Dot, MentionsEveryEdge) {
  PatchComplex p = pair(8, 2);
  std::ostringstream os;
  write_dot(p, os);
  std::string s = os.str();
  EXPECT_NE(s.find("graph"), std::string::npos);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n') >= p.num_edges(), true);
}
