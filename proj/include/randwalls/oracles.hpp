#pragma once

#include "randwalls/rng.hpp"
#include "randwalls/tiles.hpp"
#include "randwalls/walls.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace randwalls {

// A tree on vertices 0..vertices-1. Points at half-edge resolution are
// numbered vertices first, then the midpoint of edge i as vertices + i.
struct AbstractTree {
  int vertices = 1;
  std::vector<std::pair<int, int>> edges;

  int points() const { return vertices + static_cast<int>(edges.size()); }
};

// Random tree by sequential attachment: vertex i joins a uniform earlier vertex.
AbstractTree random_tree(int edges, Rng& rng);

// All-pairs half-unit distances between points.
std::vector<std::vector<int>> point_distances(const AbstractTree& t);

// Points along the tree path between two points, inclusive.
std::vector<int> point_path(const AbstractTree& t, int from, int to);

struct TreeSumResult {
  bool covered = false;  // every point within q of alpha
  int lhs = 0;           // max |y,z| + |s(y),z'|, half units
  int rhs = 0;           // |A| + max(|alpha|, q), half units
  bool holds() const { return !covered || lhs <= rhs; }
};

// Literal maximization over every (y, z, z') triple.
TreeSumResult oracle_tree_sum(const AbstractTree& t, const std::vector<int>& alpha, int q_half);

struct TreeSumSweep {
  long trees = 0;
  long instances = 0;
  long violations = 0;
  std::vector<std::string> witnesses;
};

// Random trees with 1..max_edges edges; alpha ranges over sampled paths and q
// over the covering radius of alpha.
TreeSumSweep oracle_tree_sum_sweep(int trees, int max_edges, std::uint64_t seed);

// Exhaustive simple-path search in the 1-skeleton of a subcomplex. Returns the
// length of the shortest path in half units, or nullopt when unreachable or
// when the search exceeds max_steps.
std::optional<int> oracle_distance(const SubComplex& within, Point x, Point y, long max_steps = 5'000'000);

struct SweepConfig {
  TileConfig tiles;
  std::vector<std::string> lemmas;  // empty means all
  bool cross_check_distances = true;
};

struct SweepTotals {
  long patches = 0;
  long inadmissible = 0;
  long collections = 0;
  long walls_checked = 0;
  long wall_failures = 0;
  long wall_failures_in_range = 0;
  long distance_mismatches = 0;
  // Lemma counterexamples found on inadmissible patches, each paired with the
  // patch's recorded violation.
  long explained_counterexamples = 0;
  std::map<std::string, LemmaTally> lemmas;
  std::map<std::string, long> wall_cases;
  std::vector<std::string> notes;

  bool clean() const;
};

// Runs the tile construction, wall construction and every lemma check over
// each patch, accumulating tallies. Inadmissible patches are counted and
// skipped.
void oracle_lemma_sweep(const PatchComplex& p, const SweepConfig& cfg, SweepTotals& totals);

std::string sweep_report_json(const SweepTotals& totals);
std::string sweep_summary_table(const SweepTotals& totals);

// Lemma ids accepted by the sweep and the CLI filter.
const std::vector<std::string>& lemma_ids();

}  // namespace randwalls
