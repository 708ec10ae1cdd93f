#pragma once

#include "randwalls/complex.hpp"
#include "randwalls/tiles.hpp"

#include <string>
#include <vector>

namespace randwalls {

// A wall edge joins the midpoints of two slots of one cell.
struct WallEdge {
  int cell;
  int slot_a;
  int slot_b;
};

struct BendRecord {
  int gluing_step;
  int cell;
  char alpha_side;  // '+' or '-'
  int from_midpoint;
  int to_midpoint;
  int from_slot;
  int to_slot;
};

std::vector<WallEdge> antipodal_walls(int cell, int ell);

// Per-cell perfect matchings on boundary slots. Tile-walls are the connected
// components of these matchings restricted to a tile's cells.
class WallState {
 public:
  explicit WallState(const PatchComplex& p);

  const PatchComplex& patch() const { return *patch_; }
  int partner(int cell, int slot) const { return match_[cell][slot]; }
  const std::vector<int>& matching(int cell) const { return match_[cell]; }
  void set_matching(int cell, std::vector<int> m);
  std::vector<WallEdge> edges(CellSet cells) const;

  const std::vector<BendRecord>& bends() const { return bends_; }
  void record(const BendRecord& b) { bends_.push_back(b); }

 private:
  const PatchComplex* patch_;
  std::vector<std::vector<int>> match_;
  std::vector<BendRecord> bends_;
};

struct TileWall {
  std::vector<int> midpoints;  // edge ids, sorted
  std::vector<WallEdge> edges;
};

std::vector<TileWall> tile_walls(const PatchComplex& p, CellSet cells, const WallState& state);

struct WallPath {
  std::vector<int> midpoints;  // x = front, x' = back
  std::vector<int> cells;      // cell of each wall edge
  CellSet cell_set = 0;
};

// Every path between two distinct vertices of a wall (shortest one when the
// wall is not a tree).
std::vector<WallPath> wall_paths(const PatchComplex& p, const TileWall& w);

struct WallProblem {
  std::string kind;  // "cell-vertices", "immersion", "cycle"
  int cell = -1;
  std::vector<int> midpoints;
};

std::vector<WallProblem> check_tile_walls(const PatchComplex& p, CellSet cells, const WallState& state);

// Step-1 bending: applies the alpha-region reflections to the younger tile's
// cells, records the gluing and returns it. Steps 2 and 3 only concatenate.
GluingInfo bend_and_glue(TileCollection& tc, int older, int younger, WallState& state, int step_index);

int shard_of(const TileCollection& tc, int tile, CellSet path_cells);

enum class WallCase { C1, C2a, C2b, C3a, C3b, C4a, C4b, Other };
const char* to_string(WallCase c);

WallCase classify_wall_case(const PatchComplex& p, const WallPath& path, CellSet older, CellSet younger,
                            const GluingInfo& g);

struct BalanceFailure {
  int tile = -1;
  int x = -1;
  int x_prime = -1;
  int distance = 0;  // half-edge units
  int bal = 0;       // half-edge units
  int shard = -1;
  std::string wall_case;
};

struct BalanceReport {
  int paths = 0;
  std::vector<BalanceFailure> failures;
  std::vector<WallProblem> problems;
  bool ok() const { return failures.empty() && problems.empty(); }
};

BalanceReport verify_balanced(const TileCollection& tc, int tile, const WallState& state);

// Tiles whose every Step-1 ancestor gluing had a younger partner of at most
// three cells.
bool within_verified_range(const TileCollection& tc, int tile);

struct LemmaTally {
  LemmaTally() = default;
  explicit LemmaTally(std::string id) : lemma(std::move(id)) {}

  std::string lemma;
  long checked = 0;
  long skipped = 0;
  long violated = 0;
  std::vector<std::string> witnesses;

  void violation(std::string w);
};

// Checks attached to one Step-1 gluing, one tally per lemma id:
//   shard-union       |x,x'| >= Bal(T∪T') + |T∩T'| - ℓ/4 on constituent walls
//   reflected-pair    endpoints joined through a bent midpoint
//   single-crossing   walls crossing T∩T' once near a central midpoint
//   round-trees       all walls of T∪T' balanced after a round gluing
//   core-pair-balance Bal(T∪T') <= 5ℓ/4 - 2Can(D') - |T∩T'|
//   small-intersections |T∩C| < ℓ/4 for cells C of a younger core tile
//   tree-sum          |y,z| + |s(y),z'| <= |A| + max(|α|, q) on T∩T'
std::vector<LemmaTally> lemma_suite(const TileCollection& tc, const GluingInfo& g, const WallState& state);

}  // namespace randwalls
