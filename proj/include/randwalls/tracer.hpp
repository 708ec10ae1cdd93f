#pragma once

#include "randwalls/complex.hpp"
#include "randwalls/rational.hpp"
#include "randwalls/tiles.hpp"
#include "randwalls/walls.hpp"

#include <map>
#include <string>
#include <vector>

namespace randwalls {

// A connected component of the wall graph of the whole patch.
struct WallTrace {
  int id = 0;
  std::vector<int> midpoints;  // sorted edge ids
  std::vector<WallEdge> edges;
  std::vector<int> cells;  // cells hosting a wall edge, in the order the edges are listed
};

// Components ordered by smallest midpoint.
std::vector<WallTrace> trace_walls(const PatchComplex& p, const WallState& state);

struct EmbeddingReport {
  bool embedded = true;
  std::string problem;  // "cycle" or "cell-revisited"
  std::vector<int> witness;
};

EmbeddingReport check_embedded(const PatchComplex& p, const WallTrace& w);

std::vector<WallPath> trace_paths(const PatchComplex& p, const WallTrace& w);

struct Factor {
  int first = 0;  // index into path.midpoints
  int last = 0;
  int tile = -1;
  CellSet cells = 0;  // cells crossed by this factor
};

struct Decomposition {
  WallPath path;
  std::vector<Factor> factors;    // minimal length
  std::vector<Factor> fractured;  // pairwise cell-disjoint tiles, each factor balanced
  bool reduced = false;
  bool fractured_ok = false;
};

// Throws ComplexError when some edge of the path lies in no tile.
Decomposition decompose(const TileCollection& tc, const WallPath& path, const WallState& state);

struct ReturningHit {
  int wall = -1;
  WallPath path;
  int length = 0;
  int t0 = -1;
  // Claim-level arithmetic on the witness: union size, and the distance
  // between endpoints inside T0 against ell/2.
  int union_cells = 0;
  int endpoint_distance = 0;  // half units
  bool claims_hold = false;
};

struct ReturningReport {
  long segments = 0;
  std::vector<ReturningHit> hits;
};

// Scans every path of every wall whose minimal decomposition has length
// below n_ret.
ReturningReport detect_returning(const TileCollection& tc, const std::vector<WallTrace>& traces,
                                 const WallState& state, int n_ret);

struct WallspaceWall {
  int id = 0;
  std::vector<int> midpoints;
  std::map<int, int> sides;  // vertex -> 0 or 1
  bool separating = false;   // at patch scale
  friend bool operator==(const WallspaceWall&, const WallspaceWall&) = default;
};

struct Wallspace {
  std::vector<WallspaceWall> walls;
  Rational lambda;
  int n_ret = 0;
  friend bool operator==(const Wallspace&, const Wallspace&) = default;
};

// Throws ComplexError if some wall is not embedded.
Wallspace export_wallspace(const PatchComplex& p, const std::vector<WallTrace>& traces, const TileConfig& cfg);
std::string wallspace_json(const Wallspace& w);
Wallspace parse_wallspace(const std::string& json_text);

std::vector<WallSegment> wall_segments(const PatchComplex& p, const std::vector<WallTrace>& traces);

}  // namespace randwalls
