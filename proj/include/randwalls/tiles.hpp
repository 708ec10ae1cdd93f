#pragma once

#include "randwalls/complex.hpp"
#include "randwalls/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace randwalls {

class WallState;

struct TileConfig {
  Rational d{3, 14};
  Rational eps{1, 100};
  int max_tile_size = 5;
  int max_potile_size = 6;
  int max_patch_cells = 64;
  // Step 1 and Step 3 require |T ∩ T'| > ell/4 instead of >= ell/4.
  bool core_strict = false;
  // Step-2 shard rule keeps S only when Bal(S) < Bal(S ∪ S'), not <=.
  bool shard_strict = false;
  // Off reproduces plain antipodal concatenation.
  bool bending = true;
  int c = 1;
  std::optional<int> n_ret;

  Rational lambda() const;  // 1 / (1 - 4d)
  int returning_cap() const;  // n_ret, or ceil((2c+1) lambda)
  // d <= N / (4(N+1)) for N = max_potile_size.
  bool density_fits() const;
};

enum class TileClass { One, Core, NonCore };
enum class Provenance { Start, Step1, Step2, Step3 };
enum class Age { Older, Younger, Incomparable };

const char* to_string(TileClass c);
const char* to_string(Provenance p);

constexpr int kStartBirth = 1 << 30;

struct Tile {
  int id = 0;
  CellSet cells = 0;
  TileClass cls = TileClass::One;
  Provenance made_by = Provenance::Start;
  int birth = kStartBirth;  // step index; starting tiles are youngest
  int death = -1;           // step index at which it left the collection
  // Step 1: (older, younger). Step 2: (S, S'). Step 3: (R, R') with R'
  // holding the Step-2 union.
  int parent_a = -1;
  int parent_b = -1;
  int can = 0;

  bool alive() const { return death < 0; }
};

struct StepRecord {
  int index = 0;  // 1-based position in the log, also the birth of the result
  int step = 1;
  std::vector<int> tiles;
  int result = -1;
  int union_size = 0;
  int intersection_size = 0;
  int can = 0;
  std::string tie_break;
  std::string tree;  // Step 1: "long", "round" or "not-a-tree"
  bool beyond_verified = false;
  bool orbit_conflict = false;
};

// Data kept from each Step-1 gluing for the lemma suites.
struct GluingInfo {
  int step_index = 0;
  int older = -1;
  int younger = -1;
  int result = -1;
  std::vector<int> intersection;  // edges
  bool is_tree = false;
  TreeClass cls = TreeClass::Round;
  std::optional<AlphaRegions> alpha;
  // Cell matchings of the younger tile before bending, and of the whole
  // union right after the gluing.
  std::map<int, std::vector<int>> before;
  std::map<int, std::vector<int>> after;
  struct Arc {
    int cell;
    char side;
    int start;
    int length;
  };
  std::vector<Arc> arcs;
  int arcs_split = 0;  // cells whose alpha region meets the boundary in several arcs
};

class TileCollection {
 public:
  TileCollection(const PatchComplex& p, const TileConfig& cfg);

  const PatchComplex& patch() const { return *patch_; }
  const TileConfig& config() const { return cfg_; }
  const std::vector<Tile>& history() const { return tiles_; }
  const Tile& tile(int id) const { return tiles_.at(id); }
  Tile& tile(int id) { return tiles_.at(id); }
  std::vector<int> alive() const;
  const std::vector<StepRecord>& log() const { return log_; }
  const std::vector<GluingInfo>& gluings() const { return gluings_; }
  std::vector<std::string>& warnings() { return warnings_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  int add_tile(Tile t);
  void add_record(StepRecord r) { log_.push_back(std::move(r)); }
  void add_gluing(GluingInfo g) { gluings_.push_back(std::move(g)); }
  std::optional<int> find_alive(CellSet cells) const;
  int balance(int id) const;  // half-edge units

 private:
  const PatchComplex* patch_;
  TileConfig cfg_;
  std::vector<Tile> tiles_;
  std::vector<StepRecord> log_;
  std::vector<GluingInfo> gluings_;
  std::vector<std::string> warnings_;
};

// Bal = ell/4 (|T|+1) - Can(T), returned in half-edge units.
int balance(const PatchComplex& p, CellSet cells);
// Throws ComplexError for disconnected or non-closed input.
bool is_potile(const SubComplex& y);
bool is_potile(const PatchComplex& p, CellSet cells);

bool orbit_isomorphic(const PatchComplex& p, CellSet a, CellSet b);

TileCollection build_tile_collection(const PatchComplex& p, const TileConfig& cfg, WallState& walls);

Age age_compare(const TileCollection& tc, int a, int b);
// Age with the starting-tile tie broken by id, lower id older.
bool is_older(const TileCollection& tc, int a, int b);

// First 2-tile glued inside a Step-1 tile.
std::optional<int> first_pair(const TileCollection& tc, int id);

struct CollectionViolation {
  std::string item;
  std::vector<int> tiles;
  int step = 0;  // log index that produced the offending tile, 0 if none
  std::string message;
};

struct CollectionReport {
  std::vector<CollectionViolation> violations;
  // Findings that the construction produces by design, kept apart from
  // violations (single cells moved to NonCore by Step 2).
  std::vector<CollectionViolation> notes;
};

CollectionReport check_collection(const TileCollection& tc);

}  // namespace randwalls
