#pragma once

#include "randwalls/rational.hpp"

#include <bit>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace randwalls {

// Bit i set means cell i is included. Patches are capped at 64 cells.
using CellSet = std::uint64_t;

inline int cell_count(CellSet s) { return std::popcount(s); }
inline bool has_cell(CellSet s, int c) { return (s >> c) & 1U; }
inline CellSet single_cell(int c) { return CellSet{1} << c; }
std::vector<int> cells_of(CellSet s);

class ComplexError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One directed edge of the presentation complex: a generator sub-edge and a sign.
struct Letter {
  int edge = 0;
  int dir = 1;
  friend bool operator==(const Letter&, const Letter&) = default;
};
inline Letter inverse(Letter l) { return {l.edge, -l.dir}; }

struct CellSpec {
  int relator = 0;
  int rotation = 0;
  bool inverted = false;
};

// Slot start_a+i of cell_a is identified with slot start_b+i of cell_b, or with
// slot start_b+length-1-i (traversed backwards) when reversed.
struct Gluing {
  int cell_a = 0;
  int start_a = 0;
  int cell_b = 0;
  int start_b = 0;
  int length = 0;
  bool reversed = false;
};

struct SlotRef {
  int cell;
  int slot;
};

using RelatorLabels = std::vector<std::vector<Letter>>;

class PatchComplex {
 public:
  // Throws ComplexError when the gluings are inconsistent or the result is not
  // fulfilled (two slots of one edge carrying the same relator occurrence, or
  // incompatible letters when labels are supplied).
  PatchComplex(int ell, std::vector<CellSpec> cells, std::vector<Gluing> gluings,
               const RelatorLabels* labels = nullptr);

  int ell() const { return ell_; }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  int num_edges() const { return static_cast<int>(edge_slots_.size()); }
  int num_vertices() const { return num_vertices_; }
  CellSet all_cells() const;
  bool labeled() const { return labeled_; }

  const std::vector<CellSpec>& cells() const { return cells_; }
  const std::vector<Gluing>& gluings() const { return gluings_; }

  int edge_at(int cell, int slot) const { return slot_edge_[index(cell, slot)]; }
  // +1 when the slot runs from tail(e) to head(e).
  int slot_orientation(int cell, int slot) const { return slot_sign_[index(cell, slot)]; }
  // Vertex at the start of the given slot.
  int corner(int cell, int k) const { return corner_vertex_[index(cell, k)]; }
  int tail(int e) const { return edge_ends_[e].first; }
  int head(int e) const { return edge_ends_[e].second; }
  const std::vector<SlotRef>& slots_of(int e) const { return edge_slots_[e]; }
  int degree(int e) const { return static_cast<int>(edge_slots_[e].size()); }
  // Position on the relator polygon covered by this slot.
  int occurrence(int cell, int slot) const;
  // Position on the relator polygon of the corner at the start of this slot.
  int corner_occurrence(int cell, int k) const;

 private:
  std::size_t index(int cell, int slot) const {
    return static_cast<std::size_t>(cell) * ell_ + ((slot % ell_) + ell_) % ell_;
  }

  int ell_;
  std::vector<CellSpec> cells_;
  std::vector<Gluing> gluings_;
  bool labeled_ = false;
  int num_vertices_ = 0;
  std::vector<int> slot_edge_;
  std::vector<int> slot_sign_;
  std::vector<int> corner_vertex_;
  std::vector<std::vector<SlotRef>> edge_slots_;
  std::vector<std::pair<int, int>> edge_ends_;
};

// Edge and vertex lists are sorted. A subcomplex with cells is the closure of
// those cells; one without cells is a subgraph of the 1-skeleton.
struct SubComplex {
  const PatchComplex* patch = nullptr;
  CellSet cells = 0;
  std::vector<int> edges;
  std::vector<int> vertices;

  bool has_cells() const { return cells != 0; }
  bool empty() const { return vertices.empty(); }
  bool contains_edge(int e) const;
  bool contains_vertex(int v) const;
};

SubComplex closure(const PatchComplex& p, CellSet cells);
// Subgraph spanned by the given edges and their endpoints.
SubComplex edge_subgraph(const PatchComplex& p, std::vector<int> edges);
SubComplex intersection(const SubComplex& a, const SubComplex& b);
bool is_connected(const SubComplex& y);

int cancellation(const SubComplex& y);
int cancellation(const PatchComplex& p, CellSet cells);
// Number of shared edges between the closures of two cell sets.
int overlap(const PatchComplex& p, CellSet a, CellSet b);

struct Point {
  enum class Kind { Vertex, Midpoint };
  Kind kind = Kind::Vertex;
  int id = 0;

  static Point vertex(int v) { return {Kind::Vertex, v}; }
  static Point midpoint(int e) { return {Kind::Midpoint, e}; }
  friend bool operator==(const Point&, const Point&) = default;
};

// Shortest paths in the 1-skeleton of a subcomplex, in half-edge units.
// Breadth-first searches are cached per source point.
class SkeletonMetric {
 public:
  explicit SkeletonMetric(const SubComplex& within);

  bool contains(Point x) const;
  std::optional<int> distance(Point x, Point y) const;
  const SubComplex& within() const { return within_; }

 private:
  int node(Point x) const;
  const std::vector<int>& from(int source) const;

  SubComplex within_;
  int num_vertices_;
  std::vector<char> present_;
  std::vector<std::vector<int>> adj_;
  mutable std::unordered_map<int, std::vector<int>> cache_;
};

std::optional<int> skeleton_distance(Point x, Point y, const SubComplex& within);

class NotATree : public ComplexError {
 public:
  using ComplexError::ComplexError;
};

struct TreeShape {
  SubComplex graph;
  int size = 0;      // edges
  int diameter = 0;  // edges
  std::vector<int> leaves;
  std::vector<int> branch_points;
  // Vertex sequences, each oriented from the smaller endpoint id, sorted.
  std::vector<std::vector<int>> diameter_paths;
};

TreeShape analyze_tree(const SubComplex& a);

enum class TreeClass { Long, Round };

struct TreeClassification {
  TreeClass cls = TreeClass::Round;
  bool in_range = true;  // ell/4 <= |A| <= ell/2
};

TreeClassification classify_tree(const TreeShape& a, int ell);

struct AlphaRegions {
  int u_minus = -1;
  int u_plus = -1;
  std::vector<int> plus;   // edges at distance >= ell/4 from u_minus
  std::vector<int> minus;  // edges at distance >= ell/4 from u_plus
};

// Throws ComplexError for Round input, std::logic_error if two diameters
// disagree.
AlphaRegions alpha_regions(const TreeShape& a, int ell);

// Reflection of a path of the given half-unit length.
int path_symmetry(int length_half, int pos_half);

struct CycleWitness {
  std::vector<int> edges;  // sorted
  int length = 0;
};

struct GeodesicReport {
  std::vector<CycleWitness> violations;
  bool ok() const { return violations.empty(); }
};

// Shortest embedded cycle through each edge, reported when shorter than ell.
GeodesicReport check_embedded_geodesics(const PatchComplex& p);

// Connected cell subsets (cells touching at a vertex are adjacent), up to a
// size cap, each reported once.
std::vector<CellSet> connected_subsets(const PatchComplex& p, int max_size);

int gluing_count(const PatchComplex& p, CellSet cells);
bool is_kk_bounded(const PatchComplex& p, CellSet cells, int k, int k_prime);

struct IpiResult {
  bool pass = true;
  int can = 0;
  Rational bound;
};

IpiResult ipi_check(const PatchComplex& p, CellSet cells, const Rational& d, const Rational& eps);

struct IpiViolation {
  CellSet cells = 0;
  int can = 0;
  Rational bound;
  // "subcomplex", or "folded" for two copies of one relator sharing edges.
  std::string kind;
};

struct AdmissibilityReport {
  std::vector<IpiViolation> ipi;
  GeodesicReport geodesics;
  bool admissible() const { return ipi.empty() && geodesics.ok(); }
};

AdmissibilityReport check_admissibility(const PatchComplex& p, const Rational& d, const Rational& eps);

// Label-aware canonical form of the closure of a cell set; equal strings iff
// the closures are isomorphic by a map preserving relator occurrences.
std::string canonical_form(const PatchComplex& p, CellSet cells);

struct WallSegment {
  int from_edge;
  int to_edge;
  int wall;
};

void write_dot(const PatchComplex& p, std::ostream& out, const std::vector<WallSegment>* walls = nullptr);

}  // namespace randwalls
