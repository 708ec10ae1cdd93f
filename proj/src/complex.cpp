#include "randwalls/complex.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace randwalls {

std::vector<int> cells_of(CellSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

namespace {

// Union-find carrying the parity of each element relative to its root.
class ParityUnion {
 public:
  explicit ParityUnion(std::size_t n) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    int par = 0;
    std::size_t r = x;
    while (parent_[r] != r) {
      par ^= parity_[r];
      r = parent_[r];
    }
    // Path compression, keeping parities relative to the root.
    int acc = par;
    while (parent_[x] != x) {
      std::size_t next = parent_[x];
      int p = parity_[x];
      parent_[x] = r;
      parity_[x] = acc;
      acc ^= p;
      x = next;
    }
    return {r, par};
  }

  // Returns false on a parity conflict.
  bool unite(std::size_t a, std::size_t b, int parity) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == parity;
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ parity;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
};

int mod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

PatchComplex::PatchComplex(int ell, std::vector<CellSpec> cells, std::vector<Gluing> gluings,
                           const RelatorLabels* labels)
    : ell_(ell), cells_(std::move(cells)), gluings_(std::move(gluings)) {
  if (ell_ < 4 || ell_ % 4 != 0) throw ComplexError("ell must be a positive multiple of 4");
  if (cells_.empty()) throw ComplexError("patch has no cells");
  if (cells_.size() > 64) throw ComplexError("patch exceeds 64 cells");
  for (const CellSpec& c : cells_) {
    if (c.relator < 0) throw ComplexError("negative relator index");
    if (c.rotation < 0 || c.rotation >= ell_) throw ComplexError("rotation out of range");
    if (labels && (c.relator >= static_cast<int>(labels->size()) ||
                   static_cast<int>((*labels)[c.relator].size()) != ell_)) {
      throw ComplexError("relator label missing or of wrong length");
    }
  }
  labeled_ = labels != nullptr;

  const std::size_t n = cells_.size() * ell_;
  ParityUnion slots(n);
  ParityUnion corners(n);
  for (const Gluing& g : gluings_) {
    if (g.cell_a < 0 || g.cell_b < 0 || g.cell_a >= num_cells() || g.cell_b >= num_cells()) {
      throw ComplexError("gluing refers to unknown cell");
    }
    if (g.length < 1 || g.length > ell_) throw ComplexError("gluing length out of range");
    if (g.start_a < 0 || g.start_a >= ell_ || g.start_b < 0 || g.start_b >= ell_) {
      throw ComplexError("gluing start out of range");
    }
    for (int i = 0; i < g.length; ++i) {
      int b = g.reversed ? g.start_b + g.length - 1 - i : g.start_b + i;
      if (!slots.unite(index(g.cell_a, g.start_a + i), index(g.cell_b, b), g.reversed ? 1 : 0)) {
        throw ComplexError("gluing identifies an edge with its own reverse");
      }
    }
    for (int i = 0; i <= g.length; ++i) {
      int b = g.reversed ? g.start_b + g.length - i : g.start_b + i;
      corners.unite(index(g.cell_a, g.start_a + i), index(g.cell_b, b), 0);
    }
  }

  slot_edge_.assign(n, -1);
  slot_sign_.assign(n, 1);
  corner_vertex_.assign(n, -1);
  std::unordered_map<std::size_t, int> edge_of_root;
  std::vector<int> root_parity;
  for (std::size_t s = 0; s < n; ++s) {
    auto [root, parity] = slots.find(s);
    auto [it, fresh] = edge_of_root.try_emplace(root, static_cast<int>(edge_slots_.size()));
    if (fresh) {
      edge_slots_.emplace_back();
      root_parity.push_back(parity);
    }
    int e = it->second;
    slot_edge_[s] = e;
    slot_sign_[s] = (parity ^ root_parity[e]) ? -1 : 1;
    edge_slots_[e].push_back({static_cast<int>(s / ell_), static_cast<int>(s % ell_)});
  }
  std::unordered_map<std::size_t, int> vertex_of_root;
  for (std::size_t s = 0; s < n; ++s) {
    auto [root, parity] = corners.find(s);
    auto [it, fresh] = vertex_of_root.try_emplace(root, num_vertices_);
    if (fresh) ++num_vertices_;
    corner_vertex_[s] = it->second;
  }

  edge_ends_.resize(edge_slots_.size());
  for (std::size_t e = 0; e < edge_slots_.size(); ++e) {
    bool first = true;
    for (const SlotRef& r : edge_slots_[e]) {
      int a = corner(r.cell, r.slot);
      int b = corner(r.cell, r.slot + 1);
      std::pair<int, int> ends = slot_orientation(r.cell, r.slot) > 0 ? std::pair{a, b} : std::pair{b, a};
      if (first) {
        edge_ends_[e] = ends;
        first = false;
      } else if (edge_ends_[e] != ends) {
        throw ComplexError("inconsistent vertex identification along edge " + std::to_string(e));
      }
    }
    std::set<std::pair<int, int>> seen;
    std::optional<Letter> letter;
    for (const SlotRef& r : edge_slots_[e]) {
      const CellSpec& c = cells_[r.cell];
      int t = occurrence(r.cell, r.slot);
      if (!seen.emplace(c.relator, t).second) {
        throw ComplexError("edge " + std::to_string(e) + " carries one relator occurrence twice");
      }
      if (labels) {
        Letter l = (*labels)[c.relator][t];
        if (c.inverted) l = inverse(l);
        if (slot_orientation(r.cell, r.slot) < 0) l = inverse(l);
        if (letter && !(*letter == l)) {
          throw ComplexError("incompatible labels on edge " + std::to_string(e));
        }
        letter = l;
      }
    }
  }
}

CellSet PatchComplex::all_cells() const {
  return num_cells() == 64 ? ~CellSet{0} : (CellSet{1} << num_cells()) - 1;
}

int PatchComplex::occurrence(int cell, int slot) const {
  const CellSpec& c = cells_[cell];
  return c.inverted ? mod(c.rotation - slot - 1, ell_) : mod(c.rotation + slot, ell_);
}

int PatchComplex::corner_occurrence(int cell, int k) const {
  const CellSpec& c = cells_[cell];
  return c.inverted ? mod(c.rotation - k, ell_) : mod(c.rotation + k, ell_);
}

bool SubComplex::contains_edge(int e) const { return std::binary_search(edges.begin(), edges.end(), e); }

bool SubComplex::contains_vertex(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

namespace {

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SubComplex closure(const PatchComplex& p, CellSet cells) {
  SubComplex y;
  y.patch = &p;
  y.cells = cells;
  for (int c : cells_of(cells)) {
    if (c >= p.num_cells()) throw ComplexError("cell set refers to unknown cell");
    for (int k = 0; k < p.ell(); ++k) {
      y.edges.push_back(p.edge_at(c, k));
      y.vertices.push_back(p.corner(c, k));
    }
  }
  sort_unique(y.edges);
  sort_unique(y.vertices);
  return y;
}

SubComplex edge_subgraph(const PatchComplex& p, std::vector<int> edges) {
  SubComplex y;
  y.patch = &p;
  sort_unique(edges);
  for (int e : edges) {
    y.vertices.push_back(p.tail(e));
    y.vertices.push_back(p.head(e));
  }
  y.edges = std::move(edges);
  sort_unique(y.vertices);
  return y;
}

SubComplex intersection(const SubComplex& a, const SubComplex& b) {
  if (a.patch != b.patch) throw ComplexError("subcomplexes of different patches");
  SubComplex y;
  y.patch = a.patch;
  y.cells = a.cells & b.cells;
  std::set_intersection(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                        std::back_inserter(y.edges));
  std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                        std::back_inserter(y.vertices));
  return y;
}

bool is_connected(const SubComplex& y) {
  if (y.vertices.empty()) return false;
  const PatchComplex& p = *y.patch;
  std::unordered_map<int, std::vector<int>> adj;
  for (int e : y.edges) {
    adj[p.tail(e)].push_back(p.head(e));
    adj[p.head(e)].push_back(p.tail(e));
  }
  std::unordered_set<int> seen{y.vertices.front()};
  std::vector<int> stack{y.vertices.front()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (seen.insert(w).second) stack.push_back(w);
    }
  }
  return seen.size() == y.vertices.size();
}

int cancellation(const PatchComplex& p, CellSet cells) {
  std::unordered_map<int, int> degree;
  for (int c : cells_of(cells)) {
    for (int k = 0; k < p.ell(); ++k) ++degree[p.edge_at(c, k)];
  }
  int can = 0;
  for (const auto& [e, deg] : degree) can += deg - 1;
  return can;
}

int cancellation(const SubComplex& y) {
  if (!y.has_cells()) throw ComplexError("cancellation needs a 2-dimensional subcomplex");
  SubComplex c = closure(*y.patch, y.cells);
  if (c.edges != y.edges || c.vertices != y.vertices) {
    throw ComplexError("subcomplex is not the closure of its cells");
  }
  return cancellation(*y.patch, y.cells);
}

int overlap(const PatchComplex& p, CellSet a, CellSet b) {
  return static_cast<int>(intersection(closure(p, a), closure(p, b)).edges.size());
}

SkeletonMetric::SkeletonMetric(const SubComplex& within)
    : within_(within), num_vertices_(within.patch->num_vertices()) {
  const PatchComplex& p = *within.patch;
  std::size_t nodes = static_cast<std::size_t>(num_vertices_ + p.num_edges());
  present_.assign(nodes, 0);
  adj_.assign(nodes, {});
  for (int v : within.vertices) present_[v] = 1;
  for (int e : within.edges) {
    int m = num_vertices_ + e;
    present_[m] = 1;
    for (int v : {p.tail(e), p.head(e)}) {
      adj_[m].push_back(v);
      adj_[v].push_back(m);
    }
  }
}

int SkeletonMetric::node(Point x) const {
  return x.kind == Point::Kind::Vertex ? x.id : num_vertices_ + x.id;
}

bool SkeletonMetric::contains(Point x) const {
  int n = node(x);
  return n >= 0 && n < static_cast<int>(present_.size()) && x.id >= 0 && present_[n];
}

const std::vector<int>& SkeletonMetric::from(int source) const {
  auto it = cache_.find(source);
  if (it != cache_.end()) return it->second;
  std::vector<int> dist(present_.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return cache_.emplace(source, std::move(dist)).first->second;
}

std::optional<int> SkeletonMetric::distance(Point x, Point y) const {
  if (!contains(x) || !contains(y)) throw std::invalid_argument("point outside subcomplex");
  int d = from(node(x))[node(y)];
  if (d < 0) return std::nullopt;
  return d;
}

std::optional<int> skeleton_distance(Point x, Point y, const SubComplex& within) {
  return SkeletonMetric(within).distance(x, y);
}

namespace {

std::unordered_map<int, std::vector<int>> tree_adjacency(const SubComplex& a) {
  std::unordered_map<int, std::vector<int>> adj;
  for (int v : a.vertices) adj[v];
  for (int e : a.edges) {
    adj[a.patch->tail(e)].push_back(a.patch->head(e));
    adj[a.patch->head(e)].push_back(a.patch->tail(e));
  }
  return adj;
}

std::unordered_map<int, int> bfs(const std::unordered_map<int, std::vector<int>>& adj, int s,
                                 std::unordered_map<int, int>* parent = nullptr) {
  std::unordered_map<int, int> dist{{s, 0}};
  std::deque<int> queue{s};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj.at(v)) {
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        if (parent) (*parent)[w] = v;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

}  // namespace

TreeShape analyze_tree(const SubComplex& a) {
  if (a.vertices.empty()) throw NotATree("empty subcomplex");
  if (!is_connected(a)) throw NotATree("subcomplex is disconnected");
  if (a.edges.size() + 1 != a.vertices.size()) throw NotATree("subcomplex contains a cycle");
  TreeShape t;
  t.graph = a;
  t.size = static_cast<int>(a.edges.size());
  auto adj = tree_adjacency(a);
  for (int v : a.vertices) {
    std::size_t deg = adj[v].size();
    if (deg <= 1) t.leaves.push_back(v);
    if (deg >= 3) t.branch_points.push_back(v);
  }
  for (std::size_t i = 0; i < t.leaves.size(); ++i) {
    std::unordered_map<int, int> parent;
    auto dist = bfs(adj, t.leaves[i], &parent);
    for (std::size_t j = i + 1; j < t.leaves.size(); ++j) {
      int d = dist[t.leaves[j]];
      if (d < t.diameter) continue;
      if (d > t.diameter) {
        t.diameter = d;
        t.diameter_paths.clear();
      }
      std::vector<int> path{t.leaves[j]};
      while (path.back() != t.leaves[i]) path.push_back(parent[path.back()]);
      std::reverse(path.begin(), path.end());
      t.diameter_paths.push_back(std::move(path));
    }
  }
  if (t.diameter_paths.empty()) t.diameter_paths.push_back({a.vertices.front()});
  std::sort(t.diameter_paths.begin(), t.diameter_paths.end());
  return t;
}

TreeClassification classify_tree(const TreeShape& a, int ell) {
  TreeClassification c;
  // 1/2 (|A| + ell/4) < diam, scaled by 8.
  c.cls = 4 * a.size + ell < 8 * a.diameter ? TreeClass::Long : TreeClass::Round;
  c.in_range = 4 * a.size >= ell && 2 * a.size <= ell;
  return c;
}

namespace {

std::vector<int> far_edges(const TreeShape& a, int u, int ell) {
  auto adj = tree_adjacency(a.graph);
  auto dist = bfs(adj, u);
  const PatchComplex& p = *a.graph.patch;
  std::vector<int> out;
  for (int e : a.graph.edges) {
    if (4 * std::min(dist[p.tail(e)], dist[p.head(e)]) >= ell) out.push_back(e);
  }
  return out;
}

}  // namespace

AlphaRegions alpha_regions(const TreeShape& a, int ell) {
  if (classify_tree(a, ell).cls != TreeClass::Long) throw ComplexError("alpha regions need a long tree");
  AlphaRegions r;
  r.u_minus = a.diameter_paths.front().front();
  r.u_plus = a.diameter_paths.front().back();
  r.plus = far_edges(a, r.u_minus, ell);
  r.minus = far_edges(a, r.u_plus, ell);
  for (const auto& path : a.diameter_paths) {
    auto x = far_edges(a, path.front(), ell);
    auto y = far_edges(a, path.back(), ell);
    bool same = (x == r.plus && y == r.minus) || (x == r.minus && y == r.plus);
    if (!same) throw std::logic_error("alpha regions depend on the diameter");
  }
  return r;
}

int path_symmetry(int length_half, int pos_half) {
  if (pos_half < 0 || pos_half > length_half) throw std::invalid_argument("point off path");
  return length_half - pos_half;
}

GeodesicReport check_embedded_geodesics(const PatchComplex& p) {
  std::vector<std::vector<std::pair<int, int>>> adj(p.num_vertices());
  for (int e = 0; e < p.num_edges(); ++e) {
    adj[p.tail(e)].push_back({p.head(e), e});
    if (p.tail(e) != p.head(e)) adj[p.head(e)].push_back({p.tail(e), e});
  }
  std::set<std::vector<int>> seen;
  GeodesicReport report;
  std::vector<int> dist(p.num_vertices());
  std::vector<int> via(p.num_vertices());
  for (int e = 0; e < p.num_edges(); ++e) {
    int u = p.tail(e);
    int v = p.head(e);
    std::vector<int> cycle;
    if (u == v) {
      cycle = {e};
    } else {
      std::fill(dist.begin(), dist.end(), -1);
      dist[u] = 0;
      std::deque<int> queue{u};
      while (!queue.empty() && dist[v] < 0) {
        int x = queue.front();
        queue.pop_front();
        if (dist[x] + 2 >= p.ell()) break;
        for (auto [y, f] : adj[x]) {
          if (f == e || dist[y] >= 0) continue;
          dist[y] = dist[x] + 1;
          via[y] = f;
          queue.push_back(y);
        }
      }
      if (dist[v] < 0 || dist[v] + 1 >= p.ell()) continue;
      cycle.push_back(e);
      for (int x = v; x != u;) {
        int f = via[x];
        cycle.push_back(f);
        x = p.tail(f) == x ? p.head(f) : p.tail(f);
      }
    }
    std::sort(cycle.begin(), cycle.end());
    if (seen.insert(cycle).second) {
      report.violations.push_back({cycle, static_cast<int>(cycle.size())});
    }
  }
  return report;
}

int gluing_count(const PatchComplex& p, CellSet cells) {
  int n = 0;
  for (const Gluing& g : p.gluings()) {
    if (has_cell(cells, g.cell_a) && has_cell(cells, g.cell_b)) ++n;
  }
  return n;
}

bool is_kk_bounded(const PatchComplex& p, CellSet cells, int k, int k_prime) {
  return cell_count(cells) <= k && gluing_count(p, cells) <= k_prime;
}

IpiResult ipi_check(const PatchComplex& p, CellSet cells, const Rational& d, const Rational& eps) {
  IpiResult r;
  r.can = cancellation(p, cells);
  r.bound = (d + eps) * Rational(static_cast<std::int64_t>(cell_count(cells)) * p.ell());
  r.pass = !(Rational(r.can) > r.bound);
  return r;
}

std::vector<CellSet> connected_subsets(const PatchComplex& p, int max_size) {
  const int n = p.num_cells();
  std::vector<CellSet> touching(n, 0);
  std::vector<std::vector<int>> vertex_cells(p.num_vertices());
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < p.ell(); ++k) vertex_cells[p.corner(c, k)].push_back(c);
  }
  for (const auto& cs : vertex_cells) {
    for (int a : cs) {
      for (int b : cs) touching[a] |= single_cell(b);
    }
  }
  std::unordered_set<CellSet> seen;
  std::vector<CellSet> frontier;
  for (int c = 0; c < n; ++c) {
    frontier.push_back(single_cell(c));
    seen.insert(single_cell(c));
  }
  std::vector<CellSet> out = frontier;
  for (int size = 2; size <= max_size && !frontier.empty(); ++size) {
    std::vector<CellSet> next;
    for (CellSet s : frontier) {
      CellSet nbrs = 0;
      for (int c : cells_of(s)) nbrs |= touching[c];
      nbrs &= ~s;
      for (int c : cells_of(nbrs)) {
        CellSet t = s | single_cell(c);
        if (seen.insert(t).second) next.push_back(t);
      }
    }
    std::sort(next.begin(), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}


AdmissibilityReport check_admissibility(const PatchComplex& p, const Rational& d, const Rational& eps) {
  AdmissibilityReport report;
  // A disconnected violation always has a violating component, so connected
  // subsets suffice.
  int cap = p.num_cells() <= 16 ? p.num_cells() : 8;
  for (CellSet s : connected_subsets(p, cap)) {
    IpiResult r = ipi_check(p, s, d, eps);
    if (!r.pass) report.ipi.push_back({s, r.can, r.bound, "subcomplex"});
  }
  const Rational one_cell = (d + eps) * Rational(p.ell());
  for (int a = 0; a < p.num_cells(); ++a) {
    for (int b = a + 1; b < p.num_cells(); ++b) {
      if (p.cells()[a].relator != p.cells()[b].relator) continue;
      int shared = overlap(p, single_cell(a), single_cell(b));
      if (shared > 0 && Rational(shared) > one_cell) {
        report.ipi.push_back({single_cell(a) | single_cell(b), shared, one_cell, "folded"});
      }
    }
  }
  report.geodesics = check_embedded_geodesics(p);
  return report;
}

std::string canonical_form(const PatchComplex& p, CellSet cells) {
  std::vector<int> members = cells_of(cells);
  std::map<int, std::vector<int>> groups;
  for (int c : members) groups[p.cells()[c].relator].push_back(c);
  std::vector<std::vector<int>> perms;
  for (auto& [r, g] : groups) perms.push_back(g);

  SubComplex y = closure(p, cells);
  std::unordered_map<int, int> label;
  std::vector<int> best;
  bool have_best = false;

  auto encode = [&]() {
    std::vector<std::vector<int>> edge_classes;
    for (int e : y.edges) {
      std::vector<int> cls;
      for (const SlotRef& r : p.slots_of(e)) {
        if (!has_cell(cells, r.cell)) continue;
        cls.push_back(label[r.cell] * 1024 + p.occurrence(r.cell, r.slot));
      }
      std::sort(cls.begin(), cls.end());
      edge_classes.push_back(std::move(cls));
    }
    std::map<int, std::vector<int>> vertex_map;
    for (int c : members) {
      for (int k = 0; k < p.ell(); ++k) {
        vertex_map[p.corner(c, k)].push_back(label[c] * 1024 + p.corner_occurrence(c, k));
      }
    }
    std::vector<std::vector<int>> vertex_classes;
    for (auto& [v, cls] : vertex_map) {
      std::sort(cls.begin(), cls.end());
      vertex_classes.push_back(std::move(cls));
    }
    std::sort(edge_classes.begin(), edge_classes.end());
    std::sort(vertex_classes.begin(), vertex_classes.end());
    std::vector<int> flat;
    for (const auto* classes : {&edge_classes, &vertex_classes}) {
      for (const auto& cls : *classes) {
        flat.insert(flat.end(), cls.begin(), cls.end());
        flat.push_back(-1);
      }
      flat.push_back(-2);
    }
    if (!have_best || flat < best) {
      best = std::move(flat);
      have_best = true;
    }
  };

  std::function<void(std::size_t)> permute = [&](std::size_t gi) {
    if (gi == perms.size()) {
      encode();
      return;
    }
    auto& g = perms[gi];
    std::sort(g.begin(), g.end());
    do {
      for (std::size_t i = 0; i < g.size(); ++i) label[g[i]] = p.cells()[g[i]].relator * 64 + static_cast<int>(i);
      permute(gi + 1);
    } while (std::next_permutation(g.begin(), g.end()));
  };
  permute(0);

  std::ostringstream out;
  out << p.ell() << ':';
  for (int x : best) out << x << ',';
  return out.str();
}

void write_dot(const PatchComplex& p, std::ostream& out, const std::vector<WallSegment>* walls) {
  out << "graph patch {\n";
  out << "  node [shape=point];\n";
  for (int v = 0; v < p.num_vertices(); ++v) out << "  v" << v << ";\n";
  for (int e = 0; e < p.num_edges(); ++e) {
    std::string label = "e" + std::to_string(e) + " deg " + std::to_string(p.degree(e));
    if (walls) {
      out << "  m" << e << " [shape=circle, width=0.05, label=\"\"];\n";
      out << "  v" << p.tail(e) << " -- m" << e << " [label=\"" << label << "\"];\n";
      out << "  m" << e << " -- v" << p.head(e) << ";\n";
    } else {
      out << "  v" << p.tail(e) << " -- v" << p.head(e) << " [label=\"" << label << "\"];\n";
    }
  }
  if (walls) {
    static const char* colors[] = {"red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"};
    for (const WallSegment& w : *walls) {
      out << "  m" << w.from_edge << " -- m" << w.to_edge << " [style=dashed, color=" << colors[w.wall % 8]
          << ", constraint=false];\n";
    }
  }
  out << "}\n";
}

}  // namespace randwalls
