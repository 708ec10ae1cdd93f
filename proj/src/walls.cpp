#include "randwalls/walls.hpp"

#include "randwalls/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace randwalls {

std::vector<WallEdge> antipodal_walls(int cell, int ell) {
  std::vector<WallEdge> out;
  for (int k = 0; k < ell / 2; ++k) out.push_back({cell, k, k + ell / 2});
  return out;
}

WallState::WallState(const PatchComplex& p) : patch_(&p), match_(p.num_cells()) {
  const int ell = p.ell();
  for (int c = 0; c < p.num_cells(); ++c) {
    match_[c].resize(ell);
    for (const WallEdge& w : antipodal_walls(c, ell)) {
      match_[c][w.slot_a] = w.slot_b;
      match_[c][w.slot_b] = w.slot_a;
    }
  }
}

void WallState::set_matching(int cell, std::vector<int> m) {
  if (static_cast<int>(m.size()) != patch_->ell()) throw std::invalid_argument("matching has wrong size");
  for (int k = 0; k < patch_->ell(); ++k) {
    if (m[k] < 0 || m[k] >= patch_->ell() || m[m[k]] != k || m[k] == k) {
      throw std::invalid_argument("not a perfect matching of boundary slots");
    }
  }
  match_.at(cell) = std::move(m);
}

std::vector<WallEdge> WallState::edges(CellSet cells) const {
  std::vector<WallEdge> out;
  for (int c : cells_of(cells)) {
    for (int k = 0; k < patch_->ell(); ++k) {
      if (k < match_[c][k]) out.push_back({c, k, match_[c][k]});
    }
  }
  return out;
}

std::vector<TileWall> tile_walls(const PatchComplex& p, CellSet cells, const WallState& state) {
  auto wall_edges = state.edges(cells);
  std::vector<int> parent(p.num_edges());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::set<int> used;
  for (const WallEdge& w : wall_edges) {
    int a = p.edge_at(w.cell, w.slot_a);
    int b = p.edge_at(w.cell, w.slot_b);
    used.insert(a);
    used.insert(b);
    parent[find(a)] = find(b);
  }
  std::map<int, TileWall> by_root;
  for (int m : used) by_root[find(m)].midpoints.push_back(m);
  for (const WallEdge& w : wall_edges) by_root[find(p.edge_at(w.cell, w.slot_a))].edges.push_back(w);
  std::vector<TileWall> out;
  for (auto& [root, w] : by_root) out.push_back(std::move(w));
  std::sort(out.begin(), out.end(),
            [](const TileWall& a, const TileWall& b) { return a.midpoints.front() < b.midpoints.front(); });
  return out;
}

std::vector<WallPath> wall_paths(const PatchComplex& p, const TileWall& w) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // midpoint -> (neighbour, cell)
  for (const WallEdge& e : w.edges) {
    int a = p.edge_at(e.cell, e.slot_a);
    int b = p.edge_at(e.cell, e.slot_b);
    adj[a].push_back({b, e.cell});
    adj[b].push_back({a, e.cell});
  }
  for (auto& [m, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
  std::vector<WallPath> out;
  for (std::size_t i = 0; i < w.midpoints.size(); ++i) {
    int src = w.midpoints[i];
    std::map<int, std::pair<int, int>> prev{{src, {-1, -1}}};
    std::deque<int> queue{src};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (auto [u, cell] : adj[v]) {
        if (!prev.count(u)) {
          prev[u] = {v, cell};
          queue.push_back(u);
        }
      }
    }
    for (std::size_t j = i + 1; j < w.midpoints.size(); ++j) {
      int dst = w.midpoints[j];
      if (!prev.count(dst)) continue;
      WallPath path;
      for (int v = dst; v != -1; v = prev[v].first) {
        path.midpoints.push_back(v);
        if (prev[v].first != -1) {
          path.cells.push_back(prev[v].second);
          path.cell_set |= single_cell(prev[v].second);
        }
      }
      std::reverse(path.midpoints.begin(), path.midpoints.end());
      std::reverse(path.cells.begin(), path.cells.end());
      out.push_back(std::move(path));
    }
  }
  return out;
}

std::vector<WallProblem> check_tile_walls(const PatchComplex& p, CellSet cells, const WallState& state) {
  std::vector<WallProblem> out;
  for (const TileWall& w : tile_walls(p, cells, state)) {
    if (w.edges.size() >= w.midpoints.size()) out.push_back({"cycle", -1, w.midpoints});
    for (int c : cells_of(cells)) {
      std::set<int> on_boundary;
      std::map<int, int> wall_degree;
      for (int k = 0; k < p.ell(); ++k) {
        int e = p.edge_at(c, k);
        if (std::binary_search(w.midpoints.begin(), w.midpoints.end(), e)) on_boundary.insert(e);
      }
      for (const WallEdge& e : w.edges) {
        if (e.cell != c) continue;
        ++wall_degree[p.edge_at(c, e.slot_a)];
        ++wall_degree[p.edge_at(c, e.slot_b)];
      }
      if (on_boundary.size() > 2) {
        out.push_back({"cell-vertices", c, std::vector<int>(on_boundary.begin(), on_boundary.end())});
      }
      for (auto [m, deg] : wall_degree) {
        if (deg > 1) out.push_back({"immersion", c, {m}});
      }
    }
  }
  return out;
}

namespace {

std::set<int> as_set(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Maximal cyclic runs of slots of a cell whose edges lie in `region`.
std::vector<std::pair<int, int>> runs_in(const PatchComplex& p, int cell, const std::set<int>& region) {
  const int ell = p.ell();
  std::vector<char> in(ell);
  for (int k = 0; k < ell; ++k) in[k] = region.count(p.edge_at(cell, k)) ? 1 : 0;
  if (std::all_of(in.begin(), in.end(), [](char x) { return x != 0; })) return {{0, ell}};
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < ell; ++k) {
    if (!in[k] || in[(k + ell - 1) % ell]) continue;
    int len = 0;
    while (in[(k + len) % ell]) ++len;
    out.push_back({k, len});
  }
  return out;
}

}  // namespace

GluingInfo bend_and_glue(TileCollection& tc, int older, int younger, WallState& state, int step_index) {
  const PatchComplex& p = tc.patch();
  const int ell = p.ell();
  GluingInfo g;
  g.step_index = step_index;
  g.older = older;
  g.younger = younger;
  CellSet young_cells = tc.tile(younger).cells;
  CellSet all = tc.tile(older).cells | young_cells;
  SubComplex a = intersection(closure(p, tc.tile(older).cells), closure(p, young_cells));
  g.intersection = a.edges;
  for (int c : cells_of(young_cells)) g.before[c] = state.matching(c);

  std::optional<TreeShape> shape;
  try {
    shape = analyze_tree(edge_subgraph(p, a.edges));
  } catch (const NotATree&) {
  }
  g.is_tree = shape.has_value();
  if (shape) {
    g.cls = classify_tree(*shape, ell).cls;
    if (g.cls == TreeClass::Long) {
      try {
        g.alpha = alpha_regions(*shape, ell);
      } catch (const std::logic_error& e) {
        tc.warnings().push_back("step " + std::to_string(step_index) + ": " + e.what());
      }
    }
  }

  if (g.alpha && tc.config().bending) {
    for (int c : cells_of(young_cells)) {
      std::vector<int> m = state.matching(c);
      int arcs = 0;
      for (char side : {'+', '-'}) {
        auto runs = runs_in(p, c, as_set(side == '+' ? g.alpha->plus : g.alpha->minus));
        if (runs.size() > 1) arcs = std::max(arcs, static_cast<int>(runs.size()));
        std::vector<int> sigma(ell);
        std::iota(sigma.begin(), sigma.end(), 0);
        for (auto [start, len] : runs) {
          g.arcs.push_back({c, side, start, len});
          for (int i = 0; i < len; ++i) sigma[(start + i) % ell] = (start + len - 1 - i) % ell;
        }
        std::vector<int> next(ell);
        for (int k = 0; k < ell; ++k) next[sigma[k]] = sigma[m[k]];
        for (int k = 0; k < ell; ++k) {
          if (sigma[k] != k) {
            state.record({step_index, c, side, p.edge_at(c, k), p.edge_at(c, sigma[k]), k, sigma[k]});
          }
        }
        m = std::move(next);
      }
      if (arcs > 1) ++g.arcs_split;
      state.set_matching(c, std::move(m));
    }
  }
  for (int c : cells_of(all)) g.after[c] = state.matching(c);
  return g;
}

int shard_of(const TileCollection& tc, int tile, CellSet path_cells) {
  const Tile& t = tc.tile(tile);
  if ((path_cells & ~t.cells) != 0) throw ComplexError("wall path does not lie in the tile");
  auto inside = [&](int id) { return id >= 0 && (path_cells & ~tc.tile(id).cells) == 0; };
  switch (t.made_by) {
    case Provenance::Start:
    case Provenance::Step1:
      return tile;
    case Provenance::Step2: {
      int bal = tc.balance(tile);
      for (int s : {t.parent_a, t.parent_b}) {
        if (!inside(s)) continue;
        int bs = tc.balance(s);
        if (tc.config().shard_strict ? bs < bal : bs <= bal) return shard_of(tc, s, path_cells);
      }
      return tile;
    }
    case Provenance::Step3:
      return inside(t.parent_b) ? shard_of(tc, t.parent_b, path_cells) : tile;
  }
  return tile;
}

const char* to_string(WallCase c) {
  switch (c) {
    case WallCase::C1: return "1";
    case WallCase::C2a: return "2a";
    case WallCase::C2b: return "2b";
    case WallCase::C3a: return "3a";
    case WallCase::C3b: return "3b";
    case WallCase::C4a: return "4a";
    case WallCase::C4b: return "4b";
    case WallCase::Other: return "other";
  }
  return "?";
}

WallCase classify_wall_case(const PatchComplex& p, const WallPath& path, CellSet older, CellSet younger,
                            const GluingInfo& g) {
  (void)p;
  auto in_a = [&](int m) { return std::binary_search(g.intersection.begin(), g.intersection.end(), m); };
  std::set<int> alpha;
  if (g.alpha) {
    alpha.insert(g.alpha->plus.begin(), g.alpha->plus.end());
    alpha.insert(g.alpha->minus.begin(), g.alpha->minus.end());
  }
  bool in_one = (path.cell_set & ~older) == 0 || (path.cell_set & ~younger) == 0;
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < path.midpoints.size(); ++i) {
    if (in_a(path.midpoints[i])) hits.push_back(i);
  }
  if (hits.empty()) return in_one ? WallCase::C1 : WallCase::Other;
  if (hits.size() != 1) return WallCase::Other;
  std::size_t i = hits.front();
  bool endpoint = i == 0 || i + 1 == path.midpoints.size();
  bool in_alpha = alpha.count(path.midpoints[i]) > 0;
  if (endpoint) {
    if (!in_one) return WallCase::Other;
    return in_alpha ? WallCase::C2a : WallCase::C2b;
  }
  if (in_one) return in_alpha ? WallCase::C3a : WallCase::C3b;
  return in_alpha ? WallCase::C4a : WallCase::C4b;
}

BalanceReport verify_balanced(const TileCollection& tc, int tile, const WallState& state) {
  const PatchComplex& p = tc.patch();
  const Tile& t = tc.tile(tile);
  BalanceReport report;
  report.problems = check_tile_walls(p, t.cells, state);
  SkeletonMetric metric(closure(p, t.cells));
  const GluingInfo* g = nullptr;
  for (const GluingInfo& info : tc.gluings()) {
    if (info.result == tile) g = &info;
  }
  for (const TileWall& w : tile_walls(p, t.cells, state)) {
    for (const WallPath& path : wall_paths(p, w)) {
      ++report.paths;
      int shard = shard_of(tc, tile, path.cell_set);
      int bal = tc.balance(shard);
      auto d = metric.distance(Point::midpoint(path.midpoints.front()), Point::midpoint(path.midpoints.back()));
      if (d && *d >= bal) continue;
      BalanceFailure f;
      f.tile = tile;
      f.x = path.midpoints.front();
      f.x_prime = path.midpoints.back();
      f.distance = d.value_or(-1);
      f.bal = bal;
      f.shard = shard;
      if (g) {
        f.wall_case = to_string(classify_wall_case(p, path, tc.tile(g->older).cells, tc.tile(g->younger).cells, *g));
      }
      report.failures.push_back(f);
    }
  }
  return report;
}

bool within_verified_range(const TileCollection& tc, int tile) {
  const Tile& t = tc.tile(tile);
  if (t.made_by == Provenance::Start) return true;
  if (t.made_by == Provenance::Step1 && cell_count(tc.tile(t.parent_b).cells) > 3) return false;
  return within_verified_range(tc, t.parent_a) && within_verified_range(tc, t.parent_b);
}

void LemmaTally::violation(std::string w) {
  ++violated;
  if (witnesses.size() < 20) witnesses.push_back(std::move(w));
}

namespace {

WallState snapshot(const PatchComplex& p, const std::map<int, std::vector<int>>& m) {
  WallState s(p);
  for (const auto& [c, match] : m) s.set_matching(c, match);
  return s;
}

std::vector<WallPath> all_paths(const PatchComplex& p, CellSet cells, const WallState& s) {
  std::vector<WallPath> out;
  for (const TileWall& w : tile_walls(p, cells, s)) {
    for (WallPath& path : wall_paths(p, w)) out.push_back(std::move(path));
  }
  return out;
}

// Endpoint pairs (x, x') of wall paths, both orientations.
std::vector<std::pair<int, int>> endpoint_pairs(const std::vector<WallPath>& paths) {
  std::set<std::pair<int, int>> out;
  for (const WallPath& w : paths) {
    out.insert({w.midpoints.front(), w.midpoints.back()});
    out.insert({w.midpoints.back(), w.midpoints.front()});
  }
  return {out.begin(), out.end()};
}

int dist(const SkeletonMetric& m, int x, int y) {
  return m.distance(Point::midpoint(x), Point::midpoint(y)).value_or(1 << 29);
}

// The intersection tree as an abstract tree; point ids follow AbstractTree.
struct LocalTree {
  AbstractTree tree;
  std::map<int, int> vertex;   // patch vertex -> local vertex
  std::map<int, int> edge;     // patch edge -> local edge
  std::vector<std::vector<int>> d;

  int mid(int e) const { return tree.vertices + edge.at(e); }
};

LocalTree local_tree(const PatchComplex& p, const std::vector<int>& edges) {
  LocalTree t;
  t.tree.vertices = 0;
  for (int e : edges) {
    for (int v : {p.tail(e), p.head(e)}) {
      if (!t.vertex.count(v)) t.vertex[v] = t.tree.vertices++;
    }
  }
  for (int e : edges) {
    t.edge[e] = static_cast<int>(t.tree.edges.size());
    t.tree.edges.push_back({t.vertex[p.tail(e)], t.vertex[p.head(e)]});
  }
  t.d = point_distances(t.tree);
  return t;
}

// max over y in alpha of ecc(y) + ecc(s(y)), using eccentricities.
int tree_sum_lhs(const LocalTree& t, const std::vector<int>& alpha) {
  int best = 0;
  auto ecc = [&](int y) { return *std::max_element(t.d[y].begin(), t.d[y].end()); };
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    best = std::max(best, ecc(alpha[i]) + ecc(alpha[alpha.size() - 1 - i]));
  }
  return best;
}

int cover_radius(const LocalTree& t, const std::vector<int>& alpha) {
  int r = 0;
  for (int z = 0; z < t.tree.points(); ++z) {
    int best = 1 << 29;
    for (int y : alpha) best = std::min(best, t.d[y][z]);
    r = std::max(r, best);
  }
  return r;
}

std::string fmt_pair(int x, int y, int d, int bound) {
  std::ostringstream os;
  os << "x=" << x << " x'=" << y << " dist=" << d << " bound=" << bound;
  return os.str();
}

}  // namespace

std::vector<LemmaTally> lemma_suite(const TileCollection& tc, const GluingInfo& g, const WallState& state) {
  (void)state;
  const PatchComplex& p = tc.patch();
  const int ell = p.ell();
  const int quarter_half = ell / 2;  // ell/4 in half units
  const Tile& t_old = tc.tile(g.older);
  const Tile& t_young = tc.tile(g.younger);
  const CellSet cu = t_old.cells | t_young.cells;
  const int a_size = static_cast<int>(g.intersection.size());
  const int bal_u = balance(p, cu);
  const int bal_old = tc.balance(g.older);
  const int bal_young = tc.balance(g.younger);

  std::map<int, std::vector<int>> before_all = g.after;
  for (const auto& [c, m] : g.before) before_all[c] = m;
  WallState after = snapshot(p, g.after);
  WallState before = snapshot(p, before_all);

  SkeletonMetric m_old(closure(p, t_old.cells));
  SkeletonMetric m_young(closure(p, t_young.cells));
  SkeletonMetric m_union(closure(p, cu));

  auto old_paths = all_paths(p, t_old.cells, after);
  auto young_before = all_paths(p, t_young.cells, before);
  auto young_after = all_paths(p, t_young.cells, after);

  // Endpoints x' reachable from midpoint y by a wall path balanced in its tile.
  auto balanced_from = [&](const std::vector<WallPath>& paths, const SkeletonMetric& m, int bal, int y) {
    std::set<int> out;
    for (auto [x, z] : endpoint_pairs(paths)) {
      if (x == y && dist(m, x, z) >= bal) out.insert(z);
    }
    return out;
  };

  std::vector<LemmaTally> out;

  {
    LemmaTally t{"shard-union"};
    int bound = bal_u + 2 * a_size - quarter_half;
    auto run = [&](const std::vector<WallPath>& paths, const SkeletonMetric& m, int bal) {
      for (auto [x, y] : endpoint_pairs(paths)) {
        if (x > y) continue;
        if (dist(m, x, y) < bal) {
          ++t.skipped;
          continue;
        }
        ++t.checked;
        int d = dist(m_union, x, y);
        if (d < bound) t.violation(fmt_pair(x, y, d, bound));
        if (2 * a_size >= quarter_half && d < bal_u) t.violation(fmt_pair(x, y, d, bal_u));
      }
    };
    run(old_paths, m_old, bal_old);
    run(young_before, m_young, bal_young);
    out.push_back(std::move(t));
  }

  std::optional<LocalTree> lt;
  if (g.is_tree) lt = local_tree(p, g.intersection);

  {
    LemmaTally t{"reflected-pair"};
    for (const auto& arc : g.arcs) {
      if (!lt || 4 * a_size <= ell) {
        t.skipped += arc.length;
        continue;
      }
      std::vector<int> alpha_points;
      for (int i = 0; i < arc.length; ++i) {
        int e = p.edge_at(arc.cell, arc.start + i);
        if (i > 0) {
          int prev = p.edge_at(arc.cell, arc.start + i - 1);
          int shared = -1;
          for (int v : {p.tail(e), p.head(e)}) {
            if (v == p.tail(prev) || v == p.head(prev)) shared = v;
          }
          alpha_points.push_back(lt->vertex.at(shared));
        }
        alpha_points.push_back(lt->mid(e));
      }
      // Close the arc with its two end vertices.
      int first = p.edge_at(arc.cell, arc.start);
      int last = p.edge_at(arc.cell, arc.start + arc.length - 1);
      for (int v : {p.tail(first), p.head(first), p.tail(last), p.head(last)}) {
        auto it = lt->vertex.find(v);
        if (it != lt->vertex.end()) alpha_points.push_back(it->second);
      }
      if (cover_radius(*lt, alpha_points) > quarter_half) {
        t.skipped += arc.length;
        continue;
      }
      for (int i = 0; i < arc.length; ++i) {
        int x = p.edge_at(arc.cell, arc.start + i);
        int y = p.edge_at(arc.cell, arc.start + arc.length - 1 - i);
        auto xs = balanced_from(young_before, m_young, bal_young, x);
        auto ys = balanced_from(old_paths, m_old, bal_old, y);
        if (xs.empty() || ys.empty()) {
          ++t.skipped;
          continue;
        }
        for (int x1 : xs) {
          for (int x2 : ys) {
            ++t.checked;
            int d = dist(m_union, x1, x2);
            if (d < bal_u) t.violation(fmt_pair(x1, x2, d, bal_u));
          }
        }
      }
    }
    out.push_back(std::move(t));
  }

  // Pairs of balanced walls in T and T' meeting at a midpoint y of T∩T'.
  auto crossing_pairs = [&](LemmaTally& t, bool need_ball) {
    for (int y : g.intersection) {
      if (need_ball) {
        if (!lt) {
          ++t.skipped;
          continue;
        }
        const auto& row = lt->d[lt->mid(y)];
        if (*std::max_element(row.begin(), row.end()) > quarter_half) {
          ++t.skipped;
          continue;
        }
      }
      auto xs = balanced_from(old_paths, m_old, bal_old, y);
      auto ys = balanced_from(young_before, m_young, bal_young, y);
      auto ys_after = balanced_from(young_after, m_young, bal_young, y);
      ys.insert(ys_after.begin(), ys_after.end());
      if (xs.empty() || ys.empty()) {
        ++t.skipped;
        continue;
      }
      for (int x1 : xs) {
        for (int x2 : ys) {
          ++t.checked;
          int d = dist(m_union, x1, x2);
          if (d < bal_u) t.violation("y=" + std::to_string(y) + " " + fmt_pair(x1, x2, d, bal_u));
        }
      }
    }
  };

  {
    LemmaTally t{"single-crossing"};
    crossing_pairs(t, true);
    out.push_back(std::move(t));
  }

  {
    LemmaTally t{"round-trees"};
    if (!g.is_tree || g.cls != TreeClass::Round || 4 * a_size < ell) {
      ++t.skipped;
    } else {
      crossing_pairs(t, false);
      auto run = [&](const std::vector<WallPath>& paths, const SkeletonMetric& m, int bal) {
        for (auto [x, y] : endpoint_pairs(paths)) {
          if (x > y) continue;
          if (dist(m, x, y) < bal) {
            ++t.skipped;
            continue;
          }
          ++t.checked;
          int d = dist(m_union, x, y);
          if (d < bal_u) t.violation(fmt_pair(x, y, d, bal_u));
        }
      };
      run(old_paths, m_old, bal_old);
      run(young_before, m_young, bal_young);
    }
    out.push_back(std::move(t));
  }

  {
    LemmaTally t{"core-pair-balance"};
    int n_old = cell_count(t_old.cells);
    int n_young = cell_count(t_young.cells);
    bool both_core = t_old.made_by == Provenance::Step1 && t_young.made_by == Provenance::Step1;
    if (both_core && n_young == 3 && (n_old == 2 || n_old == 3)) {
      auto d_prime = first_pair(tc, g.younger);
      if (!d_prime) {
        ++t.skipped;
      } else {
        ++t.checked;
        int bound = 2 * (5 * ell / 4 - 2 * tc.tile(*d_prime).can - a_size);
        if (bal_u > bound) {
          t.violation("tiles " + std::to_string(g.older) + "," + std::to_string(g.younger) +
                      " bal=" + std::to_string(bal_u) + " bound=" + std::to_string(bound));
        }
      }
    } else {
      ++t.skipped;
    }
    out.push_back(std::move(t));
  }

  {
    LemmaTally t{"small-intersections"};
    if (t_old.made_by == Provenance::Step1 && t_young.made_by == Provenance::Step1) {
      SubComplex co = closure(p, t_old.cells);
      for (int c : cells_of(t_young.cells)) {
        ++t.checked;
        int inter = static_cast<int>(intersection(co, closure(p, single_cell(c))).edges.size());
        if (4 * inter >= ell) {
          t.violation("cell " + std::to_string(c) + " meets tile " + std::to_string(g.older) + " in " +
                      std::to_string(inter) + " edges");
        }
      }
    } else {
      ++t.skipped;
    }
    out.push_back(std::move(t));
  }

  {
    LemmaTally t{"tree-sum"};
    if (!lt) {
      ++t.skipped;
    } else {
      const int nv = lt->tree.vertices;
      int brute_budget = 8;
      for (int u = 0; u < nv; ++u) {
        for (int v = u; v < nv; ++v) {
          auto alpha = point_path(lt->tree, u, v);
          int q = cover_radius(*lt, alpha);
          int lhs = tree_sum_lhs(*lt, alpha);
          int rhs = 2 * a_size + std::max(static_cast<int>(alpha.size()) - 1, q);
          ++t.checked;
          if (lhs > rhs) {
            t.violation("alpha " + std::to_string(u) + "-" + std::to_string(v) + " lhs=" + std::to_string(lhs) +
                        " rhs=" + std::to_string(rhs));
          }
          if (brute_budget > 0 && (v == u || v == nv - 1)) {
            --brute_budget;
            TreeSumResult r = oracle_tree_sum(lt->tree, alpha, q);
            if (r.lhs != lhs || r.rhs != rhs) {
              t.violation("brute force disagrees on alpha " + std::to_string(u) + "-" + std::to_string(v));
            }
          }
        }
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace randwalls
