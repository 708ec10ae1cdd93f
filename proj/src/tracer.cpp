#include "randwalls/tracer.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace randwalls {

std::vector<WallTrace> trace_walls(const PatchComplex& p, const WallState& state) {
  std::vector<TileWall> comps = tile_walls(p, p.all_cells(), state);
  std::vector<WallTrace> out;
  for (TileWall& w : comps) {
    WallTrace t;
    t.id = static_cast<int>(out.size());
    t.midpoints = std::move(w.midpoints);
    t.edges = std::move(w.edges);
    for (const WallEdge& e : t.edges) t.cells.push_back(e.cell);
    out.push_back(std::move(t));
  }
  return out;
}

EmbeddingReport check_embedded(const PatchComplex& p, const WallTrace& w) {
  (void)p;
  EmbeddingReport r;
  std::map<int, int> per_cell;
  for (int c : w.cells) ++per_cell[c];
  for (auto [c, n] : per_cell) {
    if (n > 1) {
      r.embedded = false;
      r.problem = "cell-revisited";
      r.witness.push_back(c);
    }
  }
  if (w.edges.size() + 1 != w.midpoints.size()) {
    r.embedded = false;
    r.problem = "cycle";
    r.witness = w.midpoints;
  }
  return r;
}

std::vector<WallPath> trace_paths(const PatchComplex& p, const WallTrace& w) {
  return wall_paths(p, TileWall{w.midpoints, w.edges});
}

namespace {

int midpoint_distance(const PatchComplex& p, CellSet cells, int x, int y) {
  return skeleton_distance(Point::midpoint(x), Point::midpoint(y), closure(p, cells)).value_or(1 << 29);
}

}  // namespace

Decomposition decompose(const TileCollection& tc, const WallPath& path, const WallState& state) {
  (void)state;
  const PatchComplex& p = tc.patch();
  Decomposition d;
  d.path = path;
  const int m = static_cast<int>(path.cells.size());
  auto alive = tc.alive();
  auto container = [&](CellSet mask) -> int {
    for (int t : alive) {
      if ((mask & ~tc.tile(t).cells) == 0) return t;
    }
    return -1;
  };

  const int inf = 1 << 29;
  std::vector<int> best(m + 1, inf);
  std::vector<int> from(m + 1, -1);
  best[0] = 0;
  for (int j = 1; j <= m; ++j) {
    CellSet mask = 0;
    for (int i = j - 1; i >= 0; --i) {
      mask |= single_cell(path.cells[i]);
      if (container(mask) < 0) break;
      if (best[i] + 1 < best[j]) {
        best[j] = best[i] + 1;
        from[j] = i;
      }
    }
    if (best[j] == inf) throw ComplexError("wall path leaves every tile");
  }
  for (int j = m; j > 0; j = from[j]) {
    int i = from[j];
    CellSet mask = 0;
    for (int k = i; k < j; ++k) mask |= single_cell(path.cells[k]);
    int tile = container(mask);
    d.factors.push_back({i, j, shard_of(tc, tile, mask), mask});
  }
  std::reverse(d.factors.begin(), d.factors.end());

  std::set<CellSet> made;
  for (const Tile& t : tc.history()) made.insert(t.cells);
  d.reduced = true;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    CellSet a = tc.tile(d.factors[i].tile).cells;
    for (std::size_t j = i + 1; j < d.factors.size(); ++j) {
      CellSet b = tc.tile(d.factors[j].tile).cells;
      if (j == i + 1 && made.count(a | b)) d.reduced = false;
      if (j > i + 1 && (a & b)) d.reduced = false;
    }
  }

  // Greedy fracturing: longest balanced prefix in a tile disjoint from the
  // tiles already used.
  std::vector<int> order(tc.history().size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return cell_count(tc.tile(a).cells) > cell_count(tc.tile(b).cells);
  });
  CellSet used = 0;
  int k = 0;
  d.fractured_ok = true;
  while (k < m) {
    Factor pick{k, k, -1, 0};
    for (int t : order) {
      CellSet tc_cells = tc.tile(t).cells;
      if (tc_cells & used) continue;
      CellSet mask = 0;
      for (int j = k; j < m && has_cell(tc_cells, path.cells[j]); ++j) {
        mask |= single_cell(path.cells[j]);
        if (j + 1 <= pick.last) continue;
        int dist = midpoint_distance(p, tc_cells, path.midpoints[k], path.midpoints[j + 1]);
        if (dist >= tc.balance(t)) pick = {k, j + 1, t, mask};
      }
    }
    if (pick.tile < 0) {
      d.fractured_ok = false;
      break;
    }
    used |= tc.tile(pick.tile).cells;
    d.fractured.push_back(pick);
    k = pick.last;
  }
  return d;
}

ReturningReport detect_returning(const TileCollection& tc, const std::vector<WallTrace>& traces,
                                 const WallState& state, int n_ret) {
  const PatchComplex& p = tc.patch();
  ReturningReport report;
  auto alive = tc.alive();
  std::map<int, SubComplex> closures;
  for (int t : alive) closures[t] = closure(p, tc.tile(t).cells);
  for (const WallTrace& w : traces) {
    for (const WallPath& path : trace_paths(p, w)) {
      Decomposition d = decompose(tc, path, state);
      ++report.segments;
      const int n = static_cast<int>(d.factors.size());
      if (n < 2 || n >= n_ret) continue;
      CellSet u = 0;
      for (const Factor& f : d.factors) u |= tc.tile(f.tile).cells;
      bool covered = std::any_of(d.factors.begin(), d.factors.end(),
                                 [&](const Factor& f) { return (u & ~tc.tile(f.tile).cells) == 0; });
      if (covered) continue;
      int x = path.midpoints.front();
      int y = path.midpoints.back();
      for (int t : alive) {
        if (!closures[t].contains_edge(x) || !closures[t].contains_edge(y)) continue;
        ReturningHit hit;
        hit.wall = w.id;
        hit.path = path;
        hit.length = n;
        hit.t0 = t;
        hit.union_cells = cell_count(u | tc.tile(t).cells);
        hit.endpoint_distance = midpoint_distance(p, tc.tile(t).cells, x, y);
        hit.claims_hold = hit.union_cells <= 6 && hit.endpoint_distance <= p.ell();
        report.hits.push_back(std::move(hit));
        break;
      }
    }
  }
  return report;
}

Wallspace export_wallspace(const PatchComplex& p, const std::vector<WallTrace>& traces, const TileConfig& cfg) {
  Wallspace ws;
  ws.lambda = cfg.lambda();
  ws.n_ret = cfg.returning_cap();
  std::vector<std::vector<std::pair<int, int>>> adj(p.num_vertices());
  for (int e = 0; e < p.num_edges(); ++e) {
    adj[p.tail(e)].push_back({p.head(e), e});
    adj[p.head(e)].push_back({p.tail(e), e});
  }
  for (const WallTrace& w : traces) {
    EmbeddingReport emb = check_embedded(p, w);
    if (!emb.embedded) throw ComplexError("wall " + std::to_string(w.id) + " is not embedded: " + emb.problem);
    WallspaceWall out;
    out.id = w.id;
    out.midpoints = w.midpoints;
    std::set<int> crossed(w.midpoints.begin(), w.midpoints.end());
    std::vector<int> side(p.num_vertices(), -1);
    bool consistent = true;
    for (int s = 0; s < p.num_vertices(); ++s) {
      if (side[s] >= 0) continue;
      side[s] = 0;
      std::deque<int> queue{s};
      while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [u, e] : adj[v]) {
          int want = side[v] ^ (crossed.count(e) ? 1 : 0);
          if (side[u] < 0) {
            side[u] = want;
            queue.push_back(u);
          } else if (side[u] != want) {
            consistent = false;
          }
        }
      }
    }
    bool both = false;
    for (int v = 0; v < p.num_vertices(); ++v) {
      out.sides[v] = side[v];
      if (side[v] != side[0]) both = true;
    }
    out.separating = consistent && both;
    ws.walls.push_back(std::move(out));
  }
  return ws;
}

std::string wallspace_json(const Wallspace& w) {
  nlohmann::ordered_json j;
  j["walls"] = nlohmann::ordered_json::array();
  for (const WallspaceWall& x : w.walls) {
    nlohmann::ordered_json o;
    o["id"] = x.id;
    o["midpoints"] = x.midpoints;
    nlohmann::ordered_json sides = nlohmann::ordered_json::object();
    for (auto [v, s] : x.sides) sides[std::to_string(v)] = s;
    o["sides"] = sides;
    o["separating_at_patch_scale"] = x.separating;
    j["walls"].push_back(o);
  }
  j["lambda"] = format_rational(w.lambda);
  j["n_ret"] = w.n_ret;
  return j.dump(2) + "\n";
}

Wallspace parse_wallspace(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  Wallspace w;
  for (const auto& o : j.at("walls")) {
    WallspaceWall x;
    x.id = o.at("id").get<int>();
    x.midpoints = o.at("midpoints").get<std::vector<int>>();
    for (const auto& [k, v] : o.at("sides").items()) x.sides[std::stoi(k)] = v.get<int>();
    x.separating = o.at("separating_at_patch_scale").get<bool>();
    w.walls.push_back(std::move(x));
  }
  w.lambda = parse_rational(j.at("lambda").get<std::string>());
  w.n_ret = j.at("n_ret").get<int>();
  return w;
}

std::vector<WallSegment> wall_segments(const PatchComplex& p, const std::vector<WallTrace>& traces) {
  std::vector<WallSegment> out;
  for (const WallTrace& w : traces) {
    for (const WallEdge& e : w.edges) out.push_back({p.edge_at(e.cell, e.slot_a), p.edge_at(e.cell, e.slot_b), w.id});
  }
  return out;
}

}  // namespace randwalls
