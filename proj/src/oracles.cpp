#include "randwalls/oracles.hpp"

#include "json.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <set>
#include <sstream>

namespace randwalls {

AbstractTree random_tree(int edges, Rng& rng) {
  AbstractTree t;
  t.vertices = edges + 1;
  for (int v = 1; v <= edges; ++v) t.edges.push_back({static_cast<int>(rng.below(v)), v});
  return t;
}

namespace {

std::vector<std::vector<int>> point_adjacency(const AbstractTree& t) {
  std::vector<std::vector<int>> adj(t.points());
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    int m = t.vertices + static_cast<int>(i);
    for (int v : {t.edges[i].first, t.edges[i].second}) {
      adj[m].push_back(v);
      adj[v].push_back(m);
    }
  }
  return adj;
}

}  // namespace

std::vector<std::vector<int>> point_distances(const AbstractTree& t) {
  auto adj = point_adjacency(t);
  const int n = t.points();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    d[s][s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int w : adj[v]) {
        if (d[s][w] < 0) {
          d[s][w] = d[s][v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  return d;
}

std::vector<int> point_path(const AbstractTree& t, int from, int to) {
  auto adj = point_adjacency(t);
  std::vector<int> parent(t.points(), -2);
  parent[from] = -1;
  std::deque<int> queue{from};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[to] == -2) throw std::invalid_argument("points are not connected");
  std::vector<int> path;
  for (int v = to; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

TreeSumResult oracle_tree_sum(const AbstractTree& t, const std::vector<int>& alpha, int q_half) {
  auto d = point_distances(t);
  const int n = t.points();
  TreeSumResult r;
  r.covered = true;
  for (int z = 0; z < n; ++z) {
    bool near = false;
    for (int y : alpha) near = near || d[y][z] <= q_half;
    if (!near) r.covered = false;
  }
  const int k = static_cast<int>(alpha.size());
  for (int i = 0; i < k; ++i) {
    int y = alpha[i];
    int sy = alpha[k - 1 - i];
    for (int z = 0; z < n; ++z) {
      for (int z2 = 0; z2 < n; ++z2) r.lhs = std::max(r.lhs, d[y][z] + d[sy][z2]);
    }
  }
  r.rhs = 2 * static_cast<int>(t.edges.size()) + std::max(k - 1, q_half);
  return r;
}

TreeSumSweep oracle_tree_sum_sweep(int trees, int max_edges, std::uint64_t seed) {
  Rng rng(seed, "oracles.trees");
  TreeSumSweep out;
  for (int i = 0; i < trees; ++i) {
    AbstractTree t = random_tree(1 + static_cast<int>(rng.below(max_edges)), rng);
    ++out.trees;
    auto d = point_distances(t);
    int a = static_cast<int>(rng.below(t.points()));
    int b = static_cast<int>(rng.below(t.points()));
    for (const auto& alpha : {point_path(t, a, b), std::vector<int>{a}}) {
      int radius = 0;
      for (int z = 0; z < t.points(); ++z) {
        int best = 1 << 29;
        for (int y : alpha) best = std::min(best, d[y][z]);
        radius = std::max(radius, best);
      }
      int q = radius + static_cast<int>(rng.below(3));
      TreeSumResult r = oracle_tree_sum(t, alpha, q);
      ++out.instances;
      if (!r.holds()) {
        ++out.violations;
        if (out.witnesses.size() < 20) {
          out.witnesses.push_back("tree " + std::to_string(i) + " alpha " + std::to_string(a) + "-" +
                                  std::to_string(alpha.back()) + " lhs=" + std::to_string(r.lhs) +
                                  " rhs=" + std::to_string(r.rhs));
        }
      }
    }
  }
  return out;
}

std::optional<int> oracle_distance(const SubComplex& within, Point x, Point y, long max_steps) {
  const PatchComplex& p = *within.patch;
  const int nv = p.num_vertices();
  auto node = [&](Point pt) { return pt.kind == Point::Kind::Vertex ? pt.id : nv + pt.id; };
  std::vector<std::vector<int>> adj(nv + p.num_edges());
  std::vector<char> present(adj.size(), 0);
  for (int v : within.vertices) present[v] = 1;
  for (int e : within.edges) {
    present[nv + e] = 1;
    for (int v : {p.tail(e), p.head(e)}) {
      adj[nv + e].push_back(v);
      adj[v].push_back(nv + e);
    }
  }
  int s = node(x);
  int t = node(y);
  if (!present[s] || !present[t]) throw std::invalid_argument("point outside subcomplex");
  // Depth-first enumeration of simple paths, abandoning any prefix that is
  // no shorter than the best known way to reach its last node.
  const int inf = 1 << 29;
  std::vector<int> reach(adj.size(), inf);
  std::vector<char> on_path(adj.size(), 0);
  int best = inf;
  long steps = 0;
  bool exhausted = false;
  auto dfs = [&](auto&& self, int v, int len) -> void {
    if (exhausted) return;
    if (++steps > max_steps) {
      exhausted = true;
      return;
    }
    if (len >= reach[v] || len >= best) return;
    reach[v] = len;
    if (v == t) {
      best = len;
      return;
    }
    on_path[v] = 1;
    for (int w : adj[v]) {
      if (!on_path[w]) self(self, w, len + 1);
    }
    on_path[v] = 0;
  };
  dfs(dfs, s, 0);
  if (exhausted || best == inf) return std::nullopt;
  return best;
}

bool SweepTotals::clean() const {
  if (wall_failures_in_range > 0 || distance_mismatches > 0) return false;
  return std::all_of(lemmas.begin(), lemmas.end(), [](const auto& kv) { return kv.second.violated == 0; });
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{
      "balance-bounds", "intersection-trees", "overlap-vs-balance", "shard-endpoints",
      "shard-union",    "reflected-pair",     "single-crossing",    "round-trees",
      "core-pair-balance", "small-intersections", "tree-sum",       "subtile-age",
      "tile-collection"};
  return ids;
}

namespace {

void merge(std::map<std::string, LemmaTally>& into, const LemmaTally& t) {
  LemmaTally& x = into[t.lemma];
  x.lemma = t.lemma;
  x.checked += t.checked;
  x.skipped += t.skipped;
  x.violated += t.violated;
  for (const auto& w : t.witnesses) {
    if (x.witnesses.size() < 20) x.witnesses.push_back(w);
  }
}

std::string cells_text(CellSet s) {
  std::string out = "{";
  for (int c : cells_of(s)) out += (out.size() > 1 ? "," : "") + std::to_string(c);
  return out + "}";
}

struct PotilePairs {
  LemmaTally trees{"intersection-trees"};
  LemmaTally overlap{"overlap-vs-balance"};
  LemmaTally bounds{"balance-bounds"};
};

PotilePairs potile_checks(const PatchComplex& p, const std::vector<CellSet>& potiles,
                          const std::vector<CellSet>& others) {
  PotilePairs r;
  const int ell = p.ell();
  for (CellSet s : potiles) {
    ++r.bounds.checked;
    int bal = balance(p, s);
    if (bal < ell / 2 || bal > ell) r.bounds.violation("potile " + cells_text(s) + " bal=" + std::to_string(bal));
  }
  for (CellSet s : others) {
    ++r.bounds.checked;
    int bal = balance(p, s);
    if (bal <= ell) r.bounds.violation("non-potile " + cells_text(s) + " bal=" + std::to_string(bal));
  }
  std::vector<SubComplex> closures;
  for (CellSet s : potiles) closures.push_back(closure(p, s));
  for (std::size_t i = 0; i < potiles.size(); ++i) {
    for (std::size_t j = i + 1; j < potiles.size(); ++j) {
      if (potiles[i] & potiles[j]) continue;
      SubComplex a = intersection(closures[i], closures[j]);
      a.cells = 0;
      ++r.trees.checked;
      ++r.overlap.checked;
      std::string pair = cells_text(potiles[i]) + " " + cells_text(potiles[j]);
      if (!a.vertices.empty()) {
        bool tree = is_connected(a) && a.edges.size() + 1 == a.vertices.size();
        if (!tree || 2 * static_cast<int>(a.edges.size()) > ell) {
          r.trees.violation(pair + " intersection has " + std::to_string(a.edges.size()) + " edges, " +
                            std::to_string(a.vertices.size()) + " vertices");
        }
      }
      int bal = std::min(balance(p, potiles[i]), balance(p, potiles[j]));
      if (2 * static_cast<int>(a.edges.size()) > bal) {
        r.overlap.violation(pair + " overlap " + std::to_string(a.edges.size()));
      }
    }
  }
  return r;
}

bool wanted(const SweepConfig& cfg, const std::string& id) {
  return cfg.lemmas.empty() || std::find(cfg.lemmas.begin(), cfg.lemmas.end(), id) != cfg.lemmas.end();
}

}  // namespace

void oracle_lemma_sweep(const PatchComplex& p, const SweepConfig& cfg, SweepTotals& totals) {
  ++totals.patches;
  const TileConfig& tcfg = cfg.tiles;
  std::vector<CellSet> potiles;
  std::vector<CellSet> others;
  for (CellSet s : connected_subsets(p, tcfg.max_potile_size)) {
    (is_potile(p, s) ? potiles : others).push_back(s);
  }
  PotilePairs pp = potile_checks(p, potiles, others);

  AdmissibilityReport adm = check_admissibility(p, tcfg.d, tcfg.eps);
  if (!adm.admissible()) {
    ++totals.inadmissible;
    totals.explained_counterexamples += pp.trees.violated + pp.overlap.violated + pp.bounds.violated;
    return;
  }
  for (const LemmaTally* t : {&pp.trees, &pp.overlap, &pp.bounds}) {
    if (wanted(cfg, t->lemma)) merge(totals.lemmas, *t);
  }

  WallState state(p);
  TileCollection tc = build_tile_collection(p, tcfg, state);
  ++totals.collections;

  CollectionReport cr = check_collection(tc);
  LemmaTally coll{"tile-collection"};
  LemmaTally age{"subtile-age"};
  coll.checked = static_cast<long>(tc.alive().size());
  age.checked = static_cast<long>(tc.gluings().size());
  for (const CollectionViolation& v : cr.violations) {
    std::string w = v.item + " step " + std::to_string(v.step) + ": " + v.message;
    if (v.item == "subtile-age") {
      age.violation(w);
    } else if (v.item == "small-intersections") {
      LemmaTally s{"small-intersections"};
      s.violation(w);
      if (wanted(cfg, s.lemma)) merge(totals.lemmas, s);
    } else {
      coll.violation(w);
    }
  }
  for (const LemmaTally* t : {&coll, &age}) {
    if (wanted(cfg, t->lemma)) merge(totals.lemmas, *t);
  }

  for (const GluingInfo& g : tc.gluings()) {
    for (const LemmaTally& t : lemma_suite(tc, g, state)) {
      if (wanted(cfg, t.lemma)) merge(totals.lemmas, t);
    }
    WallState after(p);
    for (const auto& [c, m] : g.after) after.set_matching(c, m);
    for (const TileWall& w : tile_walls(p, tc.tile(g.result).cells, after)) {
      for (const WallPath& path : wall_paths(p, w)) {
        ++totals.wall_cases[to_string(
            classify_wall_case(p, path, tc.tile(g.older).cells, tc.tile(g.younger).cells, g))];
      }
    }
  }

  LemmaTally ends{"shard-endpoints"};
  std::vector<SubComplex> potile_closures;
  for (CellSet s : potiles) potile_closures.push_back(closure(p, s));
  for (int id : tc.alive()) {
    const Tile& t = tc.tile(id);
    BalanceReport br = verify_balanced(tc, id, state);
    totals.walls_checked += br.paths;
    long bad = static_cast<long>(br.failures.size() + br.problems.size());
    totals.wall_failures += bad;
    if (within_verified_range(tc, id)) totals.wall_failures_in_range += bad;
    for (const BalanceFailure& f : br.failures) {
      if (totals.notes.size() < 50) {
        totals.notes.push_back("tile " + cells_text(t.cells) + " wall " + std::to_string(f.x) + "-" +
                               std::to_string(f.x_prime) + " dist=" + std::to_string(f.distance) +
                               " bal=" + std::to_string(f.bal) + " case " + f.wall_case);
      }
    }

    SubComplex ct = closure(p, t.cells);
    SkeletonMetric metric(ct);
    int sampled = 0;
    for (const TileWall& w : tile_walls(p, t.cells, state)) {
      for (const WallPath& path : wall_paths(p, w)) {
        int x = path.midpoints.front();
        int y = path.midpoints.back();
        auto d = metric.distance(Point::midpoint(x), Point::midpoint(y));
        if (cfg.cross_check_distances && sampled < 4) {
          ++sampled;
          if (oracle_distance(ct, Point::midpoint(x), Point::midpoint(y)) != d) ++totals.distance_mismatches;
        }
        int shard = shard_of(tc, id, path.cell_set);
        if (!d || *d < tc.balance(shard)) {
          ++ends.skipped;
          continue;
        }
        CellSet sc = tc.tile(shard).cells;
        for (std::size_t i = 0; i < potiles.size(); ++i) {
          if (potiles[i] & sc) continue;
          ++ends.checked;
          if (potile_closures[i].contains_edge(x) && potile_closures[i].contains_edge(y)) {
            ends.violation("wall " + std::to_string(x) + "-" + std::to_string(y) + " has both endpoints in " +
                           cells_text(potiles[i]));
          }
        }
      }
    }
  }
  if (wanted(cfg, ends.lemma)) merge(totals.lemmas, ends);
}

std::string sweep_report_json(const SweepTotals& totals) {
  nlohmann::ordered_json j;
  j["patches"] = totals.patches;
  j["inadmissible"] = totals.inadmissible;
  j["collections"] = totals.collections;
  j["walls_checked"] = totals.walls_checked;
  j["wall_failures"] = totals.wall_failures;
  j["wall_failures_in_range"] = totals.wall_failures_in_range;
  j["distance_mismatches"] = totals.distance_mismatches;
  j["explained_counterexamples"] = totals.explained_counterexamples;
  j["wall_cases"] = totals.wall_cases;
  j["lemmas"] = nlohmann::ordered_json::array();
  for (const auto& [id, t] : totals.lemmas) {
    nlohmann::ordered_json o;
    o["lemma"] = id;
    o["checked"] = t.checked;
    o["skipped"] = t.skipped;
    o["violated"] = t.violated;
    o["witnesses"] = t.witnesses;
    j["lemmas"].push_back(o);
  }
  j["notes"] = totals.notes;
  j["clean"] = totals.clean();
  return j.dump(2) + "\n";
}

std::string sweep_summary_table(const SweepTotals& totals) {
  std::ostringstream os;
  os << std::left << std::setw(22) << "lemma" << std::right << std::setw(12) << "checked" << std::setw(12)
     << "skipped" << std::setw(10) << "violated" << "\n";
  for (const auto& [id, t] : totals.lemmas) {
    os << std::left << std::setw(22) << id << std::right << std::setw(12) << t.checked << std::setw(12) << t.skipped
       << std::setw(10) << t.violated << "\n";
  }
  os << "patches " << totals.patches << ", inadmissible " << totals.inadmissible << ", wall paths "
     << totals.walls_checked << ", wall failures " << totals.wall_failures << " (" << totals.wall_failures_in_range
     << " within verified range)\n";
  return os.str();
}

}  // namespace randwalls
