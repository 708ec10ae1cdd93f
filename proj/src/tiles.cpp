#include "randwalls/tiles.hpp"

#include "randwalls/walls.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace randwalls {

Rational TileConfig::lambda() const { return Rational(1) / (Rational(1) - Rational(4) * d); }

int TileConfig::returning_cap() const {
  if (n_ret) return *n_ret;
  Rational x = Rational(2 * c + 1) * lambda();
  std::int64_t q = x.numerator() / x.denominator();
  if (x.numerator() % x.denominator() != 0) ++q;
  return static_cast<int>(q);
}

bool TileConfig::density_fits() const {
  return d <= Rational(max_potile_size, 4 * (max_potile_size + 1));
}

const char* to_string(TileClass c) {
  switch (c) {
    case TileClass::One: return "one";
    case TileClass::Core: return "core";
    case TileClass::NonCore: return "noncore";
  }
  return "?";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::Start: return "start";
    case Provenance::Step1: return "step1";
    case Provenance::Step2: return "step2";
    case Provenance::Step3: return "step3";
  }
  return "?";
}

TileCollection::TileCollection(const PatchComplex& p, const TileConfig& cfg) : patch_(&p), cfg_(cfg) {}

std::vector<int> TileCollection::alive() const {
  std::vector<int> out;
  for (const Tile& t : tiles_) {
    if (t.alive()) out.push_back(t.id);
  }
  return out;
}

int TileCollection::add_tile(Tile t) {
  t.id = static_cast<int>(tiles_.size());
  t.can = cancellation(*patch_, t.cells);
  tiles_.push_back(t);
  return t.id;
}

std::optional<int> TileCollection::find_alive(CellSet cells) const {
  for (const Tile& t : tiles_) {
    if (t.alive() && t.cells == cells) return t.id;
  }
  return std::nullopt;
}

int TileCollection::balance(int id) const { return randwalls::balance(*patch_, tiles_.at(id).cells); }

int balance(const PatchComplex& p, CellSet cells) {
  return 2 * ((p.ell() / 4) * (cell_count(cells) + 1) - cancellation(p, cells));
}

bool is_potile(const SubComplex& y) {
  if (!y.has_cells()) throw ComplexError("potile test needs 2-cells");
  if (!is_connected(y)) throw ComplexError("potile test needs a connected subcomplex");
  int can = cancellation(y);
  return 4 * can >= y.patch->ell() * (cell_count(y.cells) - 1);
}

bool is_potile(const PatchComplex& p, CellSet cells) { return is_potile(closure(p, cells)); }

bool orbit_isomorphic(const PatchComplex& p, CellSet a, CellSet b) {
  return cell_count(a) == cell_count(b) && canonical_form(p, a) == canonical_form(p, b);
}

Age age_compare(const TileCollection& tc, int a, int b) {
  int x = tc.tile(a).birth;
  int y = tc.tile(b).birth;
  if (x == y) return Age::Incomparable;
  return x < y ? Age::Older : Age::Younger;
}

bool is_older(const TileCollection& tc, int a, int b) {
  switch (age_compare(tc, a, b)) {
    case Age::Older: return true;
    case Age::Younger: return false;
    case Age::Incomparable: return a < b;
  }
  return false;
}

namespace {

struct Candidate {
  int a;
  int b;
  int union_size;
  int inter;
  int can;
};

class Builder {
 public:
  Builder(const PatchComplex& p, const TileConfig& cfg, WallState& walls) : p_(p), tc_(p, cfg), walls_(walls) {}

  TileCollection run() {
    const TileConfig& cfg = tc_.config();
    if (p_.num_cells() > cfg.max_patch_cells) throw ComplexError("patch exceeds the configured cell cap");
    for (int c = 0; c < p_.num_cells(); ++c) {
      Tile t;
      t.cells = single_cell(c);
      remember(tc_.add_tile(t));
    }
    step_one();
    steps_two_three();
    return std::move(tc_);
  }

 private:
  int quarter_ok(int inter) const {
    int q = p_.ell() / 4;
    return tc_.config().core_strict ? inter > q : inter >= q;
  }

  void remember(int id) {
    created_.insert(tc_.tile(id).cells);
    closures_[id] = closure(p_, tc_.tile(id).cells);
  }

  int overlap_of(int a, int b) {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = overlap_cache_.find(key);
    if (it != overlap_cache_.end()) return it->second;
    int v = static_cast<int>(intersection(closures_.at(a), closures_.at(b)).edges.size());
    overlap_cache_[key] = v;
    return v;
  }

  std::string signature(int a, int b) {
    CellSet x = tc_.tile(a).cells;
    CellSet y = tc_.tile(b).cells;
    return canonical_form(p_, x) + "|" + canonical_form(p_, y) + "|" + canonical_form(p_, x | y);
  }

  // Among candidates tied with the best on the scoring key, returns the
  // labeled copies of the best pattern, best first.
  template <typename Key>
  std::vector<Candidate> copies(std::vector<Candidate> cands, Key key, std::string* tie_break) {
    std::sort(cands.begin(), cands.end(), [&](const Candidate& x, const Candidate& y) {
      auto kx = key(x);
      auto ky = key(y);
      if (kx != ky) return kx > ky;
      return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::vector<Candidate> tied;
    for (const Candidate& c : cands) {
      if (key(c) == key(cands.front())) tied.push_back(c);
    }
    *tie_break = tied.size() == 1 ? "unique" : "lowest ids among " + std::to_string(tied.size());
    std::vector<Candidate> group{tied.front()};
    if (tied.size() > 1) {
      std::string sig = signature(tied.front().a, tied.front().b);
      for (std::size_t i = 1; i < tied.size(); ++i) {
        if (signature(tied[i].a, tied[i].b) == sig) group.push_back(tied[i]);
      }
    }
    if (group.size() > 1) *tie_break += ", " + std::to_string(group.size()) + " labeled copies";
    return group;
  }

  void step_one() {
    const TileConfig& cfg = tc_.config();
    for (;;) {
      std::vector<Candidate> cands;
      auto alive = tc_.alive();
      for (std::size_t i = 0; i < alive.size(); ++i) {
        for (std::size_t j = i + 1; j < alive.size(); ++j) {
          const Tile& a = tc_.tile(alive[i]);
          const Tile& b = tc_.tile(alive[j]);
          if (a.cells & b.cells) continue;
          int u = cell_count(a.cells | b.cells);
          if (u > cfg.max_tile_size) continue;
          int inter = overlap_of(a.id, b.id);
          if (!quarter_ok(inter)) continue;
          cands.push_back({a.id, b.id, u, inter, 0});
        }
      }
      if (cands.empty()) return;
      std::string tie;
      auto group = copies(cands, [](const Candidate& c) { return std::make_pair(c.union_size, c.inter); }, &tie);
      for (const Candidate& c : group) {
        if (!tc_.tile(c.a).alive() || !tc_.tile(c.b).alive()) continue;
        glue_core(c, tie);
      }
    }
  }

  void glue_core(const Candidate& c, const std::string& tie) {
    int older = is_older(tc_, c.a, c.b) ? c.a : c.b;
    int younger = older == c.a ? c.b : c.a;
    int index = static_cast<int>(tc_.log().size()) + 1;
    Tile t;
    t.cells = tc_.tile(c.a).cells | tc_.tile(c.b).cells;
    t.cls = TileClass::Core;
    t.made_by = Provenance::Step1;
    t.birth = index;
    t.parent_a = older;
    t.parent_b = younger;
    int id = tc_.add_tile(t);
    remember(id);
    tc_.tile(older).death = index;
    tc_.tile(younger).death = index;

    GluingInfo g = bend_and_glue(tc_, older, younger, walls_, index);
    g.result = id;

    StepRecord r;
    r.index = index;
    r.step = 1;
    r.tiles = {older, younger};
    r.result = id;
    r.union_size = cell_count(t.cells);
    r.intersection_size = c.inter;
    r.can = tc_.tile(id).can;
    r.tie_break = tie;
    r.tree = !g.is_tree ? "not-a-tree" : (g.cls == TreeClass::Long ? "long" : "round");
    r.beyond_verified = cell_count(tc_.tile(younger).cells) > 3;
    r.orbit_conflict = orbit_isomorphic(p_, tc_.tile(older).cells, tc_.tile(younger).cells);
    if (r.beyond_verified) {
      tc_.warnings().push_back("step " + std::to_string(index) + ": younger tile has more than three cells");
    }
    if (r.orbit_conflict) {
      tc_.warnings().push_back("step " + std::to_string(index) + ": glued tiles are labeled copies");
    }
    tc_.add_record(r);
    tc_.add_gluing(std::move(g));
  }

  void steps_two_three() {
    const TileConfig& cfg = tc_.config();
    for (;;) {
      std::vector<Candidate> cands;
      auto alive = tc_.alive();
      for (std::size_t i = 0; i < alive.size(); ++i) {
        for (std::size_t j = i + 1; j < alive.size(); ++j) {
          const Tile& a = tc_.tile(alive[i]);
          const Tile& b = tc_.tile(alive[j]);
          if (a.cells & b.cells) continue;
          CellSet u = a.cells | b.cells;
          if (cell_count(u) > cfg.max_tile_size || created_.count(u)) continue;
          SubComplex y = closure(p_, u);
          if (!is_connected(y) || !is_potile(y)) continue;
          cands.push_back({a.id, b.id, cell_count(u), overlap_of(a.id, b.id), 0});
        }
      }
      if (cands.empty()) return;
      std::string tie;
      auto group = copies(cands, [](const Candidate& c) { return c.inter; }, &tie);
      std::vector<int> unions;
      for (const Candidate& c : group) {
        CellSet u = tc_.tile(c.a).cells | tc_.tile(c.b).cells;
        if (created_.count(u) || !tc_.tile(c.a).alive() || !tc_.tile(c.b).alive()) continue;
        int index = static_cast<int>(tc_.log().size()) + 1;
        Tile t;
        t.cells = u;
        t.cls = TileClass::NonCore;
        t.made_by = Provenance::Step2;
        t.birth = index;
        t.parent_a = c.a;
        t.parent_b = c.b;
        int id = tc_.add_tile(t);
        remember(id);
        tc_.tile(c.a).cls = TileClass::NonCore;
        tc_.tile(c.b).cls = TileClass::NonCore;
        StepRecord r;
        r.index = index;
        r.step = 2;
        r.tiles = {c.a, c.b};
        r.result = id;
        r.union_size = cell_count(u);
        r.intersection_size = c.inter;
        r.can = tc_.tile(id).can;
        r.tie_break = tie;
        tc_.add_record(r);
        unions.push_back(id);
      }
      step_three(unions);
    }
  }

  void step_three(const std::vector<int>& unions) {
    const TileConfig& cfg = tc_.config();
    for (;;) {
      std::vector<Candidate> cands;
      auto alive = tc_.alive();
      auto holds_union = [&](int id) {
        return std::any_of(unions.begin(), unions.end(), [&](int u) {
          return (tc_.tile(u).cells & ~tc_.tile(id).cells) == 0;
        });
      };
      for (std::size_t i = 0; i < alive.size(); ++i) {
        for (std::size_t j = i + 1; j < alive.size(); ++j) {
          const Tile& a = tc_.tile(alive[i]);
          const Tile& b = tc_.tile(alive[j]);
          if (a.cells & b.cells) continue;
          bool ha = holds_union(a.id);
          bool hb = holds_union(b.id);
          if (!ha && !hb) continue;
          CellSet u = a.cells | b.cells;
          if (cell_count(u) > cfg.max_tile_size || created_.count(u)) continue;
          int inter = overlap_of(a.id, b.id);
          if (!quarter_ok(inter)) continue;
          // Store R' second; when both qualify the higher id plays R'.
          Candidate c = hb ? Candidate{a.id, b.id, 0, 0, 0} : Candidate{b.id, a.id, 0, 0, 0};
          c.union_size = cell_count(u);
          c.inter = inter;
          c.can = cancellation(p_, u);
          cands.push_back(c);
        }
      }
      if (cands.empty()) return;
      std::string tie;
      auto group = copies(cands, [](const Candidate& c) { return std::make_pair(c.union_size, c.can); }, &tie);
      for (const Candidate& c : group) {
        CellSet u = tc_.tile(c.a).cells | tc_.tile(c.b).cells;
        if (created_.count(u) || !tc_.tile(c.a).alive() || !tc_.tile(c.b).alive()) continue;
        int index = static_cast<int>(tc_.log().size()) + 1;
        Tile t;
        t.cells = u;
        t.cls = TileClass::NonCore;
        t.made_by = Provenance::Step3;
        t.birth = index;
        t.parent_a = c.a;
        t.parent_b = c.b;
        int id = tc_.add_tile(t);
        remember(id);
        tc_.tile(c.a).death = index;
        tc_.tile(c.b).death = index;
        StepRecord r;
        r.index = index;
        r.step = 3;
        r.tiles = {c.a, c.b};
        r.result = id;
        r.union_size = c.union_size;
        r.intersection_size = c.inter;
        r.can = c.can;
        r.tie_break = tie;
        r.orbit_conflict = orbit_isomorphic(p_, tc_.tile(c.a).cells, tc_.tile(c.b).cells);
        if (r.orbit_conflict) {
          tc_.warnings().push_back("step " + std::to_string(index) + ": glued tiles are labeled copies");
        }
        tc_.add_record(r);
      }
    }
  }

  const PatchComplex& p_;
  TileCollection tc_;
  WallState& walls_;
  std::unordered_set<CellSet> created_;
  std::unordered_map<int, SubComplex> closures_;
  std::map<std::pair<int, int>, int> overlap_cache_;
};

}  // namespace

TileCollection build_tile_collection(const PatchComplex& p, const TileConfig& cfg, WallState& walls) {
  return Builder(p, cfg, walls).run();
}

namespace {

// Cells of `mask` covered by history tiles lying inside `mask`.
CellSet covered_by_tiles(const TileCollection& tc, CellSet mask) {
  CellSet covered = 0;
  for (const Tile& t : tc.history()) {
    if ((t.cells & ~mask) == 0) covered |= t.cells;
  }
  return covered;
}

}  // namespace

std::optional<int> first_pair(const TileCollection& tc, int id) {
  const Tile& t = tc.tile(id);
  if (t.made_by != Provenance::Step1) return std::nullopt;
  if (cell_count(t.cells) == 2) return id;
  auto a = first_pair(tc, t.parent_a);
  auto b = first_pair(tc, t.parent_b);
  if (a && b) return tc.tile(*a).birth < tc.tile(*b).birth ? a : b;
  return a ? a : b;
}

CollectionReport check_collection(const TileCollection& tc) {
  CollectionReport report;
  const PatchComplex& p = tc.patch();
  auto alive = tc.alive();
  auto step_of = [&](int id) { return tc.tile(id).birth == kStartBirth ? 0 : tc.tile(id).birth; };

  CellSet covered = 0;
  for (int id : alive) covered |= tc.tile(id).cells;
  if (covered != p.all_cells()) {
    report.violations.push_back({"cover", {}, 0, "some 2-cell lies in no tile"});
  }

  for (int a : alive) {
    const Tile& ta = tc.tile(a);
    if (ta.cls != TileClass::NonCore) {
      for (int b : alive) {
        if (a == b) continue;
        const Tile& tb = tc.tile(b);
        if (tb.cls != TileClass::NonCore && a < b && (ta.cells & tb.cells)) {
          report.violations.push_back({"item1", {a, b}, std::max(step_of(a), step_of(b)),
                                       "tiles outside NonCore share 2-cells"});
        }
        if (tb.cells != ta.cells && (tb.cells & ~ta.cells) == 0) {
          report.violations.push_back({"item1", {a, b}, step_of(a), "tile outside NonCore contains a proper subtile"});
        }
      }
    } else {
      bool has_core = std::any_of(alive.begin(), alive.end(), [&](int b) {
        return tc.tile(b).cls == TileClass::Core && (tc.tile(b).cells & ~ta.cells) == 0;
      });
      bool has_step1 = false;
      for (const Tile& t : tc.history()) {
        if (t.made_by == Provenance::Step1 && (t.cells & ~ta.cells) == 0) has_step1 = true;
      }
      if (!has_core && !has_step1) {
        CollectionViolation v{"item2", {a}, step_of(a), "NonCore tile contains no core tile"};
        if (cell_count(ta.cells) == 1) {
          report.notes.push_back(v);
        } else {
          report.violations.push_back(v);
        }
      }
    }
    for (int b : alive) {
      if (b <= a) continue;
      CellSet shared = ta.cells & tc.tile(b).cells;
      if (!shared) continue;
      for (CellSet part : {shared, ta.cells & ~shared, tc.tile(b).cells & ~shared}) {
        if (part && covered_by_tiles(tc, part) != part) {
          report.violations.push_back({"item3", {a, b}, std::max(step_of(a), step_of(b)),
                                       "overlap or difference is not a union of tiles"});
        }
      }
    }
  }

  // Younger core tiles meet older core tiles in less than ell/4 per 2-cell,
  // and their seed pairs have no more cancellation.
  const int q = p.ell() / 4;
  for (const Tile& young : tc.history()) {
    if (young.made_by != Provenance::Step1) continue;
    for (const Tile& old : tc.history()) {
      if (old.made_by != Provenance::Step1 || old.birth >= young.birth) continue;
      if (old.death >= 0 && old.death <= young.birth) continue;
      if (old.cells & young.cells) continue;
      SubComplex co = closure(p, old.cells);
      for (int c : cells_of(young.cells)) {
        int inter = static_cast<int>(intersection(co, closure(p, single_cell(c))).edges.size());
        if (inter >= q) {
          report.violations.push_back({"small-intersections", {old.id, young.id}, young.birth,
                                       "cell " + std::to_string(c) + " meets older core tile in " +
                                           std::to_string(inter) + " edges"});
        }
      }
      if (cell_count(old.cells) <= 3 && cell_count(young.cells) <= 3) {
        auto d_old = first_pair(tc, old.id);
        auto d_young = first_pair(tc, young.id);
        if (d_old && d_young && tc.tile(*d_old).can < tc.tile(*d_young).can) {
          report.violations.push_back({"subtile-age", {old.id, young.id}, young.birth,
                                       "seed pair of the older tile has less cancellation"});
        }
      }
    }
  }
  return report;
}

}  // namespace randwalls
