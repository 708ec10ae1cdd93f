#include "randwalls/pipeline.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace randwalls {

using ojson = nlohmann::ordered_json;

std::string run_config_json(const RunConfig& cfg) {
  const TileConfig& t = cfg.tiles;
  ojson j;
  j["source"] = cfg.source;
  j["ell"] = cfg.ell;
  j["seed"] = cfg.seed;
  j["force"] = cfg.force;
  j["d"] = format_rational(t.d);
  j["eps"] = format_rational(t.eps);
  j["max_tile_size"] = t.max_tile_size;
  j["max_potile_size"] = t.max_potile_size;
  j["max_patch_cells"] = t.max_patch_cells;
  j["core_strict"] = t.core_strict;
  j["shard_strict"] = t.shard_strict;
  j["bending"] = t.bending;
  j["c"] = t.c;
  if (t.n_ret) j["n_ret"] = *t.n_ret;
  return j.dump(2) + "\n";
}

RunConfig parse_run_config(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  RunConfig cfg;
  TileConfig& t = cfg.tiles;
  cfg.source = j.value("source", "");
  cfg.ell = j.value("ell", 0);
  cfg.seed = j.value("seed", std::uint64_t{1});
  cfg.force = j.value("force", false);
  t.d = parse_rational(j.at("d").get<std::string>());
  t.eps = parse_rational(j.at("eps").get<std::string>());
  t.max_tile_size = j.value("max_tile_size", t.max_tile_size);
  t.max_potile_size = j.value("max_potile_size", t.max_potile_size);
  t.max_patch_cells = j.value("max_patch_cells", t.max_patch_cells);
  t.core_strict = j.value("core_strict", false);
  t.shard_strict = j.value("shard_strict", false);
  t.bending = j.value("bending", true);
  t.c = j.value("c", 1);
  if (j.contains("n_ret")) t.n_ret = j.at("n_ret").get<int>();
  return cfg;
}

std::string presentation_json(const Presentation& p) {
  ojson j;
  j["n"] = p.n;
  j["d"] = format_rational(p.d);
  j["ell0"] = p.ell0;
  j["subdivision"] = p.subdivision;
  j["ell"] = p.ell();
  j["relators"] = p.relators;
  j["warnings"] = p.warnings;
  return j.dump(2) + "\n";
}

Presentation parse_presentation(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  Presentation p;
  p.n = j.at("n").get<int>();
  p.d = parse_rational(j.at("d").get<std::string>());
  p.ell0 = j.at("ell0").get<int>();
  p.subdivision = j.at("subdivision").get<int>();
  p.relators = j.at("relators").get<std::vector<std::string>>();
  p.warnings = j.value("warnings", std::vector<std::string>{});
  if (p.subdivision != subdivision_for(p.ell0)) throw std::invalid_argument("inconsistent subdivision");
  return p;
}

std::string patch_json(const PatchComplex& p) {
  ojson j;
  j["ell"] = p.ell();
  j["cells"] = ojson::array();
  for (const CellSpec& c : p.cells()) {
    j["cells"].push_back({{"relator", c.relator}, {"rotation", c.rotation}, {"inverted", c.inverted}});
  }
  j["gluings"] = ojson::array();
  for (const Gluing& g : p.gluings()) {
    j["gluings"].push_back({{"cell_a", g.cell_a},
                            {"start_a", g.start_a},
                            {"cell_b", g.cell_b},
                            {"start_b", g.start_b},
                            {"length", g.length},
                            {"reversed", g.reversed}});
  }
  return j.dump();
}

PatchComplex parse_patch(const std::string& json_text, const RelatorLabels* labels) {
  auto j = nlohmann::json::parse(json_text);
  std::vector<CellSpec> cells;
  for (const auto& c : j.at("cells")) {
    cells.push_back({c.at("relator").get<int>(), c.at("rotation").get<int>(), c.at("inverted").get<bool>()});
  }
  std::vector<Gluing> gluings;
  for (const auto& g : j.at("gluings")) {
    gluings.push_back({g.at("cell_a").get<int>(), g.at("start_a").get<int>(), g.at("cell_b").get<int>(),
                       g.at("start_b").get<int>(), g.at("length").get<int>(), g.at("reversed").get<bool>()});
  }
  return PatchComplex(j.at("ell").get<int>(), std::move(cells), std::move(gluings), labels);
}

Build::Build(PatchComplex patch, const TileConfig& cfg)
    : patch_(std::make_unique<PatchComplex>(std::move(patch))),
      state_(std::make_unique<WallState>(*patch_)),
      tiles_(std::make_unique<TileCollection>(build_tile_collection(*patch_, cfg, *state_))),
      adm_(check_admissibility(*patch_, cfg.d, cfg.eps)),
      traces_(trace_walls(*patch_, *state_)) {}

namespace {

std::vector<int> sorted_cells(CellSet s) { return cells_of(s); }

}  // namespace

std::string steps_jsonl(const TileCollection& tc) {
  std::string out;
  for (const StepRecord& r : tc.log()) {
    ojson j;
    j["index"] = r.index;
    j["step"] = r.step;
    j["tiles"] = r.tiles;
    j["result"] = r.result;
    j["cells"] = sorted_cells(tc.tile(r.result).cells);
    j["union_size"] = r.union_size;
    j["intersection"] = r.intersection_size;
    j["can"] = r.can;
    j["tie_break"] = r.tie_break;
    if (!r.tree.empty()) j["tree"] = r.tree;
    j["beyond_verified"] = r.beyond_verified;
    j["orbit_conflict"] = r.orbit_conflict;
    out += j.dump() + "\n";
  }
  return out;
}

std::string bends_jsonl(const WallState& s) {
  std::string out;
  for (const BendRecord& b : s.bends()) {
    ojson j;
    j["gluing_step"] = b.gluing_step;
    j["cell"] = b.cell;
    j["alpha_side"] = std::string(1, b.alpha_side);
    j["from_midpoint"] = b.from_midpoint;
    j["to_midpoint"] = b.to_midpoint;
    j["from_slot"] = b.from_slot;
    j["to_slot"] = b.to_slot;
    out += j.dump() + "\n";
  }
  return out;
}

std::string tiles_json(const TileCollection& tc) {
  ojson j;
  j["tiles"] = ojson::array();
  for (const Tile& t : tc.history()) {
    ojson o;
    o["id"] = t.id;
    o["cells"] = sorted_cells(t.cells);
    o["class"] = to_string(t.cls);
    o["made_by"] = to_string(t.made_by);
    if (t.birth != kStartBirth) o["birth"] = t.birth;
    if (t.death >= 0) o["death"] = t.death;
    if (t.parent_a >= 0) o["parents"] = {t.parent_a, t.parent_b};
    o["can"] = t.can;
    o["balance_half"] = tc.balance(t.id);
    o["alive"] = t.alive();
    j["tiles"].push_back(o);
  }
  j["warnings"] = tc.warnings();
  return j.dump(2) + "\n";
}

std::string walls_json(const TileCollection& tc, const WallState& s) {
  const PatchComplex& p = tc.patch();
  ojson j;
  j["tiles"] = ojson::array();
  for (int id : tc.alive()) {
    ojson o;
    o["tile"] = id;
    o["walls"] = ojson::array();
    for (const TileWall& w : tile_walls(p, tc.tile(id).cells, s)) {
      // Walls are listed as midpoint sequences along a longest path.
      auto paths = wall_paths(p, w);
      std::vector<int> seq = w.midpoints;
      std::size_t best = 0;
      for (const WallPath& path : paths) {
        if (path.midpoints.size() > best) {
          best = path.midpoints.size();
          seq = path.midpoints;
        }
      }
      o["walls"].push_back(seq);
    }
    j["tiles"].push_back(o);
  }
  j["matchings"] = ojson::array();
  for (int c = 0; c < p.num_cells(); ++c) j["matchings"].push_back(s.matching(c));
  return j.dump(2) + "\n";
}

std::string admissibility_json(const AdmissibilityReport& r) {
  ojson j;
  j["admissible"] = r.admissible();
  j["ipi"] = ojson::array();
  for (const IpiViolation& v : r.ipi) {
    j["ipi"].push_back({{"cells", sorted_cells(v.cells)},
                        {"can", v.can},
                        {"bound", format_rational(v.bound)},
                        {"kind", v.kind}});
  }
  j["geodesics"] = ojson::array();
  for (const CycleWitness& c : r.geodesics.violations) {
    j["geodesics"].push_back({{"edges", c.edges}, {"length", c.length}});
  }
  return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> build_artifacts(const Build& b, const RunConfig& cfg) {
  return {
      {"run.json", run_config_json(cfg)},
      {"patch.json", patch_json(b.patch()) + "\n"},
      {"admissibility.json", admissibility_json(b.admissibility())},
      {"steps.jsonl", steps_jsonl(b.tiles())},
      {"bends.jsonl", bends_jsonl(b.walls())},
      {"tiles.json", tiles_json(b.tiles())},
      {"walls.json", walls_json(b.tiles(), b.walls())},
  };
}

void write_artifacts(const std::filesystem::path& dir, const std::vector<std::pair<std::string, std::string>>& files) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : files) {
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
    out << text;
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string summary_line(const Build& b) {
  int counts[3] = {0, 0, 0};
  for (int id : b.tiles().alive()) ++counts[static_cast<int>(b.tiles().tile(id).cls)];
  std::ostringstream os;
  os << "cells " << b.patch().num_cells() << ", tiles one=" << counts[0] << " core=" << counts[1]
     << " noncore=" << counts[2] << ", walls " << b.traces().size() << ", bends " << b.walls().bends().size()
     << ", " << (b.admissibility().admissible() ? "admissible" : "inadmissible");
  return os.str();
}

}  // namespace randwalls
