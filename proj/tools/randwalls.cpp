#include "randwalls/oracles.hpp"
#include "randwalls/pipeline.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace randwalls;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;
constexpr int kInadmissible = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": " + text);
  }
}

struct StreamArgs {
  std::string presentation;
  int max_cells = 4;
  int max_gluings = 6;
  int budget = 100;

  void add(CLI::App* app) {
    app->add_option("--max-cells", max_cells);
    app->add_option("--max-gluings", max_gluings);
    app->add_option("--budget", budget);
  }
  PatchStream stream(const Presentation& pres, std::uint64_t seed) const {
    return PatchStream(pres, max_cells, max_gluings, budget, seed);
  }
};

struct TileFlags {
  std::string d;
  std::string eps = "1/100";
  int max_tile_size = 5;
  int max_potile_size = 6;
  bool core_strict = false;
  bool shard_strict = false;
  bool no_bending = false;
  int c = 1;
  int n_ret = 0;

  void add(CLI::App* app) {
    app->add_option("-d,--density", d, "density p/q (defaults to the input's)");
    app->add_option("--eps", eps, "slack in the isoperimetric bound");
    app->add_option("--max-tile-size", max_tile_size);
    app->add_option("--max-potile-size", max_potile_size);
    app->add_flag("--core-strict", core_strict, "require overlap > ell/4 in Steps 1 and 3");
    app->add_flag("--shard-strict", shard_strict, "strict balance comparison in the Step-2 shard rule");
    app->add_flag("--no-bending", no_bending, "plain antipodal concatenation");
    app->add_option("--c", c, "constant in the returning cap (2c+1)*lambda");
    app->add_option("--n-ret", n_ret, "override the returning cap");
  }

  TileConfig config(const std::optional<Rational>& default_d) const {
    TileConfig t;
    if (!d.empty()) {
      t.d = rational_arg(d, "density");
    } else if (default_d) {
      t.d = *default_d;
    }
    if (t.d <= 0 || t.d >= Rational(1, 4)) throw UsageError("density must lie in (0, 1/4) for tile construction");
    t.eps = rational_arg(eps, "eps");
    t.max_tile_size = max_tile_size;
    t.max_potile_size = max_potile_size;
    t.core_strict = core_strict;
    t.shard_strict = shard_strict;
    t.bending = !no_bending;
    t.c = c;
    if (n_ret > 0) t.n_ret = n_ret;
    return t;
  }
};

int finish_build(const Build& b, const RunConfig& cfg, const std::string& out) {
  if (!b.admissibility().admissible() && !cfg.force) {
    std::cerr << "inadmissible patch (use --force to build anyway)\n" << admissibility_json(b.admissibility());
    return kInadmissible;
  }
  write_artifacts(out, build_artifacts(b, cfg));
  std::cout << summary_line(b) << "\n";
  for (const std::string& w : b.tiles().warnings()) std::cout << "warning: " << w << "\n";
  return kOk;
}

// Line-level diff of two artifact texts; empty when equal.
std::string first_difference(const std::string& expected, const std::string& actual) {
  if (expected == actual) return "";
  std::istringstream a(expected);
  std::istringstream b(actual);
  std::string la;
  std::string lb;
  for (int line = 1;; ++line) {
    bool ga = static_cast<bool>(std::getline(a, la));
    bool gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) return "trailing bytes differ";
    if (ga != gb || la != lb) {
      return "line " + std::to_string(line) + ": expected " + (ga ? la : "<end>") + ", found " + (gb ? lb : "<end>");
    }
  }
}

struct Loaded {
  RunConfig cfg;
  std::unique_ptr<Build> build;
};

Loaded load(const std::string& dir) {
  Loaded l;
  l.cfg = parse_run_config(read_file(fs::path(dir) / "run.json"));
  l.build = std::make_unique<Build>(parse_patch(read_file(fs::path(dir) / "patch.json")), l.cfg.tiles);
  return l;
}

int cmd_verify(const std::string& dir, const std::vector<std::string>& lemmas, const std::string& report) {
  for (const std::string& id : lemmas) {
    const auto& ids = lemma_ids();
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) throw UsageError("unknown lemma id: " + id);
  }
  Loaded l = load(dir);
  const Build& b = *l.build;
  int status = kOk;
  for (const auto& [name, text] : build_artifacts(b, l.cfg)) {
    std::string on_disk = read_file(fs::path(dir) / name);
    std::string diff = first_difference(text, on_disk);
    if (!diff.empty()) {
      std::cout << "VIOLATION artifact " << name << " does not match a rebuild, " << diff << "\n";
      status = kViolation;
    }
  }
  if (!b.admissibility().admissible()) {
    std::cout << "patch is inadmissible; lemma checks apply to admissible instances only\n";
    auto ret = detect_returning(b.tiles(), b.traces(), b.walls(), l.cfg.tiles.returning_cap());
    for (const ReturningHit& h : ret.hits) {
      std::cout << "returning segment on wall " << h.wall << " (length " << h.length << ", T0 tile " << h.t0
                << ") explained by the recorded admissibility violation\n";
    }
    return status;
  }

  SweepConfig sc;
  sc.tiles = l.cfg.tiles;
  sc.lemmas = lemmas;
  SweepTotals totals;
  oracle_lemma_sweep(b.patch(), sc, totals);
  std::cout << sweep_summary_table(totals);
  if (!totals.clean()) status = kViolation;
  for (const auto& [id, t] : totals.lemmas) {
    for (const std::string& w : t.witnesses) std::cout << "VIOLATION " << id << ": " << w << "\n";
  }

  if (lemmas.empty()) {
    for (const WallTrace& w : b.traces()) {
      EmbeddingReport e = check_embedded(b.patch(), w);
      if (!e.embedded) {
        std::cout << "VIOLATION wall " << w.id << " is not embedded (" << e.problem << ")\n";
        status = kViolation;
      }
    }
    auto ret = detect_returning(b.tiles(), b.traces(), b.walls(), l.cfg.tiles.returning_cap());
    std::cout << "returning scan: " << ret.segments << " segments, " << ret.hits.size() << " hits\n";
    for (const ReturningHit& h : ret.hits) {
      std::cout << "VIOLATION returning segment on wall " << h.wall << " length " << h.length << " at tile " << h.t0
                << "\n";
      status = kViolation;
    }
  }
  if (!report.empty()) emit(sweep_report_json(totals), report);
  std::cout << (status == kOk ? "verify: ok" : "verify: violations found") << "\n";
  return status;
}

int cmd_export(const std::string& dir, const std::string& format, const std::string& out) {
  if (format != "dot" && format != "json") throw UsageError("unknown export format: " + format);
  Loaded l = load(dir);
  const Build& b = *l.build;
  if (format == "dot") {
    std::ostringstream os;
    auto segs = wall_segments(b.patch(), b.traces());
    write_dot(b.patch(), os, &segs);
    emit(os.str(), out);
    return kOk;
  }
  try {
    emit(wallspace_json(export_wallspace(b.patch(), b.traces(), l.cfg.tiles)), out);
  } catch (const ComplexError& e) {
    std::cerr << e.what() << "\n";
    return kViolation;
  }
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Tiles, walls and checks on finite patches of random presentations"};
  app.set_config("--config", "", "key=value configuration file");
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "run seed")->envname("RANDWALLS_SEED")->capture_default_str();

  // Each subcommand owns its values so config sections cannot leak between them.
  int n = 2;
  std::string d_text = "3/14";
  int ell0 = 14;
  std::string sample_out;
  auto* sample = app.add_subcommand("sample", "sample a random presentation");
  sample->add_option("-n", n, "number of generators");
  sample->add_option("-d,--density", d_text, "density p/q");
  sample->add_option("--ell0", ell0, "relator length before subdivision");
  sample->add_option("--out", sample_out, "output file (stdout if omitted)");

  StreamArgs listing;
  std::string patches_out;
  auto* patches = app.add_subcommand("patches", "enumerate fulfilled patches of a presentation");
  patches->add_option("--presentation", listing.presentation)->required();
  listing.add(patches);
  patches->add_option("--out", patches_out);

  std::string fixture;
  std::string patch_path;
  StreamArgs building;
  int ell = 0;
  int patch_index = 0;
  bool force = false;
  std::string build_out;
  TileFlags flags;
  auto* build = app.add_subcommand("build", "construct tiles and walls and write artifacts");
  auto* src = build->add_option_group("input");
  src->add_option("--fixture", fixture, "catalog fixture name");
  src->add_option("--presentation", building.presentation, "presentation JSON; builds one sampled patch");
  src->add_option("--patch", patch_path, "patch JSON");
  src->require_option(1);
  build->add_option("--ell", ell, "fixture scale");
  build->add_option("--patch-index", patch_index, "which sampled patch to build");
  building.add(build);
  build->add_option("--out", build_out, "artifact directory")->required();
  build->add_flag("--force", force, "build inadmissible patches");
  flags.add(build);

  std::string verify_artifacts;
  std::vector<std::string> lemmas;
  std::string report;
  auto* verify = app.add_subcommand("verify", "rebuild from artifacts and run every check");
  verify->add_option("--artifacts", verify_artifacts)->required();
  verify->add_option("--lemmas", lemmas, "restrict to these lemma ids")->delimiter(',');
  verify->add_option("--report", report, "write the oracle report JSON here");

  std::string export_artifacts;
  std::string format;
  std::string export_out;
  auto* exp = app.add_subcommand("export", "export walls as DOT or wallspace JSON");
  exp->add_option("--artifacts", export_artifacts)->required();
  exp->add_option("--format", format)->required();
  exp->add_option("--out", export_out);

  std::string fx_out;
  bool fx_force = false;
  TileFlags fx_flags;
  auto* fixtures = app.add_subcommand("fixtures", "fixture catalog");
  fixtures->require_subcommand(1);
  auto* fx_list = fixtures->add_subcommand("list", "list catalog fixtures");
  auto* fx_build = fixtures->add_subcommand("build", "build every fixture into a directory");
  fx_build->add_option("--out", fx_out)->required();
  fx_build->add_flag("--force", fx_force);
  fx_flags.add(fx_build);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*sample) {
    Rational d = rational_arg(d_text, "density");
    if (d <= 0 || d >= 1) throw UsageError("density must lie in (0, 1)");
    Presentation p = sample_presentation(n, d, ell0, seed);
    emit(presentation_json(p), sample_out);
    std::cerr << p.relators.size() << " relators of length " << p.ell() << "\n";
    return kOk;
  }
  if (*patches) {
    Presentation pres = parse_presentation(read_file(listing.presentation));
    PatchStream stream = listing.stream(pres, seed);
    std::string text;
    while (auto patch = stream.next()) text += patch_json(*patch) + "\n";
    emit(text, patches_out);
    std::cerr << stream.emitted() << " patches from " << stream.attempts() << " attempts\n";
    return kOk;
  }
  if (*build) {
    RunConfig cfg;
    cfg.seed = seed;
    cfg.force = force;
    if (!fixture.empty()) {
      const FixtureSpec& spec = find_fixture(fixture);
      cfg.source = "fixture:" + fixture;
      cfg.ell = ell;
      cfg.tiles = flags.config(spec.d);
      return finish_build(Build(build_fixture(spec, ell > 0 ? ell : spec.ell), cfg.tiles), cfg, build_out);
    }
    if (!patch_path.empty()) {
      cfg.source = "patch";
      cfg.tiles = flags.config(std::nullopt);
      return finish_build(Build(parse_patch(read_file(patch_path)), cfg.tiles), cfg, build_out);
    }
    Presentation pres = parse_presentation(read_file(building.presentation));
    cfg.source = "presentation";
    cfg.tiles = flags.config(pres.d);
    PatchStream stream = building.stream(pres, seed);
    for (int i = 0;; ++i) {
      auto patch = stream.next();
      if (!patch) throw UsageError("presentation yielded fewer than " + std::to_string(patch_index + 1) + " patches");
      if (i == patch_index) return finish_build(Build(std::move(*patch), cfg.tiles), cfg, build_out);
    }
  }
  if (*verify) return cmd_verify(verify_artifacts, lemmas, report);
  if (*exp) return cmd_export(export_artifacts, format, export_out);
  if (*fx_list) {
    for (const FixtureSpec& f : fixture_catalog()) {
      std::cout << f.name << "  ell=" << f.ell << "  cells=" << f.cells.size() << "  " << f.description << "\n";
    }
    return kOk;
  }
  if (*fx_build) {
    int status = kOk;
    for (const FixtureSpec& f : fixture_catalog()) {
      RunConfig cfg;
      cfg.seed = seed;
      cfg.force = fx_force;
      cfg.source = "fixture:" + f.name;
      cfg.tiles = fx_flags.config(f.d);
      std::cout << f.name << ": ";
      int s = finish_build(Build(build_fixture(f, f.ell), cfg.tiles), cfg, (fs::path(fx_out) / f.name).string());
      if (s != kOk) std::cout << "skipped (inadmissible)\n";
      status = std::max(status, s);
    }
    return status;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
}
