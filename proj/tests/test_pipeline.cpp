#include "randwalls/pipeline.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace randwalls;

TEST(RunConfig, RoundTrip) {
  RunConfig cfg;
  cfg.tiles.d = Rational(3, 14);
  cfg.tiles.eps = Rational(1, 50);
  cfg.tiles.core_strict = true;
  cfg.tiles.bending = false;
  cfg.tiles.n_ret = 9;
  cfg.source = "fixture:wallcases";
  cfg.ell = 80;
  cfg.seed = 12345678901234ULL;
  std::string text = run_config_json(cfg);
  EXPECT_EQ(run_config_json(parse_run_config(text)), text);
  RunConfig back = parse_run_config(text);
  EXPECT_EQ(back.tiles.d, Rational(3, 14));
  EXPECT_EQ(back.seed, cfg.seed);
  EXPECT_FALSE(back.tiles.bending);
}

TEST(Presentation, RoundTrip) {
  Presentation p = sample_presentation(2, Rational(3, 14), 14, 4);
  std::string text = presentation_json(p);
  Presentation back = parse_presentation(text);
  EXPECT_EQ(back.relators, p.relators);
  EXPECT_EQ(back.ell(), 28);
  EXPECT_EQ(presentation_json(back), text);
}

TEST(Patch, RoundTripKeepsLabels) {
  Presentation pres = sample_presentation(2, Rational(3, 14), 20, 2);
  RelatorLabels labels = subdivided_labels(pres);
  PatchStream s(pres, 3, 3, 30, 2);
  while (auto p = s.next()) {
    std::string text = patch_json(*p);
    PatchComplex back = parse_patch(text, &labels);
    EXPECT_EQ(patch_json(back), text);
    EXPECT_EQ(back.num_edges(), p->num_edges());
    EXPECT_EQ(canonical_form(back, back.all_cells()), canonical_form(*p, p->all_cells()));
  }
}

TEST(Patch, MalformedJsonThrows) {
  EXPECT_ANY_THROW(parse_patch("{\"ell\": 8}"));
  EXPECT_ANY_THROW(parse_patch("not json"));
}

TEST(Artifacts, DeterministicAcrossBuilds) {
  for (const FixtureSpec& f : fixture_catalog()) {
    RunConfig cfg;
    if (f.d) cfg.tiles.d = *f.d;
    cfg.source = "fixture:" + f.name;
    Build a(build_fixture(f, f.ell), cfg.tiles);
    Build b(build_fixture(f, f.ell), cfg.tiles);
    EXPECT_EQ(build_artifacts(a, cfg), build_artifacts(b, cfg)) << f.name;
  }
}

TEST(Artifacts, JsonFilesParse) {
  const FixtureSpec& f = find_fixture("wallcases");
  RunConfig cfg;
  Build b(build_fixture(f, f.ell), cfg.tiles);
  for (const auto& [name, text] : build_artifacts(b, cfg)) {
    if (name.ends_with(".jsonl")) {
      std::size_t start = 0;
      while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        EXPECT_NO_THROW((void)nlohmann::json::parse(text.substr(start, end - start))) << name;
        start = end + 1;
      }
    } else {
      EXPECT_NO_THROW((void)nlohmann::json::parse(text)) << name;
    }
  }
}

TEST(Artifacts, WriteAndReadBack) {
  const FixtureSpec& f = find_fixture("balancing2tile");
  RunConfig cfg;
  Build b(build_fixture(f, f.ell), cfg.tiles);
  auto files = build_artifacts(b, cfg);
  auto dir = std::filesystem::temp_directory_path() / "randwalls_pipeline_test";
  std::filesystem::remove_all(dir);
  write_artifacts(dir, files);
  for (const auto& [name, text] : files) EXPECT_EQ(read_file(dir / name), text);
  PatchComplex again = parse_patch(read_file(dir / "patch.json"));
  Build rebuilt(std::move(again), parse_run_config(read_file(dir / "run.json")).tiles);
  EXPECT_EQ(bends_jsonl(rebuilt.walls()), read_file(dir / "bends.jsonl"));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(read_file(dir / "missing"), std::runtime_error);
}

TEST(Artifacts, SummaryLineMentionsTiles) {
  const FixtureSpec& f = find_fixture("updatedlifeofatile");
  Build b(build_fixture(f, f.ell), TileConfig{});
  EXPECT_NE(summary_line(b).find("tiles"), std::string::npos) << summary_line(b);
}
