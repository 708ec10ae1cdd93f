#pragma once

#include "randwalls/complex.hpp"
#include "randwalls/sampler.hpp"
#include "randwalls/tiles.hpp"
#include "randwalls/tracer.hpp"
#include "randwalls/walls.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace randwalls {

// Everything needed to reproduce a build from its artifact directory.
struct RunConfig {
  TileConfig tiles;
  std::string source;  // "fixture:<name>", "presentation" or "patch"
  int ell = 0;         // fixture scale, 0 for the catalog default
  std::uint64_t seed = 1;
  bool force = false;
};

std::string run_config_json(const RunConfig& cfg);
RunConfig parse_run_config(const std::string& json_text);

std::string presentation_json(const Presentation& p);
Presentation parse_presentation(const std::string& json_text);

std::string patch_json(const PatchComplex& p);
PatchComplex parse_patch(const std::string& json_text, const RelatorLabels* labels = nullptr);

// Owns the patch so that the wall state and tile collection can refer to it.
class Build {
 public:
  Build(PatchComplex patch, const TileConfig& cfg);
  Build(const Build&) = delete;
  Build& operator=(const Build&) = delete;

  const PatchComplex& patch() const { return *patch_; }
  const WallState& walls() const { return *state_; }
  const TileCollection& tiles() const { return *tiles_; }
  const AdmissibilityReport& admissibility() const { return adm_; }
  const std::vector<WallTrace>& traces() const { return traces_; }

 private:
  std::unique_ptr<PatchComplex> patch_;
  std::unique_ptr<WallState> state_;
  std::unique_ptr<TileCollection> tiles_;
  AdmissibilityReport adm_;
  std::vector<WallTrace> traces_;
};

std::string steps_jsonl(const TileCollection& tc);
std::string bends_jsonl(const WallState& s);
std::string tiles_json(const TileCollection& tc);
std::string walls_json(const TileCollection& tc, const WallState& s);
std::string admissibility_json(const AdmissibilityReport& r);

// File name -> contents, in a fixed order.
std::vector<std::pair<std::string, std::string>> build_artifacts(const Build& b, const RunConfig& cfg);
void write_artifacts(const std::filesystem::path& dir, const std::vector<std::pair<std::string, std::string>>& files);

std::string read_file(const std::filesystem::path& path);

std::string summary_line(const Build& b);

}  // namespace randwalls
