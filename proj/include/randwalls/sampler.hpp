#pragma once

#include "randwalls/complex.hpp"
#include "randwalls/rational.hpp"
#include "randwalls/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace randwalls {

// Words use a..z for generators and A..Z for their inverses.
struct Presentation {
  int n = 2;
  Rational d{1, 4};
  int ell0 = 4;
  int subdivision = 1;
  std::vector<std::string> relators;
  std::vector<std::string> warnings;

  int ell() const { return ell0 * subdivision; }
};

// floor((2n-1)^(d*ell0)), exact.
std::int64_t relator_count(int n, const Rational& d, int ell0);
// Least k in {1, 2, 4} with 4 | k*ell0.
int subdivision_for(int ell0);
bool is_cyclically_reduced(const std::string& w);

// Throws std::invalid_argument on n < 2, n > 26, d outside (0,1), ell0 < 1,
// or a relator count above max_relators.
Presentation sample_presentation(int n, const Rational& d, int ell0, std::uint64_t seed,
                                 std::int64_t max_relators = 2'000'000);

// Letters of each relator after subdivision, indexed by position on the polygon.
RelatorLabels subdivided_labels(const Presentation& p);

// Emits distinct (up to labeled isomorphism) fulfilled patches. With
// max_cells == 1 the lone polygons are listed exhaustively; otherwise patches
// are grown at random by gluing relator polygons along matching boundary runs.
class PatchStream {
 public:
  PatchStream(const Presentation& p, int max_cells, int max_gluings, int budget, std::uint64_t seed);

  std::optional<PatchComplex> next();
  int emitted() const { return emitted_; }
  int attempts() const { return attempts_; }

 private:
  struct Occurrence {
    int relator;
    bool inverted;
    int offset;
  };

  std::optional<PatchComplex> next_lone();
  std::optional<PatchComplex> grow();
  Letter cell_letter(const CellSpec& c, int slot) const;
  const std::vector<Occurrence>& candidates(const std::vector<Letter>& w);
  int sample_length();

  const Presentation* presentation_;
  RelatorLabels labels_;
  int ell_;
  int max_cells_;
  int max_gluings_;
  int budget_;
  int emitted_ = 0;
  int attempts_ = 0;
  int lone_cursor_ = 0;
  Rng rng_;
  std::unordered_set<std::string> seen_;
  std::map<int, std::unordered_map<std::uint64_t, std::vector<Occurrence>>> index_;
  std::vector<Occurrence> scratch_;
};

// Catalog position: (num/den) * ell + offset.
struct ScaledLength {
  std::int64_t num = 0;
  std::int64_t den = 1;
  int offset = 0;

  int at(int ell) const;
};

ScaledLength parse_scaled(const std::string& text);

struct FixtureGluing {
  std::string a;
  std::string b;
  ScaledLength start_a;
  ScaledLength start_b;
  ScaledLength length;
  bool reversed = false;
};

struct FixtureSpec {
  std::string name;
  std::string description;
  int ell = 0;  // default scale
  std::optional<Rational> d;
  std::vector<std::string> cells;
  std::vector<FixtureGluing> gluings;

  int cell(const std::string& label) const;
  bool compatible(int ell) const;
};

const std::vector<FixtureSpec>& fixture_catalog();
std::vector<FixtureSpec> parse_fixture_catalog(const std::string& json_text);
const FixtureSpec& find_fixture(const std::string& name);
// Each cell gets its own relator index, so every fixture is fulfilled.
PatchComplex build_fixture(const FixtureSpec& spec, int ell);

}  // namespace randwalls
