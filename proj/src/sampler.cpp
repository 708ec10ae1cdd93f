#include "randwalls/sampler.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include <algorithm>
#include <stdexcept>

namespace randwalls {

std::int64_t relator_count(int n, const Rational& d, int ell0) {
  using boost::multiprecision::cpp_int;
  // Largest m with m^q <= (2n-1)^p where d*ell0 = p/q.
  Rational e = d * Rational(ell0);
  if (e <= 0) return 0;
  const auto p = static_cast<unsigned>(e.numerator());
  const auto q = static_cast<unsigned>(e.denominator());
  cpp_int target = boost::multiprecision::pow(cpp_int(2 * n - 1), p);
  cpp_int lo = 1;
  cpp_int hi = 1;
  while (boost::multiprecision::pow(hi, q) <= target) hi *= 2;
  while (hi - lo > 1) {
    cpp_int mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, q) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (lo > cpp_int(std::numeric_limits<std::int64_t>::max())) {
    return std::numeric_limits<std::int64_t>::max();
  }
  return lo.convert_to<std::int64_t>();
}

int subdivision_for(int ell0) {
  for (int k : {1, 2, 4}) {
    if ((k * ell0) % 4 == 0) return k;
  }
  return 4;
}

namespace {

char inverse_letter(char c) {
  return (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c - 'A' + 'a');
}

}  // namespace

bool is_cyclically_reduced(const std::string& w) {
  if (w.empty()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[(i + 1) % w.size()] == inverse_letter(w[i])) return false;
  }
  return true;
}

Presentation sample_presentation(int n, const Rational& d, int ell0, std::uint64_t seed,
                                 std::int64_t max_relators) {
  if (n < 2 || n > 26) throw std::invalid_argument("n must lie in [2, 26]");
  if (d <= 0 || d >= 1) throw std::invalid_argument("d must lie in (0, 1)");
  if (ell0 < 1) throw std::invalid_argument("ell0 must be positive");
  Presentation p;
  p.n = n;
  p.d = d;
  p.ell0 = ell0;
  p.subdivision = subdivision_for(ell0);
  std::int64_t count = relator_count(n, d, ell0);
  if (count > max_relators) {
    throw std::invalid_argument("relator count " + std::to_string(count) + " exceeds cap");
  }
  if (count == 0) p.warnings.push_back("relator count is 0: d*ell0 too small");
  if (ell0 == 1) p.warnings.push_back("no cyclically reduced word of length 1 exists for a single letter");

  Rng rng(seed, "sampler.relators");
  std::unordered_set<std::string> distinct;
  for (std::int64_t i = 0; i < count; ++i) {
    std::string w;
    do {
      w.clear();
      for (int j = 0; j < ell0; ++j) {
        char c;
        do {
          int g = static_cast<int>(rng.below(2 * n));
          c = g < n ? static_cast<char>('a' + g) : static_cast<char>('A' + g - n);
        } while (!w.empty() && c == inverse_letter(w.back()));
        w.push_back(c);
      }
    } while (!is_cyclically_reduced(w));
    distinct.insert(w);
    p.relators.push_back(std::move(w));
  }
  if (static_cast<std::int64_t>(distinct.size()) < count) {
    p.warnings.push_back(std::to_string(count - static_cast<std::int64_t>(distinct.size())) +
                         " duplicate relators");
  }
  return p;
}

RelatorLabels subdivided_labels(const Presentation& p) {
  const int k = p.subdivision;
  RelatorLabels out;
  for (const std::string& w : p.relators) {
    std::vector<Letter> labels;
    for (char c : w) {
      bool positive = c >= 'a' && c <= 'z';
      int g = positive ? c - 'a' : c - 'A';
      for (int j = 0; j < k; ++j) {
        labels.push_back(positive ? Letter{g * k + j, 1} : Letter{g * k + (k - 1 - j), -1});
      }
    }
    out.push_back(std::move(labels));
  }
  return out;
}

PatchStream::PatchStream(const Presentation& p, int max_cells, int max_gluings, int budget, std::uint64_t seed)
    : presentation_(&p),
      labels_(subdivided_labels(p)),
      ell_(p.ell()),
      max_cells_(max_cells),
      max_gluings_(max_gluings),
      budget_(budget),
      rng_(seed, "sampler.patches") {}

std::optional<PatchComplex> PatchStream::next() {
  if (emitted_ >= budget_ || labels_.empty() || max_cells_ < 1) return std::nullopt;
  if (max_cells_ == 1) return next_lone();
  const int max_attempts = 50 * budget_ + 1000;
  while (attempts_ < max_attempts) {
    ++attempts_;
    if (auto patch = grow()) {
      ++emitted_;
      return patch;
    }
  }
  return std::nullopt;
}

std::optional<PatchComplex> PatchStream::next_lone() {
  while (lone_cursor_ < static_cast<int>(labels_.size())) {
    int r = lone_cursor_++;
    ++attempts_;
    PatchComplex patch(ell_, {CellSpec{r, 0, false}}, {}, &labels_);
    if (seen_.insert(canonical_form(patch, patch.all_cells())).second) {
      ++emitted_;
      return patch;
    }
  }
  return std::nullopt;
}

Letter PatchStream::cell_letter(const CellSpec& c, int slot) const {
  int t = c.inverted ? ((c.rotation - slot - 1) % ell_ + ell_) % ell_ : (c.rotation + slot) % ell_;
  Letter l = labels_[c.relator][t];
  return c.inverted ? inverse(l) : l;
}

namespace {

constexpr int kIndexWidth = 8;

std::uint64_t key_of(const std::vector<Letter>& w, int m) {
  std::uint64_t key = 0;
  for (int i = 0; i < m; ++i) {
    key = (key << 8) | static_cast<std::uint64_t>(w[i].edge * 2 + (w[i].dir > 0 ? 1 : 0));
  }
  return key;
}

}  // namespace

const std::vector<PatchStream::Occurrence>& PatchStream::candidates(const std::vector<Letter>& w) {
  const int m = std::min<int>(static_cast<int>(w.size()), kIndexWidth);
  auto [slot, fresh] = index_.try_emplace(m);
  auto& table = slot->second;
  if (fresh) {
    std::vector<Letter> window(m);
    for (int r = 0; r < static_cast<int>(labels_.size()); ++r) {
      for (bool inv : {false, true}) {
        CellSpec c{r, 0, inv};
        for (int o = 0; o < ell_; ++o) {
          for (int i = 0; i < m; ++i) window[i] = cell_letter(c, o + i);
          table[key_of(window, m)].push_back({r, inv, o});
        }
      }
    }
  }
  scratch_.clear();
  auto it = table.find(key_of(w, m));
  if (it == table.end()) return scratch_;
  for (const Occurrence& occ : it->second) {
    CellSpec c{occ.relator, 0, occ.inverted};
    bool match = true;
    for (int i = m; i < static_cast<int>(w.size()) && match; ++i) match = cell_letter(c, occ.offset + i) == w[i];
    if (match) scratch_.push_back(occ);
  }
  return scratch_;
}

int PatchStream::sample_length() {
  const int quarter = ell_ / 4;
  if (rng_.chance(3, 4)) return static_cast<int>(rng_.range(quarter, ell_ / 2));
  return static_cast<int>(rng_.range(1, std::max(1, quarter - 1)));
}

std::optional<PatchComplex> PatchStream::grow() {
  const int cap = std::min(max_cells_, max_gluings_ + 1);
  const int target = static_cast<int>(rng_.range(1, std::max(1, cap)));
  std::vector<CellSpec> cells{CellSpec{static_cast<int>(rng_.below(labels_.size())), 0, false}};
  std::vector<Gluing> gluings;
  int failures = 0;
  while (static_cast<int>(cells.size()) < target && failures < 20) {
    int c = static_cast<int>(rng_.below(cells.size()));
    int s = static_cast<int>(rng_.below(ell_));
    int len = sample_length();
    std::vector<Letter> w;
    for (int i = 0; i < len; ++i) w.push_back(cell_letter(cells[c], s + i));
    // Fall back to shorter runs until some relator occurrence matches.
    const std::vector<Occurrence>* found = nullptr;
    while (!w.empty()) {
      found = &candidates(w);
      if (!found->empty()) break;
      w.pop_back();
    }
    if (w.empty() || found->empty()) {
      ++failures;
      continue;
    }
    const Occurrence& occ = (*found)[rng_.below(found->size())];
    CellSpec b{occ.relator, occ.inverted ? (ell_ - occ.offset) % ell_ : occ.offset, occ.inverted};
    std::vector<CellSpec> trial_cells = cells;
    trial_cells.push_back(b);
    std::vector<Gluing> trial_gluings = gluings;
    trial_gluings.push_back({c, s, static_cast<int>(cells.size()), 0, static_cast<int>(w.size()), false});
    try {
      PatchComplex check(ell_, trial_cells, trial_gluings, &labels_);
    } catch (const ComplexError&) {
      ++failures;
      continue;
    }
    cells = std::move(trial_cells);
    gluings = std::move(trial_gluings);
  }
  PatchComplex patch(ell_, std::move(cells), std::move(gluings), &labels_);
  if (!seen_.insert(canonical_form(patch, patch.all_cells())).second) return std::nullopt;
  return patch;
}

int ScaledLength::at(int ell) const {
  std::int64_t scaled = num * ell;
  if (scaled % den != 0) {
    throw std::invalid_argument("ell=" + std::to_string(ell) + " is not divisible by " + std::to_string(den));
  }
  return static_cast<int>(scaled / den) + offset;
}

ScaledLength parse_scaled(const std::string& text) {
  ScaledLength s;
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    s.num = 0;
    s.offset = std::stoi(text);
    return s;
  }
  std::size_t sign = text.find_first_of("+-", slash);
  Rational r = parse_rational(text.substr(0, sign));
  s.num = r.numerator();
  s.den = r.denominator();
  if (sign != std::string::npos) s.offset = std::stoi(text.substr(sign));
  return s;
}

int FixtureSpec::cell(const std::string& label) const {
  auto it = std::find(cells.begin(), cells.end(), label);
  if (it == cells.end()) throw std::invalid_argument("fixture " + name + " has no cell " + label);
  return static_cast<int>(it - cells.begin());
}

bool FixtureSpec::compatible(int e) const {
  if (e < 4 || e % 4 != 0) return false;
  for (const FixtureGluing& g : gluings) {
    for (const ScaledLength* s : {&g.start_a, &g.start_b, &g.length}) {
      if ((s->num * e) % s->den != 0) return false;
    }
  }
  return true;
}

std::vector<FixtureSpec> parse_fixture_catalog(const std::string& json_text) {
  auto doc = nlohmann::json::parse(json_text);
  std::vector<FixtureSpec> out;
  for (const auto& f : doc.at("fixtures")) {
    FixtureSpec spec;
    spec.name = f.at("name").get<std::string>();
    spec.description = f.value("description", "");
    spec.ell = f.at("ell").get<int>();
    if (f.contains("d")) spec.d = parse_rational(f.at("d").get<std::string>());
    spec.cells = f.at("cells").get<std::vector<std::string>>();
    for (const auto& g : f.at("gluings")) {
      FixtureGluing fg;
      fg.a = g.at("a").get<std::string>();
      fg.b = g.at("b").get<std::string>();
      fg.start_a = parse_scaled(g.at("start_a").get<std::string>());
      fg.start_b = parse_scaled(g.at("start_b").get<std::string>());
      fg.length = parse_scaled(g.at("length").get<std::string>());
      fg.reversed = g.value("reversed", false);
      spec.gluings.push_back(fg);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

extern const char* const kFixtureCatalogJson;

const std::vector<FixtureSpec>& fixture_catalog() {
  static const std::vector<FixtureSpec> catalog = parse_fixture_catalog(kFixtureCatalogJson);
  return catalog;
}

const FixtureSpec& find_fixture(const std::string& name) {
  for (const FixtureSpec& f : fixture_catalog()) {
    if (f.name == name) return f;
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

PatchComplex build_fixture(const FixtureSpec& spec, int ell) {
  if (!spec.compatible(ell)) {
    throw std::invalid_argument("fixture " + spec.name + " cannot be built at ell=" + std::to_string(ell));
  }
  std::vector<CellSpec> cells;
  for (std::size_t i = 0; i < spec.cells.size(); ++i) cells.push_back({static_cast<int>(i), 0, false});
  std::vector<Gluing> gluings;
  for (const FixtureGluing& g : spec.gluings) {
    auto wrap = [ell](int x) { return ((x % ell) + ell) % ell; };
    gluings.push_back({spec.cell(g.a), wrap(g.start_a.at(ell)), spec.cell(g.b), wrap(g.start_b.at(ell)),
                       g.length.at(ell), g.reversed});
  }
  return PatchComplex(ell, std::move(cells), std::move(gluings));
}

}  // namespace randwalls
