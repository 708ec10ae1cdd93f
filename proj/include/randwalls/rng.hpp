#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace randwalls {

// Independent generator for one named consumer, derived from a run seed.
// Adding a new stream name never changes the draws of existing ones.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n > 0. Portable across standard libraries.
  std::uint64_t below(std::uint64_t n);
  std::int64_t range(std::int64_t lo, std::int64_t hi);  // inclusive
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace randwalls
