#pragma once

#include <cstdint>

namespace pressure_lab {

/// splitmix64: tiny counter-based generator. Streams are derived from
/// (seed, tags...) so each work item draws the same numbers regardless of
/// which thread runs it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  SplitMix64 s(seed ^ (a * 0xd6e8feb86659fd93ULL));
  s.next();
  SplitMix64 t(s.next() ^ (b * 0x9e3779b97f4a7c15ULL));
  return t.next();
}

}  // namespace pressure_lab
