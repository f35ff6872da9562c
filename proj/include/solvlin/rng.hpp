// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the solvlin authors

#ifndef SOLVLIN_RNG_HPP
#define SOLVLIN_RNG_HPP

#include <cstdint>
#include <cstddef>

namespace solvlin {

/// Small deterministic generator (splitmix64 core).  The standard
/// distributions are implementation-defined, so everything downstream of a
/// seed goes through this class to keep reports byte-identical across
/// platforms and library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

  /// Independent substream for task `index`; identical (seed, index) pairs
  /// give identical streams regardless of scheduling.
  Rng fork(std::uint64_t index) const {
    Rng mixer(state_ ^ (0x5851f42d4c957f2dULL * (index + 1)));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace solvlin

#endif
