#pragma once

// Portable seeded randomness.
//
// Engine: std::mt19937_64, whose output sequence is fixed by the standard.
// Substreams: the engine is seeded through std::seed_seq over the 32-bit
// halves of (master seed, path...), which is also fully specified. Uniform
// doubles are formed directly from the top 53 bits, (k + 0.5) / 2^53, so they
// never equal 0 or 1 and do not depend on a library's distribution code.

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace tqd {

class Rng {
 public:
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> path = {});

  std::uint64_t next() { return engine_(); }
  /// Uniform on the open interval (0, 1).
  double uniform();
  /// Index k with probability weights[k] / sum(weights).
  std::size_t categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tqd
