#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace balfactor::rng {

// All randomness in the library flows from a single 64-bit seed through the
// generators below. The exact algorithms are part of the external contract:
// regenerating an instance from the same seed must produce identical bytes,
// in this implementation or any other.
//
//   engine        std::mt19937_64 seeded directly with the seed
//   bounded(n)    unbiased rejection sampling on raw 64-bit draws (below)
//   shuffle       Fisher-Yates, descending index, using bounded()
//   derive_seed   one splitmix64 step of (parent XOR 0x9E3779B97F4A7C15*(i+1))

using Engine = std::mt19937_64;

// splitmix64 finalizer (Steele, Lea, Flood 2014). Advances the state by the
// golden-ratio constant and returns the mixed value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Child seed `index` of `parent`; used for restart, sweep-row, and
// oracle-trial seeds.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) {
  std::uint64_t state = parent ^ (0x9E3779B97F4A7C15ull * (index + 1));
  return splitmix64(state);
}

// Uniform draw from [0, n). Rejects raw values >= 2^64 - (2^64 mod n) and
// returns the remainder mod n, so every implementation of mt19937_64 yields
// the same stream.
inline std::uint64_t bounded(Engine& eng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t residue = (0ull - n) % n;  // 2^64 mod n
  std::uint64_t v = eng();
  if (residue != 0) {
    const std::uint64_t limit = 0ull - residue;  // 2^64 - (2^64 mod n)
    while (v >= limit) v = eng();
  }
  return v % n;
}

template <typename T>
void shuffle(Engine& eng, std::vector<T>& items) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(bounded(eng, i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace balfactor::rng
