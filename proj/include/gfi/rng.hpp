#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace gfi {

// All randomness in this project flows from one master seed. Solver and
// sampling streams are derived with SplitMix64, and long-running streams use
// std::mt19937_64 whose output sequence is fixed by the standard, so results
// are bit-reproducible across platforms. Plain std::*_distribution objects are
// implementation-defined and are never used; the helpers below replace them.

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  using result_type = std::uint64_t;
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ULL; }

  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Derives the seed of an independent stream from a master seed. Streams are
// indexed; (master, 0), (master, 1), ... give unrelated sequences.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0xA0761D6478BD642FULL * (stream + 1)));
  g();
  return g();
}

// Uniform double in [0, 1) with 53 random bits.
template <class Engine>
double uniform01(Engine& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection on the low bits.
template <class Engine>
std::uint64_t uniform_below(Engine& g, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t mask = ~0ULL >> __builtin_clzll((n - 1) | 1);
  std::uint64_t x;
  do {
    x = g() & mask;
  } while (x >= n);
  return x;
}

// Fisher-Yates with our own index sampling (std::shuffle draws through
// implementation-defined distributions).
template <class Engine, class T>
void shuffle_in_place(Engine& g, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace gfi
