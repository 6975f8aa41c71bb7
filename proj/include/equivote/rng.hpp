#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace equivote {

// All randomized code goes through these helpers so that a seed fully
// determines every output, independent of platform and of the standard
// library's distribution implementations.

inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based seed derivation: child streams for (cell, trial, ...) fan-out.
inline uint64_t derive_seed(uint64_t master, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t s = master;
  splitmix64(s);
  s ^= 0xa076'1d64'78bd'642full ^ a;
  splitmix64(s);
  s ^= 0xe703'7ed1'a0b4'28dbull ^ b;
  splitmix64(s);
  s ^= 0x8ebc'6af0'9c88'c6e3ull ^ c;
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, bound), bound >= 1. Rejection sampling, unbiased.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
    uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % bound;
  }

  int index(int bound) { return (int)below((uint64_t)bound); }

  // Uniform double in [0, 1) with 53 random bits.
  double unit() { return (double)(eng_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // k distinct values from {0,..,n-1}, in random order.
  std::vector<int> sample_indices(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) std::swap(pool[i], pool[i + index(n - i)]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 eng_;  // sequence is pinned by the standard
};

}  // namespace equivote
