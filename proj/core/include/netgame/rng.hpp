#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace netgame {

// seeded RNG with hand-rolled sampling helpers: std::uniform_int_distribution
// is implementation-defined, and byte-reproducible outputs across toolchains
// are part of the contract here
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  // uniform in [0, n), rejection-sampled
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

  // k distinct indices out of [0, n), sorted
  std::vector<int> sample_indices(int n, int k) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i)
      std::swap(pool[i], pool[i + static_cast<int>(below(n - i))]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }
};

}  // namespace netgame
