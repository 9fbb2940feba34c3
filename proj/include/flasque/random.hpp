#pragma once

// Seeded randomness with platform-independent derived distributions
// (std::uniform_int_distribution and std::shuffle are implementation-defined).

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace flasque {

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Uniform-ish integer in [lo, hi]; modulo bias is irrelevant at these ranges.
  long uniform(long lo, long hi) {
    const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next() % span);
  }

  size_t index(size_t n) { return static_cast<size_t>(next() % n); }

  bool coin() { return (next() & 1U) != 0; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  // Independent child stream for case number `k`.
  static uint64_t derive(uint64_t seed, uint64_t k) {
    std::mt19937_64 e(seed ^ (0x9e3779b97f4a7c15ULL * (k + 1)));
    return e();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace flasque
