#pragma once

#include <cstdint>
#include <vector>

namespace dnacc {

// SplitMix64. Chosen over <random> engines because its output sequence is
// fully pinned by the reference constants, which keeps seeded CLI runs
// byte-identical across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw from [0, bound) via rejection. bound > 0.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// k distinct values from [0, n), in draw order. Sparse Fisher-Yates, so n may
// be astronomically larger than k.
std::vector<std::uint64_t> sample_distinct(SplitMix64& rng, std::uint64_t n,
                                           std::uint64_t k);

template <typename T>
void shuffle(SplitMix64& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.below(i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace dnacc
