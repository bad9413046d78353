#include "dnacc/rng.hpp"

#include <unordered_map>

namespace dnacc {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Rejection from the largest multiple of bound below 2^64.
  std::uint64_t limit = ~0ULL - ~0ULL % bound;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::vector<std::uint64_t> sample_distinct(SplitMix64& rng, std::uint64_t n,
                                           std::uint64_t k) {
  // Fisher-Yates over a virtual array of [0, n); only touched slots are kept.
  std::unordered_map<std::uint64_t, std::uint64_t> moved;
  std::vector<std::uint64_t> out;
  out.reserve(k);
  for (std::uint64_t i = 0; i < k; ++i) {
    std::uint64_t j = i + rng.below(n - i);
    auto ji = moved.find(j);
    std::uint64_t value = ji == moved.end() ? j : ji->second;
    auto ii = moved.find(i);
    moved[j] = ii == moved.end() ? i : ii->second;
    out.push_back(value);
  }
  return out;
}

}  // namespace dnacc
