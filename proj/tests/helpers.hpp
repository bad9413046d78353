#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dnacc/channel.hpp"
#include "dnacc/core.hpp"
#include "dnacc/metric.hpp"

namespace testutil {

using namespace dnacc;

inline Message mk(const SystemParams& p,
                  std::vector<std::pair<std::string, std::string>> strands) {
  std::vector<Strand> out;
  for (auto& [i, d] : strands)
    out.push_back({BitVector::from_string(i), BitVector::from_string(d)});
  return Message(p, std::move(out));
}

// Worked pair used across the suites: distance 1, one swapped matching.
inline Message worked_z1() {
  return mk({4, 5, 2}, {{"00", "111"}, {"01", "000"}, {"10", "111"}, {"11", "001"}});
}
inline Message worked_z2() {
  return mk({4, 5, 2}, {{"00", "111"}, {"01", "111"}, {"10", "001"}, {"11", "000"}});
}

// Pair at distance 2 whose radius-1 balls are disjoint even though the
// channel can confuse them: data fields are swapped between index pairs
// that sit 2 apart.
inline Message nongraphic_z1() {
  return mk({4, 6, 4},
            {{"0000", "00"}, {"1100", "01"}, {"1010", "10"}, {"1001", "11"}});
}
inline Message nongraphic_z2() {
  return mk({4, 6, 4},
            {{"0000", "01"}, {"1100", "00"}, {"1010", "11"}, {"1001", "10"}});
}

// Every message of the given shape; feasible only for tiny parameters.
inline std::vector<Message> all_messages(const SystemParams& p,
                                         bool distinct_data_only = false) {
  p.validate();
  const std::uint32_t n_idx = 1u << p.index_length;
  const std::uint64_t n_data = 1ull << p.data_length();
  std::vector<Message> out;

  std::vector<std::uint32_t> pick;
  auto assign_data = [&](auto&& self, std::vector<Strand>& acc,
                         std::size_t at) -> void {
    if (at == pick.size()) {
      Message z(p, acc);
      if (!distinct_data_only || is_distinct_data(z)) out.push_back(std::move(z));
      return;
    }
    for (std::uint64_t v = 0; v < n_data; ++v) {
      acc.push_back({BitVector(static_cast<int>(p.index_length), pick[at]),
                     BitVector(static_cast<int>(p.data_length()), v)});
      self(self, acc, at + 1);
      acc.pop_back();
    }
  };
  auto choose_indices = [&](auto&& self, std::uint32_t from) -> void {
    if (pick.size() == p.strand_count) {
      std::vector<Strand> acc;
      assign_data(assign_data, acc, 0);
      return;
    }
    for (std::uint32_t i = from; i < n_idx; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  choose_indices(choose_indices, 0);
  return out;
}

// Reference bottleneck matching: try every permutation.
inline int brute_bottleneck(const std::vector<BitVector>& left,
                            const std::vector<BitVector>& right) {
  std::vector<std::size_t> perm(right.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  int best = 1 << 20;
  do {
    int w = 0;
    for (std::size_t i = 0; i < left.size(); ++i)
      w = std::max(w, hamming_distance(left[i], right[perm[i]]));
    best = std::min(best, w);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace testutil
