#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "dnacc/core.hpp"

namespace dnacc {

// Distance value that may be infinite (messages with different data
// multisets are infinitely far apart).
class DnaDistance {
 public:
  static DnaDistance infinite() { return DnaDistance(true, 0); }
  static DnaDistance finite(int v) { return DnaDistance(false, v); }

  bool is_infinite() const noexcept { return infinite_; }
  // Only valid for finite distances.
  int value() const;

  // Finite values compare by magnitude; infinity exceeds everything finite.
  friend bool operator==(const DnaDistance&, const DnaDistance&) = default;
  friend std::strong_ordering operator<=>(const DnaDistance& a,
                                          const DnaDistance& b) {
    if (a.infinite_ != b.infinite_) return a.infinite_ <=> b.infinite_;
    if (a.infinite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }
  friend bool operator>(const DnaDistance& a, int t) {
    return a.infinite_ || a.value_ > t;
  }
  friend bool operator<=(const DnaDistance& a, int t) { return !(a > t); }

 private:
  DnaDistance(bool inf, int v) : infinite_(inf), value_(v) {}
  bool infinite_;
  int value_;
};

struct Matching {
  // (left word, right word) pairs, one per left word.
  std::vector<std::pair<BitVector, BitVector>> pairs;
  // Largest Hamming distance inside any pair; the matching minimizes this.
  int weight = 0;
};

// Perfect matching between two equal-size families of equal-length words
// minimizing the maximum pairwise Hamming distance. Binary search on the
// threshold plus augmenting-path matching.
Matching bottleneck_matching(const std::vector<BitVector>& left,
                             const std::vector<BitVector>& right);

// When no perfect matching of weight <= threshold exists, returns a subset S
// of `left` whose distance-<=threshold neighborhood in `right` is smaller
// than S (the Hall witness). Otherwise nullopt.
std::optional<std::vector<BitVector>> hall_violating_set(
    const std::vector<BitVector>& left, const std::vector<BitVector>& right,
    int threshold);

struct DnaDistanceDetail {
  DnaDistance distance = DnaDistance::infinite();
  // Per data field: the bottleneck weight between the two index groups.
  // Empty when the distance is infinite.
  std::vector<std::pair<BitVector, int>> field_weights;
};

// Infinite when the data multisets differ; otherwise the max over data
// fields u of the bottleneck weight between the index groups carrying u.
DnaDistance dna_distance(const Message& a, const Message& b);
DnaDistanceDetail dna_distance_detail(const Message& a, const Message& b);

// Minimum pairwise distance of a code; needs at least two codewords.
DnaDistance code_dna_distance(const std::vector<Message>& code);

// Max positional Hamming distance between two tuples of equal shape.
int index_distance(const std::vector<BitVector>& a,
                   const std::vector<BitVector>& b);

inline constexpr std::uint64_t kDefaultBallBudget = 10'000'000;

// All messages within distance `radius` of z (z included). Enumerates, per
// data field, the candidate index groups reachable within the radius, then
// stitches groups together rejecting index collisions. Throws BudgetExceeded
// when the candidate count outgrows `budget`.
std::set<Message> metric_ball(const Message& z, int radius,
                              std::uint64_t budget = kDefaultBallBudget);

}  // namespace dnacc
