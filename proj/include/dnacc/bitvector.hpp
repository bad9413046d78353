#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dnacc/errors.hpp"

namespace dnacc {

// Fixed-length binary word of 1..64 bits. Bit i of bits() stores the
// character at printed position length-1-i, so ascending numeric order on
// bits() is exactly lexicographic order of the printed strings.
class BitVector {
 public:
  static constexpr int kMaxLength = 64;

  BitVector(int length, std::uint64_t bits);

  static BitVector from_string(std::string_view s);
  static BitVector zero(int length) { return BitVector(length, 0); }

  int length() const noexcept { return length_; }
  std::uint64_t bits() const noexcept { return bits_; }
  int weight() const noexcept { return std::popcount(bits_); }

  // pos counts from the printed left, 0-based.
  bool bit(int pos) const;
  BitVector with_flipped(int pos) const;
  // Flips the window of printed positions [first, first + count).
  BitVector with_flipped_window(int first, int count) const;
  // Appends `count` zero bits on the printed right.
  BitVector padded(int count) const;

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector& a,
                                          const BitVector& b) {
    if (a.length_ != b.length_) return a.length_ <=> b.length_;
    return a.bits_ <=> b.bits_;
  }

 private:
  int length_;
  std::uint64_t bits_;
};

int hamming_distance(const BitVector& a, const BitVector& b);

// All words of the given length in ascending order. Refuses lengths whose
// enumeration would be absurd to materialize.
std::vector<BitVector> all_vectors(int length);

// All words within Hamming distance `radius` of `center`, ascending.
std::vector<BitVector> hamming_ball(const BitVector& center, int radius);

inline std::size_t hash_combine(std::size_t seed, std::size_t v) noexcept {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace dnacc

template <>
struct std::hash<dnacc::BitVector> {
  std::size_t operator()(const dnacc::BitVector& v) const noexcept {
    return dnacc::hash_combine(std::hash<int>{}(v.length()),
                               std::hash<std::uint64_t>{}(v.bits()));
  }
};
