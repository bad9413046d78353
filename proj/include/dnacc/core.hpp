#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "dnacc/bigint.hpp"
#include "dnacc/bitvector.hpp"
#include "dnacc/errors.hpp"

namespace dnacc {

// Shape of one stored message: M strands of L bits each, the first l bits of
// every strand being its index field and the remaining L - l its data field.
struct SystemParams {
  std::uint32_t strand_count;   // M
  std::uint32_t strand_length;  // L
  std::uint32_t index_length;   // l

  std::uint32_t data_length() const { return strand_length - index_length; }

  // Throws on shapes the model does not admit (too few index bits to give
  // every strand a distinct index, empty fields, words beyond 64 bits).
  void validate() const;

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
  friend std::strong_ordering operator<=>(const SystemParams&,
                                          const SystemParams&) = default;
};

// Smallest index length able to address M distinct strands.
std::uint32_t min_index_length(std::uint32_t strand_count);

struct Strand {
  BitVector index;
  BitVector data;

  friend bool operator==(const Strand&, const Strand&) = default;
  friend std::strong_ordering operator<=>(const Strand&, const Strand&) = default;
};

// A message: a set of M strands with pairwise distinct indices. Strands are
// kept sorted by index, so equal sets compare equal regardless of the order
// they were supplied in.
class Message {
 public:
  Message(const SystemParams& params, std::vector<Strand> strands);

  const SystemParams& params() const noexcept { return params_; }
  const std::vector<Strand>& strands() const noexcept { return strands_; }

  friend bool operator==(const Message&, const Message&) = default;
  friend std::strong_ordering operator<=>(const Message&, const Message&) = default;

 private:
  SystemParams params_;
  std::vector<Strand> strands_;
};

inline Message make_message(const SystemParams& params,
                            std::vector<Strand> strands) {
  return Message(params, std::move(strands));
}

// Multiset of data fields, as sorted (value, multiplicity) pairs.
class DataMultiset {
 public:
  DataMultiset() = default;
  explicit DataMultiset(const std::vector<BitVector>& values);

  const std::vector<std::pair<BitVector, std::uint32_t>>& entries() const {
    return entries_;
  }
  std::uint32_t total() const;
  std::uint32_t multiplicity(const BitVector& value) const;

  friend bool operator==(const DataMultiset&, const DataMultiset&) = default;
  friend std::strong_ordering operator<=>(const DataMultiset&,
                                          const DataMultiset&) = default;

 private:
  std::vector<std::pair<BitVector, std::uint32_t>> entries_;
};

DataMultiset data_multiset(const Message& z);

// Indices of the strands of z carrying data field u, ascending. Empty when u
// does not occur in z.
std::vector<BitVector> indices_of(const BitVector& u, const Message& z);

// True when all data fields of z are pairwise distinct.
bool is_distinct_data(const Message& z);

// Number of messages with these parameters: C(2^l, M) * 2^((L-l)*M).
BigInt message_space_size(const SystemParams& params);

// Number of messages whose data fields are pairwise distinct:
// C(2^l, M) * C(2^(L-l), M) * M!. Zero when 2^(L-l) < M.
BigInt distinct_data_space_size(const SystemParams& params);

}  // namespace dnacc

template <>
struct std::hash<dnacc::Strand> {
  std::size_t operator()(const dnacc::Strand& s) const noexcept {
    return dnacc::hash_combine(std::hash<dnacc::BitVector>{}(s.index),
                               std::hash<dnacc::BitVector>{}(s.data));
  }
};

template <>
struct std::hash<dnacc::Message> {
  std::size_t operator()(const dnacc::Message& z) const noexcept {
    std::size_t h = std::hash<std::uint32_t>{}(z.params().strand_count);
    for (const auto& s : z.strands())
      h = dnacc::hash_combine(h, std::hash<dnacc::Strand>{}(s));
    return h;
  }
};
