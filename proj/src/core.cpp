#include "dnacc/core.hpp"

#include <algorithm>

namespace dnacc {

std::uint32_t min_index_length(std::uint32_t strand_count) {
  std::uint32_t l = 1;
  while ((1ULL << l) < strand_count) ++l;
  return l;
}

void SystemParams::validate() const {
  if (strand_count < 1)
    fail(ErrorCode::OutOfRange, "need at least one strand");
  if (index_length < 1 || index_length >= strand_length)
    fail(ErrorCode::OutOfRange,
         "index length must satisfy 1 <= l < L, got l=" +
             std::to_string(index_length) + " L=" + std::to_string(strand_length));
  if (index_length > BitVector::kMaxLength ||
      data_length() > BitVector::kMaxLength)
    fail(ErrorCode::OutOfRange, "fields wider than 64 bits are unsupported");
  if (index_length < min_index_length(strand_count))
    fail(ErrorCode::OutOfRange,
         std::to_string(index_length) + " index bits cannot address " +
             std::to_string(strand_count) + " distinct strands");
}

Message::Message(const SystemParams& params, std::vector<Strand> strands)
    : params_(params), strands_(std::move(strands)) {
  params_.validate();
  if (strands_.size() != params_.strand_count)
    fail(ErrorCode::WrongCount,
         "expected " + std::to_string(params_.strand_count) + " strands, got " +
             std::to_string(strands_.size()));
  for (const auto& s : strands_) {
    if (s.index.length() != static_cast<int>(params_.index_length))
      fail(ErrorCode::LengthMismatch, "index field '" + s.index.to_string() +
                                          "' does not have length " +
                                          std::to_string(params_.index_length));
    if (s.data.length() != static_cast<int>(params_.data_length()))
      fail(ErrorCode::LengthMismatch, "data field '" + s.data.to_string() +
                                          "' does not have length " +
                                          std::to_string(params_.data_length()));
  }
  std::sort(strands_.begin(), strands_.end());
  for (std::size_t i = 1; i < strands_.size(); ++i)
    if (strands_[i - 1].index == strands_[i].index)
      fail(ErrorCode::DuplicateIndex,
           "duplicate index " + strands_[i].index.to_string());
}

DataMultiset::DataMultiset(const std::vector<BitVector>& values) {
  std::vector<BitVector> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& v : sorted) {
    if (!entries_.empty() && entries_.back().first == v)
      ++entries_.back().second;
    else
      entries_.emplace_back(v, 1);
  }
}

std::uint32_t DataMultiset::total() const {
  std::uint32_t t = 0;
  for (const auto& [v, c] : entries_) t += c;
  return t;
}

std::uint32_t DataMultiset::multiplicity(const BitVector& value) const {
  for (const auto& [v, c] : entries_)
    if (v == value) return c;
  return 0;
}

DataMultiset data_multiset(const Message& z) {
  std::vector<BitVector> values;
  values.reserve(z.strands().size());
  for (const auto& s : z.strands()) values.push_back(s.data);
  return DataMultiset(values);
}

std::vector<BitVector> indices_of(const BitVector& u, const Message& z) {
  std::vector<BitVector> out;
  for (const auto& s : z.strands())
    if (s.data == u) out.push_back(s.index);
  return out;  // strands are index-sorted already
}

bool is_distinct_data(const Message& z) {
  DataMultiset ms = data_multiset(z);
  for (const auto& [v, c] : ms.entries())
    if (c > 1) return false;
  return true;
}

BigInt message_space_size(const SystemParams& params) {
  params.validate();
  return binomial(pow2(params.index_length), params.strand_count) *
         ipow(pow2(params.data_length()), params.strand_count);
}

BigInt distinct_data_space_size(const SystemParams& params) {
  params.validate();
  return binomial(pow2(params.index_length), params.strand_count) *
         binomial(pow2(params.data_length()), params.strand_count) *
         factorial(params.strand_count);
}

}  // namespace dnacc
