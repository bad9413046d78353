#include "dnacc/bitvector.hpp"

#include <algorithm>

namespace dnacc {

namespace {

std::uint64_t mask_for(int length) {
  return length == 64 ? ~0ULL : (1ULL << length) - 1;
}

}  // namespace

BitVector::BitVector(int length, std::uint64_t bits)
    : length_(length), bits_(bits) {
  if (length < 1 || length > kMaxLength)
    fail(ErrorCode::OutOfRange,
         "bit vector length must be in [1, 64], got " + std::to_string(length));
  if (bits & ~mask_for(length))
    fail(ErrorCode::OutOfRange, "bit pattern wider than declared length");
}

BitVector BitVector::from_string(std::string_view s) {
  if (s.empty() || s.size() > kMaxLength)
    fail(ErrorCode::ParseError, "bit string length must be in [1, 64]");
  std::uint64_t bits = 0;
  for (char c : s) {
    if (c != '0' && c != '1')
      fail(ErrorCode::ParseError,
           std::string("bit string may contain only 0 and 1, got '") + c + "'");
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return BitVector(static_cast<int>(s.size()), bits);
}

bool BitVector::bit(int pos) const {
  if (pos < 0 || pos >= length_)
    fail(ErrorCode::OutOfRange, "bit position out of range");
  return (bits_ >> (length_ - 1 - pos)) & 1u;
}

BitVector BitVector::with_flipped(int pos) const {
  if (pos < 0 || pos >= length_)
    fail(ErrorCode::OutOfRange, "bit position out of range");
  return BitVector(length_, bits_ ^ (1ULL << (length_ - 1 - pos)));
}

BitVector BitVector::with_flipped_window(int first, int count) const {
  if (count < 0 || first < 0 || first + count > length_)
    fail(ErrorCode::OutOfRange, "flip window out of range");
  if (count == 0) return *this;
  std::uint64_t window = mask_for(count) << (length_ - first - count);
  return BitVector(length_, bits_ ^ window);
}

BitVector BitVector::padded(int count) const {
  if (count < 0 || length_ + count > kMaxLength)
    fail(ErrorCode::OutOfRange, "padded length exceeds 64 bits");
  return BitVector(length_ + count, bits_ << count);
}

std::string BitVector::to_string() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i)
    if ((bits_ >> (length_ - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

int hamming_distance(const BitVector& a, const BitVector& b) {
  if (a.length() != b.length())
    fail(ErrorCode::LengthMismatch,
         "hamming distance needs equal lengths, got " +
             std::to_string(a.length()) + " and " + std::to_string(b.length()));
  return std::popcount(a.bits() ^ b.bits());
}

std::vector<BitVector> all_vectors(int length) {
  if (length < 1 || length > 30)
    fail(ErrorCode::OutOfRange, "refusing to materialize 2^" +
                                    std::to_string(length) + " vectors");
  std::vector<BitVector> out;
  out.reserve(1ULL << length);
  for (std::uint64_t v = 0; v < (1ULL << length); ++v)
    out.emplace_back(length, v);
  return out;
}

namespace {

void collect_flips(const BitVector& center, int remaining, int first_pos,
                   std::uint64_t acc, std::vector<BitVector>& out) {
  out.emplace_back(center.length(), acc);
  if (remaining == 0) return;
  for (int p = first_pos; p < center.length(); ++p)
    collect_flips(center, remaining - 1, p + 1,
                  acc ^ (1ULL << (center.length() - 1 - p)), out);
}

}  // namespace

std::vector<BitVector> hamming_ball(const BitVector& center, int radius) {
  if (radius < 0) fail(ErrorCode::OutOfRange, "negative radius");
  int r = std::min(radius, center.length());
  std::vector<BitVector> out;
  collect_flips(center, r, 0, center.bits(), out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dnacc
