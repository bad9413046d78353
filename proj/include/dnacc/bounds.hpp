#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnacc/bigint.hpp"
#include "dnacc/channel.hpp"

namespace dnacc {

// Square 0/1 matrix, each row a 64-bit mask.
class BinaryMatrix {
 public:
  BinaryMatrix(std::uint32_t n, std::vector<std::uint64_t> rows);

  std::uint32_t size() const noexcept { return n_; }
  bool at(std::uint32_t i, std::uint32_t j) const {
    return (rows_[i] >> j) & 1u;
  }
  std::uint64_t row(std::uint32_t i) const { return rows_[i]; }

 private:
  std::uint32_t n_;
  std::vector<std::uint64_t> rows_;
};

inline constexpr std::uint32_t kMaxPermanentSize = 24;

// Exact permanent, Ryser's formula with Gray-code column updates. O(2^n * n)
// 64-bit adds into exact big-integer accumulation; n capped at 24.
BigInt permanent(const BinaryMatrix& a);

// M x M matrix over the log2(M)-bit words with a_ij = 1 iff the i-th and
// j-th words are within Hamming distance r. M must be a power of two.
BinaryMatrix proximity_matrix(std::uint32_t radius, std::uint32_t strand_count);

// Number of tuples within max-positional distance r of a fixed tuple of all
// log2(M)-bit words: the permanent of the proximity matrix.
BigInt permutation_ball_size(std::uint32_t radius, std::uint32_t strand_count);

struct BoundReport {
  std::string name;
  std::string inputs;       // echoed "l=.. M=.. d=.." text
  bool exact = false;       // true when floor_value is the bound itself
  BigInt floor_value;       // floor of the bound
  double log2_value = 0.0;  // log2 of the (real) bound
  // Real bound value when it fits a double, for table display.
  std::optional<double> real_value;
};

// Sphere-packing-style bound on the maximum index code size at l = log2(M):
// M! / (r!)^(M/r) with r the packing radius for distance d. Exact-rational
// path when r divides M, otherwise evaluated in log2 space at quad precision
// and floored.
BoundReport sphere_packing_bound(std::uint32_t strand_count, std::uint32_t min_distance);

// Singleton-style bound: M! / ((2^(d-1))!)^(2^(log2(M)-d+1)), always an
// integer. Requires 1 <= d <= log2(M) + 1.
BoundReport singleton_bound(std::uint32_t strand_count, std::uint32_t min_distance);

struct ConstructionSize {
  BoundReport primary;
  // d = 3 only: the closed form that also counts the augmentation words,
  // reported alongside but never asserted (it disagrees with the validated
  // construction at small M).
  std::optional<BoundReport> augmented;
};

// Closed-form size of the coset construction. d = 2: (2!)^(M/2) with the
// parity inner code, plus the augmentation term. d = 3: base term with the
// Hamming inner code. Other d unsupported.
ConstructionSize coset_construction_size(std::uint32_t strand_count,
                                         std::uint32_t min_distance);

struct RedundancyReport {
  double exact;                  // -sum log2(1 - i/2^(L-l))
  std::optional<double> upper;   // -log2(1 - M^2/2^(L-l+1)), when defined
  bool beta_ok;                  // M^2 < 2^(L-l), the under-one-bit regime
};

// Redundancy cost of restricting to pairwise distinct data fields,
// log2(|full space| / |distinct-data subspace|), in bits.
RedundancyReport distinct_data_redundancy(const SystemParams& params);

struct MaxCodeSizeReport {
  Regime regime;
  bool exact = false;
  BigInt value;          // when exact
  BigInt lower, upper;   // bracket otherwise
  std::string method;
};

// Size of a largest code over a fixed distinct-data field set, by regime:
// low regime admits the whole distinct-index space; otherwise the exact
// maximum at distance 2*e_i+1 (tau = 1) or e_i+1 (high), bracketed by greedy
// and packing bounds when exact search is out of budget. Defined for e_d=0.
MaxCodeSizeReport max_code_size_shared_data(
    std::uint32_t index_length, std::uint32_t strand_count, const Rational& tau,
    std::uint32_t copies, std::uint32_t index_errors,
    std::uint64_t vertex_budget = 10'000, std::uint64_t node_budget = 20'000'000);

}  // namespace dnacc
