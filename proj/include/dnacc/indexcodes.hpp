#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dnacc/bigint.hpp"
#include "dnacc/core.hpp"

namespace dnacc {

struct IndexCodeParams {
  std::uint32_t index_length;  // l
  std::uint32_t strand_count;  // M
  std::uint32_t min_distance;  // d

  friend bool operator==(const IndexCodeParams&, const IndexCodeParams&) = default;
};

// Ordered tuple of M pairwise distinct l-bit words.
class IndexTuple {
 public:
  explicit IndexTuple(std::vector<BitVector> entries);

  const std::vector<BitVector>& entries() const noexcept { return entries_; }
  std::uint32_t index_length() const;
  std::uint32_t strand_count() const {
    return static_cast<std::uint32_t>(entries_.size());
  }

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend std::strong_ordering operator<=>(const IndexTuple&, const IndexTuple&) = default;

 private:
  std::vector<BitVector> entries_;
};

struct IndexCode {
  IndexCodeParams params;
  std::vector<IndexTuple> rows;
};

struct CodeValidation {
  bool ok = true;
  std::string reason;
  // Offending rows and their distance, when a pair violates the minimum.
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
  int observed_distance = 0;
};

// Checks pairwise tuple distance >= d plus tuple integrity (shape, distinct
// entries within each row, no repeated rows).
CodeValidation validate_index_code(const std::vector<IndexTuple>& rows,
                                   const IndexCodeParams& params);

// Binary linear code given by generators; used as the inner code of the
// coset construction.
class LinearInnerCode {
 public:
  // Explicit codeword list, validated closed under xor.
  LinearInnerCode(std::uint32_t length, std::vector<BitVector> codewords);

  static LinearInnerCode parity_check(std::uint32_t length);   // even-weight code
  static LinearInnerCode repetition(std::uint32_t length);     // {0...0, 1...1}
  static LinearInnerCode hamming(std::uint32_t m);             // length 2^m - 1

  std::uint32_t length() const noexcept { return length_; }
  const std::vector<BitVector>& codewords() const noexcept { return words_; }
  std::uint32_t size() const {
    return static_cast<std::uint32_t>(words_.size());
  }
  std::uint32_t min_distance() const noexcept { return min_distance_; }

 private:
  std::uint32_t length_;
  std::vector<BitVector> words_;
  std::uint32_t min_distance_;
};

struct Coset {
  BitVector leader;  // minimum-weight member (ties by value)
  std::vector<BitVector> members;  // ascending
};

// Partition of the full l-bit space into cosets of the inner code. The code
// itself comes first, the rest ordered by (leader weight, leader value).
std::vector<Coset> coset_partition(const LinearInnerCode& inner);

struct DroppedRow {
  IndexTuple row;
  std::size_t conflicting_row;  // index into the accepted rows
  int observed_distance;
};

struct CosetConstructionReport {
  std::size_t base_rows = 0;
  std::size_t augmented_candidates = 0;
  std::size_t augmented_accepted = 0;
  std::vector<DroppedRow> dropped;
  // Predicted totals, for comparison against rows actually built.
  BigInt base_formula;
  BigInt augmented_formula;
  std::size_t survivor_words = 0;  // per-coset count of augmentation words
};

inline constexpr std::uint64_t kDefaultRowBudget = 5'000'000;

struct CosetConstructionResult {
  IndexCode code;
  CosetConstructionReport report;
};

// Coset construction: base rows take one permutation of each coset per
// block; augmented rows additionally swap a surviving coset word into the
// first block. Augmented candidates are post-validated and dropped rows are
// itemized in the report. M must be a power of two, the inner code must have
// length log2(M) and distance >= d.
CosetConstructionResult construct_coset(std::uint32_t strand_count,
                                        std::uint32_t min_distance,
                                        const LinearInnerCode& inner,
                                        std::uint64_t row_budget = kDefaultRowBudget);

// Length-extension: pads ceil(d/2) zeros onto every entry, then for each
// column doubles the rows by complementing the first and last pad-width bits
// of that column. Multiplies the code size by 2^M and preserves d. Throws
// OverlapWindow when the two windows would overlap.
IndexCode construct_extend(const IndexCode& code,
                           std::uint64_t row_budget = kDefaultRowBudget);
// Same, stopping after the first `steps` columns (steps <= M); exposed for
// inspection of the intermediate codes.
IndexCode construct_extend_partial(const IndexCode& code, std::uint32_t steps,
                                   std::uint64_t row_budget = kDefaultRowBudget);

inline constexpr std::uint64_t kDefaultVertexBudget = 10'000;
inline constexpr std::uint64_t kDefaultNodeBudget = 20'000'000;

struct ExactSearchResult {
  BigInt size;                    // the exact maximum
  std::optional<IndexCode> code;  // materialized when small enough
};

// Exact maximum code size. d = 1 is closed form (all tuples qualify);
// otherwise a branch-and-bound maximum-clique search with greedy coloring
// bounds over the tuple compatibility graph. Throws BudgetExceeded when the
// vertex count exceeds vertex_budget or the search exceeds node_budget.
ExactSearchResult search_exact_max_code(
    std::uint32_t index_length, std::uint32_t strand_count,
    std::uint32_t min_distance,
    std::uint64_t vertex_budget = kDefaultVertexBudget,
    std::uint64_t node_budget = kDefaultNodeBudget);

// Randomized greedy lower bound: seeded shuffle (or sampling, when the tuple
// space is large) plus first-fit insertion. Optionally grows a warm-start
// code instead of starting empty. Always returns a valid code.
IndexCode search_greedy(std::uint32_t index_length, std::uint32_t strand_count,
                        std::uint32_t min_distance, std::uint64_t seed,
                        std::uint64_t attempts = 20'000,
                        const std::optional<IndexCode>& warm_start = std::nullopt);

// Pairs every row with the given distinct data fields, yielding messages
// whose pairwise DNA distance equals the index-code distance of the rows.
std::vector<Message> messages_from_code(const IndexCode& code,
                                        const std::vector<BitVector>& data_fields);

// Text format: one row per line, entries whitespace-separated, preceded by a
// "# l=<l> M=<M> d=<d>" header line.
void write_matrix(std::ostream& os, const IndexCode& code);
IndexCode read_matrix(std::istream& is);

}  // namespace dnacc
