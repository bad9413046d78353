#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dnacc/core.hpp"

namespace dnacc {

// Exact nonnegative rational, kept exact so floor(tau * K) never suffers
// floating-point rounding.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational parse(const std::string& text);  // "1", "2/5", "0.25"
  Rational normalized() const;
  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num * b.den == b.num * a.den;
  }
};

enum class Regime {
  Tau1,  // tau = 1: every read may be erroneous
  High,  // K/2 <= floor(tau*K) < K
  Low    // floor(tau*K) < K/2: correct reads hold a strict majority
};

const char* regime_name(Regime r) noexcept;

struct ChannelParams {
  Rational tau;                 // fraction of reads that may be erroneous
  std::uint32_t index_errors;   // e_i, per-read Hamming budget on the index
  std::uint32_t data_errors;    // e_d, per-read Hamming budget on the data
  std::uint32_t copies;         // K, reads emitted per strand

  void validate() const;  // 0 <= tau <= 1, K >= 1
  std::uint32_t max_erroneous() const;  // floor(tau * K)
  Regime regime() const;
};

// Unordered pool of reads with multiplicities; the channel output. Two pools
// are equal exactly when they agree as multisets.
class ReadPool {
 public:
  ReadPool() = default;
  explicit ReadPool(const std::vector<Strand>& reads);
  static ReadPool from_counts(
      std::vector<std::pair<Strand, std::uint32_t>> entries);

  const std::vector<std::pair<Strand, std::uint32_t>>& entries() const {
    return entries_;
  }
  std::uint64_t total() const;

  friend bool operator==(const ReadPool&, const ReadPool&) = default;
  friend std::strong_ordering operator<=>(const ReadPool&, const ReadPool&) = default;

 private:
  std::vector<std::pair<Strand, std::uint32_t>> entries_;  // sorted
};

// One seeded draw from the channel: K reads per strand, a uniform number
// c in {0..floor(tau*K)} of them corrupted, each corrupted read getting
// independent uniform error weights in {0..e_i} x {0..e_d} at uniform
// positions. With worst_case, c and the weights are pinned to their maxima
// (weights clamp at the field length).
ReadPool sample_channel_output(const Message& z, const ChannelParams& ch,
                               std::uint64_t seed, bool worst_case = false);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1'000'000;

// Every pool the channel can emit for z, sorted. Throws BudgetExceeded when
// the pre-dedup combination count outgrows `budget`.
std::vector<ReadPool> enumerate_channel_outputs(
    const Message& z, const ChannelParams& ch,
    std::uint64_t budget = kDefaultEnumerationBudget);

struct DisjointnessResult {
  bool disjoint = true;
  // A pool both messages can emit, when one exists.
  std::optional<ReadPool> witness;
};

DisjointnessResult outputs_disjoint(const Message& a, const Message& b,
                                    const ChannelParams& ch,
                                    std::uint64_t budget = kDefaultEnumerationBudget);

struct BruteForceVerdict {
  bool is_dcc = true;
  // Indices into the code plus a shared output, when a collision exists.
  std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
  std::optional<ReadPool> witness;
};

// Definition-level check: a code corrects the channel exactly when no two
// codewords can emit the same pool. Exponential; meant for tiny instances.
BruteForceVerdict is_dcc_brute(const std::vector<Message>& code,
                               const ChannelParams& ch,
                               std::uint64_t budget = kDefaultEnumerationBudget);

enum class Verdict { GuaranteedYes, GuaranteedNo, Inconclusive };

const char* verdict_name(Verdict v) noexcept;

struct DistanceVerdict {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
};

// Distance-threshold classification, sound in every regime and complete for
// tau = 1. Codewords are grouped by data multiset; groups never collide when
// e_d = 0, so the verdict is assembled per group. Requires e_d = 0.
DistanceVerdict is_dcc_by_distance(const std::vector<Message>& code,
                                   const ChannelParams& ch);

// Majority-vote decoder for the low regime with e_d = 0 over distinct-data
// messages: reads are grouped by data field (each group must hold exactly K
// reads) and each group elects its index by strict majority.
Message plurality_decode(const ReadPool& pool, const SystemParams& params,
                         const ChannelParams& ch);

// Reference-only inverse for the other regimes: indices of the codewords
// whose output sets contain the pool. Exponential in the enumeration.
std::vector<std::size_t> candidate_sources(
    const ReadPool& pool, const std::vector<Message>& code,
    const ChannelParams& ch,
    std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace dnacc

template <>
struct std::hash<dnacc::ReadPool> {
  std::size_t operator()(const dnacc::ReadPool& p) const noexcept {
    std::size_t h = 0x51ab5a5eULL;
    for (const auto& [s, c] : p.entries()) {
      h = dnacc::hash_combine(h, std::hash<dnacc::Strand>{}(s));
      h = dnacc::hash_combine(h, c);
    }
    return h;
  }
};
