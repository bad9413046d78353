#include "dnacc/channel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "dnacc/bigint.hpp"
#include "dnacc/metric.hpp"
#include "dnacc/rng.hpp"

namespace dnacc {

namespace {

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    fail(ErrorCode::ParseError, "expected an unsigned integer, got '" + s + "'");
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "integer out of range: '" + s + "'");
  }
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational r{parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1))};
    if (r.den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    return r.normalized();
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) fail(ErrorCode::ParseError, "too many decimal digits");
    std::string whole = text.substr(0, dot);
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::uint64_t num = (whole.empty() ? 0 : parse_u64(whole)) * den +
                        (frac.empty() ? 0 : parse_u64(frac));
    return Rational{num, den}.normalized();
  }
  return Rational{parse_u64(text), 1};
}

Rational Rational::normalized() const {
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator");
  std::uint64_t g = std::gcd(num, den);
  return Rational{num / g, den / g};
}

std::string Rational::to_string() const {
  Rational r = normalized();
  if (r.den == 1) return std::to_string(r.num);
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

const char* regime_name(Regime r) noexcept {
  switch (r) {
    case Regime::Tau1: return "tau1";
    case Regime::High: return "high";
    case Regime::Low: return "low";
  }
  return "?";
}

void ChannelParams::validate() const {
  if (tau.den == 0) fail(ErrorCode::ParseError, "zero denominator in tau");
  if (tau.num > tau.den)
    fail(ErrorCode::OutOfRange, "tau must lie in [0, 1], got " + tau.to_string());
  if (copies < 1) fail(ErrorCode::OutOfRange, "need at least one copy per strand");
}

std::uint32_t ChannelParams::max_erroneous() const {
  validate();
  unsigned __int128 t =
      static_cast<unsigned __int128>(tau.num) * copies / tau.den;
  return static_cast<std::uint32_t>(t);
}

Regime ChannelParams::regime() const {
  validate();
  if (tau.num == tau.den) return Regime::Tau1;
  std::uint32_t t = max_erroneous();
  return 2ULL * t >= copies ? Regime::High : Regime::Low;
}

ReadPool::ReadPool(const std::vector<Strand>& reads) {
  std::vector<Strand> sorted = reads;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& s : sorted) {
    if (!entries_.empty() && entries_.back().first == s)
      ++entries_.back().second;
    else
      entries_.emplace_back(s, 1);
  }
}

ReadPool ReadPool::from_counts(
    std::vector<std::pair<Strand, std::uint32_t>> entries) {
  std::sort(entries.begin(), entries.end());
  ReadPool pool;
  for (auto& [s, c] : entries) {
    if (c == 0) continue;
    if (!pool.entries_.empty() && pool.entries_.back().first == s)
      pool.entries_.back().second += c;
    else
      pool.entries_.emplace_back(s, c);
  }
  return pool;
}

std::uint64_t ReadPool::total() const {
  std::uint64_t t = 0;
  for (const auto& [s, c] : entries_) t += c;
  return t;
}

namespace {

BitVector flip_positions(const BitVector& v, const std::vector<std::uint64_t>& positions) {
  BitVector out = v;
  for (auto p : positions) out = out.with_flipped(static_cast<int>(p));
  return out;
}

}  // namespace

ReadPool sample_channel_output(const Message& z, const ChannelParams& ch,
                               std::uint64_t seed, bool worst_case) {
  ch.validate();
  const std::uint32_t t = ch.max_erroneous();
  const int l = static_cast<int>(z.params().index_length);
  const int dl = static_cast<int>(z.params().data_length());
  const std::uint32_t wi_max = std::min<std::uint32_t>(ch.index_errors, l);
  const std::uint32_t wd_max = std::min<std::uint32_t>(ch.data_errors, dl);

  SplitMix64 rng(seed);
  std::vector<Strand> reads;
  reads.reserve(static_cast<std::size_t>(z.params().strand_count) * ch.copies);
  for (const auto& s : z.strands()) {
    std::uint32_t corrupted =
        worst_case ? t : static_cast<std::uint32_t>(rng.below(t + 1ULL));
    for (std::uint32_t k = 0; k < ch.copies - corrupted; ++k) reads.push_back(s);
    for (std::uint32_t k = 0; k < corrupted; ++k) {
      std::uint32_t wi =
          worst_case ? wi_max : static_cast<std::uint32_t>(rng.below(wi_max + 1ULL));
      std::uint32_t wd =
          worst_case ? wd_max : static_cast<std::uint32_t>(rng.below(wd_max + 1ULL));
      BitVector index = flip_positions(s.index, sample_distinct(rng, l, wi));
      BitVector data = flip_positions(s.data, sample_distinct(rng, dl, wd));
      reads.push_back({index, data});
    }
  }
  return ReadPool(reads);
}

namespace {

// Everything one corrupted read of s may look like, the exact read excluded.
std::vector<Strand> corrupted_reads(const Strand& s, const ChannelParams& ch) {
  std::vector<Strand> out;
  for (const auto& idx : hamming_ball(s.index, static_cast<int>(ch.index_errors)))
    for (const auto& dat : hamming_ball(s.data, static_cast<int>(ch.data_errors))) {
      Strand r{idx, dat};
      if (r != s) out.push_back(r);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Multisets of exactly `size` picks from options, as count maps.
void multisets_of(const std::vector<Strand>& options, std::uint32_t size,
                  std::size_t first, std::vector<std::pair<Strand, std::uint32_t>>& acc,
                  std::vector<std::vector<std::pair<Strand, std::uint32_t>>>& out) {
  if (size == 0) {
    out.push_back(acc);
    return;
  }
  for (std::size_t i = first; i < options.size(); ++i) {
    for (std::uint32_t take = 1; take <= size; ++take) {
      acc.emplace_back(options[i], take);
      multisets_of(options, size - take, i + 1, acc, out);
      acc.pop_back();
    }
  }
}

// Per-strand chunk: (K - c) exact reads plus a size-c corrupted multiset.
std::vector<std::vector<std::pair<Strand, std::uint32_t>>> strand_options(
    const Strand& s, const ChannelParams& ch) {
  const std::uint32_t t = ch.max_erroneous();
  std::vector<Strand> corrupt = corrupted_reads(s, ch);
  std::vector<std::vector<std::pair<Strand, std::uint32_t>>> out;
  for (std::uint32_t c = 0; c <= t; ++c) {
    std::vector<std::vector<std::pair<Strand, std::uint32_t>>> picks;
    std::vector<std::pair<Strand, std::uint32_t>> acc;
    multisets_of(corrupt, c, 0, acc, picks);
    for (auto& p : picks) {
      if (ch.copies > c) p.emplace_back(s, ch.copies - c);
      out.push_back(std::move(p));
    }
  }
  return out;
}

BigInt multichoose(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  return binomial(BigInt(n) + k - 1, k);
}

void cross_pools(const std::vector<std::vector<std::vector<std::pair<Strand, std::uint32_t>>>>& options,
                 std::size_t at, std::vector<std::pair<Strand, std::uint32_t>>& acc,
                 std::set<ReadPool>& out) {
  if (at == options.size()) {
    out.insert(ReadPool::from_counts(acc));
    return;
  }
  for (const auto& chunk : options[at]) {
    std::size_t mark = acc.size();
    acc.insert(acc.end(), chunk.begin(), chunk.end());
    cross_pools(options, at + 1, acc, out);
    acc.erase(acc.begin() + static_cast<std::ptrdiff_t>(mark), acc.end());
  }
}

}  // namespace

std::vector<ReadPool> enumerate_channel_outputs(const Message& z,
                                                const ChannelParams& ch,
                                                std::uint64_t budget) {
  ch.validate();
  const std::uint32_t t = ch.max_erroneous();

  // Budget check before materializing anything.
  BigInt combinations = 1;
  for (const auto& s : z.strands()) {
    BigInt per_strand = 0;
    std::uint64_t options = static_cast<std::uint64_t>(corrupted_reads(s, ch).size());
    for (std::uint32_t c = 0; c <= t; ++c) per_strand += multichoose(options, c);
    combinations *= per_strand;
    if (combinations > budget)
      fail(ErrorCode::BudgetExceeded,
           "output enumeration needs at least " + combinations.str() +
               " combinations, budget " + std::to_string(budget));
  }

  std::vector<std::vector<std::vector<std::pair<Strand, std::uint32_t>>>> options;
  for (const auto& s : z.strands()) options.push_back(strand_options(s, ch));

  std::set<ReadPool> pools;
  std::vector<std::pair<Strand, std::uint32_t>> acc;
  cross_pools(options, 0, acc, pools);
  return {pools.begin(), pools.end()};
}

DisjointnessResult outputs_disjoint(const Message& a, const Message& b,
                                    const ChannelParams& ch,
                                    std::uint64_t budget) {
  if (a.params() != b.params())
    fail(ErrorCode::ParamMismatch, "messages live in different spaces");
  auto pa = enumerate_channel_outputs(a, ch, budget);
  auto pb = enumerate_channel_outputs(b, ch, budget);
  std::vector<ReadPool> common;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(),
                        std::back_inserter(common));
  if (common.empty()) return {};
  return {false, common.front()};
}

BruteForceVerdict is_dcc_brute(const std::vector<Message>& code,
                               const ChannelParams& ch, std::uint64_t budget) {
  if (code.empty()) fail(ErrorCode::TooFewCodewords, "empty code");
  for (const auto& z : code)
    if (z.params() != code.front().params())
      fail(ErrorCode::ParamMismatch, "codewords live in different spaces");

  std::vector<std::vector<ReadPool>> outputs;
  outputs.reserve(code.size());
  for (const auto& z : code)
    outputs.push_back(enumerate_channel_outputs(z, ch, budget));

  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j) {
      std::vector<ReadPool> common;
      std::set_intersection(outputs[i].begin(), outputs[i].end(),
                            outputs[j].begin(), outputs[j].end(),
                            std::back_inserter(common));
      if (!common.empty())
        return {false, std::make_pair(i, j), common.front()};
    }
  return {};
}

const char* verdict_name(Verdict v) noexcept {
  switch (v) {
    case Verdict::GuaranteedYes: return "GuaranteedYes";
    case Verdict::GuaranteedNo: return "GuaranteedNo";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DistanceVerdict is_dcc_by_distance(const std::vector<Message>& code,
                                   const ChannelParams& ch) {
  ch.validate();
  if (ch.data_errors != 0)
    fail(ErrorCode::UnsupportedEd,
         "distance classification is only defined for e_d = 0");
  if (code.empty())
    fail(ErrorCode::TooFewCodewords, "empty code");
  for (const auto& z : code)
    if (z.params() != code.front().params())
      fail(ErrorCode::ParamMismatch, "codewords live in different spaces");
  if (code.size() == 1)
    return {Verdict::GuaranteedYes, "a single codeword never collides"};

  // Claim-1 decomposition: with error-free data fields, only codewords
  // sharing a data multiset can ever collide.
  std::map<DataMultiset, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < code.size(); ++i)
    groups[data_multiset(code[i])].push_back(i);

  const int ei = static_cast<int>(ch.index_errors);
  bool all_distinct_data = true;
  for (const auto& z : code) all_distinct_data &= is_distinct_data(z);

  // Smallest within-group distance, with the group that attains it.
  DnaDistance min_group = DnaDistance::infinite();
  std::string min_desc;
  for (const auto& [ms, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        DnaDistance d = dna_distance(code[members[a]], code[members[b]]);
        if (d < min_group) {
          min_group = d;
          min_desc = "codewords " + std::to_string(members[a]) + "," +
                     std::to_string(members[b]);
        }
      }
  }

  auto dist_text = [&]() {
    return min_group.is_infinite() ? std::string("inf")
                                   : std::to_string(min_group.value());
  };

  switch (ch.regime()) {
    case Regime::Tau1:
      if (min_group > 2 * ei)
        return {Verdict::GuaranteedYes,
                "every shared-multiset distance exceeds 2*e_i = " +
                    std::to_string(2 * ei)};
      return {Verdict::GuaranteedNo, "distance " + dist_text() + " between " +
                                         min_desc + " is at most 2*e_i = " +
                                         std::to_string(2 * ei)};
    case Regime::High:
      if (min_group <= ei)
        return {Verdict::GuaranteedNo, "distance " + dist_text() + " between " +
                                           min_desc + " is at most e_i = " +
                                           std::to_string(ei)};
      if (all_distinct_data)
        return {Verdict::GuaranteedYes,
                "all codewords have distinct data and every shared-set "
                "distance exceeds e_i = " + std::to_string(ei)};
      return {Verdict::Inconclusive,
              "repeated data fields present; distance above e_i is necessary "
              "but not known sufficient here"};
    case Regime::Low:
      if (all_distinct_data)
        return {Verdict::GuaranteedYes,
                "all codewords have distinct data; the low regime separates "
                "the whole distinct-data space"};
      if (min_group > ei)
        return {Verdict::GuaranteedYes,
                "every shared-multiset distance exceeds e_i = " +
                    std::to_string(ei)};
      return {Verdict::Inconclusive,
              "repeated data fields and distance at most e_i; no applicable "
              "guarantee in either direction"};
  }
  return {Verdict::Inconclusive, "unreachable"};
}

Message plurality_decode(const ReadPool& pool, const SystemParams& params,
                         const ChannelParams& ch) {
  ch.validate();
  if (ch.data_errors != 0)
    fail(ErrorCode::UnsupportedEd, "plurality decoding needs e_d = 0");
  if (ch.regime() != Regime::Low)
    fail(ErrorCode::PreconditionFailed,
         "plurality decoding needs the low regime (floor(tau*K) < K/2)");
  if (pool.total() !=
      static_cast<std::uint64_t>(params.strand_count) * ch.copies)
    fail(ErrorCode::WrongCount,
         "pool holds " + std::to_string(pool.total()) + " reads, expected " +
             std::to_string(params.strand_count) + "*" +
             std::to_string(ch.copies));

  // Error-free data plus distinct-data source: reads cluster by data field.
  std::map<BitVector, std::map<BitVector, std::uint32_t>> clusters;
  for (const auto& [s, c] : pool.entries()) clusters[s.data][s.index] += c;
  if (clusters.size() != params.strand_count)
    fail(ErrorCode::WrongCount,
         "pool clusters into " + std::to_string(clusters.size()) +
             " data fields, expected " + std::to_string(params.strand_count));

  std::vector<Strand> strands;
  for (const auto& [data, votes] : clusters) {
    std::uint64_t cluster_total = 0;
    for (const auto& [idx, c] : votes) cluster_total += c;
    if (cluster_total != ch.copies)
      fail(ErrorCode::WrongCount,
           "data field " + data.to_string() + " has " +
               std::to_string(cluster_total) + " reads, expected " +
               std::to_string(ch.copies));
    const BitVector* winner = nullptr;
    std::uint32_t winner_count = 0;
    for (const auto& [idx, c] : votes)
      if (c > winner_count) {
        winner = &idx;
        winner_count = c;
      }
    // Strict majority; anything else is an out-of-model pool.
    if (2ULL * winner_count <= ch.copies)
      fail(ErrorCode::AmbiguousMajority,
           "no index holds a strict majority for data field " + data.to_string());
    strands.push_back({*winner, data});
  }
  return Message(params, std::move(strands));
}

std::vector<std::size_t> candidate_sources(const ReadPool& pool,
                                           const std::vector<Message>& code,
                                           const ChannelParams& ch,
                                           std::uint64_t budget) {
  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < code.size(); ++i) {
    auto outputs = enumerate_channel_outputs(code[i], ch, budget);
    if (std::binary_search(outputs.begin(), outputs.end(), pool))
      hits.push_back(i);
  }
  return hits;
}

}  // namespace dnacc
