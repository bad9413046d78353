#include "dnacc/indexcodes.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "dnacc/metric.hpp"
#include "dnacc/rng.hpp"

namespace dnacc {

IndexTuple::IndexTuple(std::vector<BitVector> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty())
    fail(ErrorCode::WrongCount, "index tuple needs at least one entry");
  for (const auto& e : entries_)
    if (e.length() != entries_.front().length())
      fail(ErrorCode::LengthMismatch, "tuple entries of unequal length");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    for (std::size_t j = i + 1; j < entries_.size(); ++j)
      if (entries_[i] == entries_[j])
        fail(ErrorCode::DuplicateIndex,
             "tuple repeats index " + entries_[i].to_string());
}

std::uint32_t IndexTuple::index_length() const {
  return static_cast<std::uint32_t>(entries_.front().length());
}

CodeValidation validate_index_code(const std::vector<IndexTuple>& rows,
                                   const IndexCodeParams& params) {
  CodeValidation v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].strand_count() != params.strand_count ||
        rows[i].index_length() != params.index_length) {
      v.ok = false;
      v.reason = "row " + std::to_string(i) + " has shape (" +
                 std::to_string(rows[i].index_length()) + "," +
                 std::to_string(rows[i].strand_count()) + "), expected (" +
                 std::to_string(params.index_length) + "," +
                 std::to_string(params.strand_count) + ")";
      return v;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      int d = index_distance(rows[i].entries(), rows[j].entries());
      if (d < static_cast<int>(params.min_distance)) {
        v.ok = false;
        v.violating_pair = {i, j};
        v.observed_distance = d;
        v.reason = "rows " + std::to_string(i) + " and " + std::to_string(j) +
                   " are at distance " + std::to_string(d) + " < " +
                   std::to_string(params.min_distance);
        return v;
      }
    }
  return v;
}

LinearInnerCode::LinearInnerCode(std::uint32_t length,
                                 std::vector<BitVector> codewords)
    : length_(length), words_(std::move(codewords)) {
  if (length_ < 1 || length_ > 20)
    fail(ErrorCode::OutOfRange, "inner code length must be in [1, 20]");
  if (words_.empty())
    fail(ErrorCode::NotLinear, "a linear code contains at least the zero word");
  for (const auto& w : words_)
    if (w.length() != static_cast<int>(length_))
      fail(ErrorCode::LengthMismatch, "inner codeword of wrong length");
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  for (const auto& a : words_)
    for (const auto& b : words_) {
      BitVector sum(static_cast<int>(length_), a.bits() ^ b.bits());
      if (!std::binary_search(words_.begin(), words_.end(), sum))
        fail(ErrorCode::NotLinear, "codeword list not closed under xor: " +
                                       a.to_string() + " + " + b.to_string());
    }
  min_distance_ = length_ + 1;  // convention for the trivial code {0}
  for (const auto& w : words_)
    if (w.weight() > 0)
      min_distance_ = std::min<std::uint32_t>(min_distance_,
                                              static_cast<std::uint32_t>(w.weight()));
}

LinearInnerCode LinearInnerCode::parity_check(std::uint32_t length) {
  std::vector<BitVector> words;
  for (const auto& v : all_vectors(static_cast<int>(length)))
    if (v.weight() % 2 == 0) words.push_back(v);
  return LinearInnerCode(length, std::move(words));
}

LinearInnerCode LinearInnerCode::repetition(std::uint32_t length) {
  std::vector<BitVector> words{BitVector::zero(static_cast<int>(length))};
  words.emplace_back(static_cast<int>(length),
                     length == 64 ? ~0ULL : (1ULL << length) - 1);
  return LinearInnerCode(length, std::move(words));
}

LinearInnerCode LinearInnerCode::hamming(std::uint32_t m) {
  if (m < 2 || m > 4)
    fail(ErrorCode::OutOfRange, "hamming inner code supports m in [2, 4]");
  std::uint32_t n = (1u << m) - 1;
  std::vector<BitVector> words;
  for (const auto& v : all_vectors(static_cast<int>(n))) {
    // Position p (1-based) contributes its binary value to the syndrome.
    std::uint32_t syndrome = 0;
    for (std::uint32_t p = 1; p <= n; ++p)
      if (v.bit(static_cast<int>(p - 1))) syndrome ^= p;
    if (syndrome == 0) words.push_back(v);
  }
  return LinearInnerCode(n, std::move(words));
}

std::vector<Coset> coset_partition(const LinearInnerCode& inner) {
  auto space = all_vectors(static_cast<int>(inner.length()));
  std::vector<char> claimed(space.size(), 0);
  std::vector<Coset> cosets;
  for (const auto& w : space) {
    if (claimed[w.bits()]) continue;
    Coset c{w, {}};
    for (const auto& cw : inner.codewords()) {
      BitVector member(w.length(), w.bits() ^ cw.bits());
      claimed[member.bits()] = 1;
      c.members.push_back(member);
    }
    std::sort(c.members.begin(), c.members.end());
    c.leader = *std::min_element(
        c.members.begin(), c.members.end(), [](const BitVector& a, const BitVector& b) {
          return std::pair(a.weight(), a.bits()) < std::pair(b.weight(), b.bits());
        });
    cosets.push_back(std::move(c));
  }
  std::sort(cosets.begin(), cosets.end(), [](const Coset& a, const Coset& b) {
    return std::pair(a.leader.weight(), a.leader.bits()) <
           std::pair(b.leader.weight(), b.leader.bits());
  });
  return cosets;
}

namespace {

std::uint32_t log2_exact(std::uint32_t m) {
  std::uint32_t l = 0;
  while ((1ULL << l) < m) ++l;
  if ((1ULL << l) != m)
    fail(ErrorCode::NotPowerOfTwo,
         "M must be a power of two, got " + std::to_string(m));
  return l;
}

}  // namespace

CosetConstructionResult construct_coset(std::uint32_t strand_count,
                                        std::uint32_t min_distance,
                                        const LinearInnerCode& inner,
                                        std::uint64_t row_budget) {
  std::uint32_t l = log2_exact(strand_count);
  if (l < 1) fail(ErrorCode::OutOfRange, "need M >= 2");
  if (inner.length() != l)
    fail(ErrorCode::InvalidInner, "inner code length " +
                                      std::to_string(inner.length()) +
                                      " does not match log2(M) = " + std::to_string(l));
  if (inner.min_distance() < min_distance)
    fail(ErrorCode::InvalidInner,
         "inner code distance " + std::to_string(inner.min_distance()) +
             " is below the target " + std::to_string(min_distance));

  auto cosets = coset_partition(inner);
  const std::uint32_t a = inner.size();
  const std::size_t coset_count = cosets.size();

  CosetConstructionReport report;
  report.base_formula = ipow(factorial(a), coset_count);
  if (report.base_formula > row_budget)
    fail(ErrorCode::BudgetExceeded,
         "construction needs " + report.base_formula.str() + " base rows, budget " +
             std::to_string(row_budget));

  // Base rows: one permutation of each coset, concatenated block by block.
  std::vector<std::vector<std::vector<BitVector>>> perms(coset_count);
  for (std::size_t i = 0; i < coset_count; ++i) {
    std::vector<BitVector> p = cosets[i].members;  // sorted already
    do {
      perms[i].push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  std::vector<IndexTuple> rows;
  std::vector<std::size_t> pick(coset_count, 0);
  while (true) {
    std::vector<BitVector> row;
    row.reserve(strand_count);
    for (std::size_t i = 0; i < coset_count; ++i)
      row.insert(row.end(), perms[i][pick[i]].begin(), perms[i][pick[i]].end());
    rows.emplace_back(std::move(row));
    std::size_t at = coset_count;
    while (at > 0 && ++pick[at - 1] == perms[at - 1].size()) pick[--at] = 0;
    if (at == 0) break;
  }
  report.base_rows = rows.size();

  // Augmentation: swap a surviving coset word c' (weight >= d) with the zero
  // word across the first entries of their blocks. Candidates are validated
  // against everything accepted so far; the report itemizes any drops.
  const BitVector zero = BitVector::zero(static_cast<int>(l));
  const std::size_t base_count = rows.size();
  const IndexCodeParams params{l, strand_count, min_distance};
  for (std::size_t i = 1; i < coset_count; ++i) {
    std::size_t block = i * a;  // first entry of coset block i
    for (const auto& cprime : cosets[i].members) {
      if (cprime.weight() < static_cast<int>(min_distance)) continue;
      ++report.survivor_words;
      for (std::size_t r = 0; r < base_count; ++r) {
        const auto& entries = rows[r].entries();
        if (entries[0] != zero || entries[block] != cprime) continue;
        ++report.augmented_candidates;
        std::vector<BitVector> swapped = entries;
        swapped[0] = cprime;
        swapped[block] = zero;
        IndexTuple candidate(std::move(swapped));
        bool keep = true;
        for (std::size_t other = 0; other < rows.size(); ++other) {
          int d = index_distance(candidate.entries(), rows[other].entries());
          if (d < static_cast<int>(min_distance)) {
            report.dropped.push_back({candidate, other, d});
            keep = false;
            break;
          }
        }
        if (keep) {
          rows.push_back(std::move(candidate));
          ++report.augmented_accepted;
          if (rows.size() > row_budget)
            fail(ErrorCode::BudgetExceeded,
                 "construction outgrew the row budget " + std::to_string(row_budget));
        }
      }
    }
  }
  report.augmented_formula =
      BigInt(report.survivor_words) * report.base_formula / (BigInt(a) * a);

  return {IndexCode{params, std::move(rows)}, std::move(report)};
}

IndexCode construct_extend_partial(const IndexCode& code, std::uint32_t steps,
                                   std::uint64_t row_budget) {
  const auto& p = code.params;
  if (steps > p.strand_count)
    fail(ErrorCode::OutOfRange, "extension steps exceed the column count");
  const std::uint32_t h = (p.min_distance + 1) / 2;  // ceil(d/2)
  if (h > p.index_length)
    fail(ErrorCode::OverlapWindow,
         "pad width " + std::to_string(h) + " exceeds index length " +
             std::to_string(p.index_length) + "; windows would overlap");
  CodeValidation input_check = validate_index_code(code.rows, p);
  if (!input_check.ok)
    fail(ErrorCode::PreconditionFailed, "input code invalid: " + input_check.reason);
  BigInt final_rows = BigInt(code.rows.size()) << steps;
  if (final_rows > row_budget)
    fail(ErrorCode::BudgetExceeded,
         "extension would emit " + final_rows.str() + " rows, budget " +
             std::to_string(row_budget));

  const std::uint32_t lp = p.index_length + h;
  std::vector<IndexTuple> rows;
  rows.reserve(code.rows.size() << steps);
  for (const auto& row : code.rows) {
    std::vector<BitVector> padded;
    padded.reserve(p.strand_count);
    for (const auto& e : row.entries()) padded.push_back(e.padded(static_cast<int>(h)));
    rows.emplace_back(std::move(padded));
  }
  for (std::uint32_t j = 0; j < steps; ++j) {
    const std::size_t current = rows.size();
    for (std::size_t r = 0; r < current; ++r) {
      std::vector<BitVector> twin = rows[r].entries();
      twin[j] = twin[j]
                    .with_flipped_window(0, static_cast<int>(h))
                    .with_flipped_window(static_cast<int>(lp - h), static_cast<int>(h));
      rows.emplace_back(std::move(twin));
    }
  }
  return IndexCode{{lp, p.strand_count, p.min_distance}, std::move(rows)};
}

IndexCode construct_extend(const IndexCode& code, std::uint64_t row_budget) {
  IndexCode out = construct_extend_partial(code, code.params.strand_count, row_budget);
  if (out.rows.size() <= 4096) {
    CodeValidation check = validate_index_code(out.rows, out.params);
    if (!check.ok)
      fail(ErrorCode::PreconditionFailed,
           "extension output failed validation: " + check.reason);
  }
  return out;
}

namespace {

void enumerate_tuples(std::uint32_t l, std::uint32_t m,
                      std::vector<BitVector>& acc, std::vector<char>& used,
                      std::vector<IndexTuple>& out) {
  if (acc.size() == m) {
    out.emplace_back(acc);
    return;
  }
  for (std::uint64_t v = 0; v < (1ULL << l); ++v) {
    if (used[v]) continue;
    used[v] = 1;
    acc.emplace_back(static_cast<int>(l), v);
    enumerate_tuples(l, m, acc, used, out);
    acc.pop_back();
    used[v] = 0;
  }
}

std::vector<IndexTuple> all_tuples(std::uint32_t l, std::uint32_t m) {
  std::vector<IndexTuple> out;
  std::vector<BitVector> acc;
  std::vector<char> used(1ULL << l, 0);
  enumerate_tuples(l, m, acc, used, out);
  return out;
}

// Branch-and-bound maximum clique with greedy coloring bounds.
struct CliqueSearch {
  std::size_t n;
  std::vector<std::vector<std::uint64_t>> adj;  // bitset rows
  std::uint64_t nodes = 0, node_budget;
  std::vector<int> best;

  bool edge(std::size_t i, std::size_t j) const {
    return (adj[i][j >> 6] >> (j & 63)) & 1u;
  }

  void expand(std::vector<int>& r, std::vector<int>& p) {
    if (++nodes > node_budget)
      fail(ErrorCode::BudgetExceeded,
           "clique search exceeded " + std::to_string(node_budget) + " nodes");
    if (p.empty()) {
      if (r.size() > best.size()) best = r;
      return;
    }
    // Greedy coloring; color = clique-size upper bound for that vertex.
    std::vector<std::vector<int>> classes;
    for (int v : p) {
      std::size_t c = 0;
      while (c < classes.size()) {
        bool clash = false;
        for (int u : classes[c])
          if (edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) {
            clash = true;
            break;
          }
        if (!clash) break;
        ++c;
      }
      if (c == classes.size()) classes.emplace_back();
      classes[c].push_back(v);
    }
    std::vector<int> order;
    std::vector<int> color;
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (int v : classes[c]) {
        order.push_back(v);
        color.push_back(static_cast<int>(c) + 1);
      }
    for (std::size_t i = order.size(); i-- > 0;) {
      if (r.size() + static_cast<std::size_t>(color[i]) <= best.size()) return;
      int v = order[i];
      r.push_back(v);
      std::vector<int> next;
      for (std::size_t j = 0; j < i; ++j)
        if (edge(static_cast<std::size_t>(order[j]), static_cast<std::size_t>(v)))
          next.push_back(order[j]);
      expand(r, next);
      r.pop_back();
    }
  }
};

}  // namespace

ExactSearchResult search_exact_max_code(std::uint32_t index_length,
                                        std::uint32_t strand_count,
                                        std::uint32_t min_distance,
                                        std::uint64_t vertex_budget,
                                        std::uint64_t node_budget) {
  if (min_distance < 1) fail(ErrorCode::OutOfRange, "need d >= 1");
  if (strand_count < 1) fail(ErrorCode::OutOfRange, "need M >= 1");
  if (index_length < 1 || index_length > 30)
    fail(ErrorCode::OutOfRange, "index length out of range");
  if ((BigInt(1) << index_length) < strand_count)
    fail(ErrorCode::OutOfRange, "index space cannot hold M distinct words");

  const IndexCodeParams params{index_length, strand_count, min_distance};
  BigInt space = falling_factorial(pow2(index_length), strand_count);

  if (min_distance == 1) {
    // Every pair of distinct tuples differs somewhere: the whole space.
    ExactSearchResult res{space, std::nullopt};
    if (space <= vertex_budget) {
      res.code = IndexCode{params, all_tuples(index_length, strand_count)};
    }
    return res;
  }
  if (min_distance > index_length) {
    // Positional distances never exceed the index length.
    std::vector<BitVector> first;
    for (std::uint32_t i = 0; i < strand_count; ++i)
      first.emplace_back(static_cast<int>(index_length), i);
    return {BigInt(1), IndexCode{params, {IndexTuple(std::move(first))}}};
  }

  if (space > vertex_budget)
    fail(ErrorCode::BudgetExceeded,
         "tuple space holds " + space.str() + " vertices, budget " +
             std::to_string(vertex_budget));

  std::vector<IndexTuple> tuples = all_tuples(index_length, strand_count);
  const std::size_t n = tuples.size();
  const std::size_t words = (n + 63) / 64;

  CliqueSearch search;
  search.n = n;
  search.node_budget = node_budget;
  search.adj.assign(n, std::vector<std::uint64_t>(words, 0));
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (index_distance(tuples[i].entries(), tuples[j].entries()) >=
          static_cast<int>(min_distance)) {
        search.adj[i][j >> 6] |= 1ULL << (j & 63);
        search.adj[j][i >> 6] |= 1ULL << (i & 63);
        ++degree[i];
        ++degree[j];
      }

  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return degree[static_cast<std::size_t>(x)] >
                                              degree[static_cast<std::size_t>(y)]; });

  // Seed with a greedy clique so pruning bites immediately.
  for (int v : order) {
    bool fits = true;
    for (int u : search.best)
      if (!search.edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v))) {
        fits = false;
        break;
      }
    if (fits) search.best.push_back(v);
  }

  std::vector<int> r;
  search.expand(r, order);

  std::vector<IndexTuple> rows;
  rows.reserve(search.best.size());
  for (int v : search.best) rows.push_back(tuples[static_cast<std::size_t>(v)]);
  std::sort(rows.begin(), rows.end());
  return {BigInt(rows.size()), IndexCode{params, std::move(rows)}};
}

IndexCode search_greedy(std::uint32_t index_length, std::uint32_t strand_count,
                        std::uint32_t min_distance, std::uint64_t seed,
                        std::uint64_t attempts,
                        const std::optional<IndexCode>& warm_start) {
  if (min_distance < 1) fail(ErrorCode::OutOfRange, "need d >= 1");
  if (index_length < 1 || index_length > 62)
    fail(ErrorCode::OutOfRange, "index length out of range");
  if ((BigInt(1) << index_length) < strand_count)
    fail(ErrorCode::OutOfRange, "index space cannot hold M distinct words");

  const IndexCodeParams params{index_length, strand_count, min_distance};
  std::vector<IndexTuple> rows;
  if (warm_start) {
    if (warm_start->params.index_length != index_length ||
        warm_start->params.strand_count != strand_count)
      fail(ErrorCode::ParamMismatch, "warm start has different (l, M)");
    CodeValidation check = validate_index_code(warm_start->rows, params);
    if (!check.ok)
      fail(ErrorCode::PreconditionFailed, "warm start invalid: " + check.reason);
    rows = warm_start->rows;
  }

  auto compatible = [&](const IndexTuple& t) {
    for (const auto& row : rows)
      if (index_distance(t.entries(), row.entries()) <
          static_cast<int>(min_distance))
        return false;
    return true;
  };

  SplitMix64 rng(seed);
  BigInt space = falling_factorial(pow2(index_length), strand_count);
  if (space <= 200'000) {
    std::vector<IndexTuple> tuples = all_tuples(index_length, strand_count);
    shuffle(rng, tuples);
    for (const auto& t : tuples)
      if (compatible(t)) rows.push_back(t);
  } else {
    for (std::uint64_t i = 0; i < attempts; ++i) {
      auto picks = sample_distinct(rng, 1ULL << index_length, strand_count);
      std::vector<BitVector> entries;
      entries.reserve(strand_count);
      for (auto v : picks) entries.emplace_back(static_cast<int>(index_length), v);
      IndexTuple t(std::move(entries));
      if (compatible(t)) rows.push_back(std::move(t));
    }
  }
  return IndexCode{params, std::move(rows)};
}

std::vector<Message> messages_from_code(const IndexCode& code,
                                        const std::vector<BitVector>& data_fields) {
  if (data_fields.size() != code.params.strand_count)
    fail(ErrorCode::WrongCount,
         "need exactly M = " + std::to_string(code.params.strand_count) +
             " data fields, got " + std::to_string(data_fields.size()));
  for (std::size_t i = 0; i < data_fields.size(); ++i) {
    if (data_fields[i].length() != data_fields.front().length())
      fail(ErrorCode::LengthMismatch, "data fields of unequal length");
    for (std::size_t j = i + 1; j < data_fields.size(); ++j)
      if (data_fields[i] == data_fields[j])
        fail(ErrorCode::DuplicateData,
             "repeated data field " + data_fields[i].to_string());
  }
  SystemParams params{
      code.params.strand_count,
      code.params.index_length +
          static_cast<std::uint32_t>(data_fields.front().length()),
      code.params.index_length};
  std::vector<Message> out;
  out.reserve(code.rows.size());
  for (const auto& row : code.rows) {
    std::vector<Strand> strands;
    strands.reserve(data_fields.size());
    for (std::size_t i = 0; i < data_fields.size(); ++i)
      strands.push_back({row.entries()[i], data_fields[i]});
    out.emplace_back(params, std::move(strands));
  }
  return out;
}

void write_matrix(std::ostream& os, const IndexCode& code) {
  os << "# l=" << code.params.index_length << " M=" << code.params.strand_count
     << " d=" << code.params.min_distance << "\n";
  for (const auto& row : code.rows) {
    for (std::size_t i = 0; i < row.entries().size(); ++i) {
      if (i) os << ' ';
      os << row.entries()[i].to_string();
    }
    os << "\n";
  }
}

IndexCode read_matrix(std::istream& is) {
  std::optional<IndexCodeParams> params;
  std::vector<IndexTuple> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      if (params) continue;  // later comments are free-form
      std::istringstream ls(line.substr(start + 1));
      std::optional<std::uint32_t> l, m, d;
      std::string tok;
      while (ls >> tok) {
        auto grab = [&](const char* key) -> std::optional<std::uint32_t> {
          std::string_view k(key);
          if (tok.rfind(key, 0) != 0) return std::nullopt;
          std::string v = tok.substr(k.size());
          if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorCode::ParseError,
                 "bad header value '" + tok + "' on line " + std::to_string(lineno));
          return static_cast<std::uint32_t>(std::stoul(v));
        };
        if (auto x = grab("l=")) l = x;
        if (auto x = grab("M=")) m = x;
        if (auto x = grab("d=")) d = x;
      }
      if (l && m && d) params = IndexCodeParams{*l, *m, *d};
      continue;
    }
    std::istringstream ls(line);
    std::vector<BitVector> entries;
    std::string tok;
    while (ls >> tok) entries.push_back(BitVector::from_string(tok));
    rows.emplace_back(std::move(entries));
  }
  if (!params)
    fail(ErrorCode::ParseError, "matrix file lacks a '# l=.. M=.. d=..' header");
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].strand_count() != params->strand_count ||
        rows[i].index_length() != params->index_length)
      fail(ErrorCode::ParseError,
           "matrix row " + std::to_string(i) + " does not match the header shape");
  return IndexCode{*params, std::move(rows)};
}

}  // namespace dnacc
