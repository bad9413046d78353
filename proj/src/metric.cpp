#include "dnacc/metric.hpp"

#include <algorithm>
#include <map>

#include "dnacc/bigint.hpp"

namespace dnacc {

int DnaDistance::value() const {
  if (infinite_)
    fail(ErrorCode::OutOfRange, "infinite distance has no finite value");
  return value_;
}

namespace {

// Kuhn's augmenting-path maximum bipartite matching.
struct Matcher {
  int n;
  std::vector<std::vector<int>> adj;   // left -> right neighbor lists
  std::vector<int> match_left, match_right;

  explicit Matcher(int size)
      : n(size), adj(size), match_left(size, -1), match_right(size, -1) {}

  bool augment(int u, std::vector<char>& used) {
    for (int v : adj[u]) {
      if (used[v]) continue;
      used[v] = 1;
      if (match_right[v] < 0 || augment(match_right[v], used)) {
        match_left[u] = v;
        match_right[v] = u;
        return true;
      }
    }
    return false;
  }

  int solve() {
    int matched = 0;
    std::vector<char> used;
    for (int u = 0; u < n; ++u) {
      used.assign(n, 0);
      if (augment(u, used)) ++matched;
    }
    return matched;
  }
};

Matcher matcher_at_threshold(const std::vector<std::vector<int>>& dist, int t) {
  Matcher m(static_cast<int>(dist.size()));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (dist[i][j] <= t) m.adj[i].push_back(j);
  return m;
}

std::vector<std::vector<int>> distance_table(const std::vector<BitVector>& a,
                                             const std::vector<BitVector>& b) {
  std::vector<std::vector<int>> d(a.size(), std::vector<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      d[i][j] = hamming_distance(a[i], b[j]);
  return d;
}

}  // namespace

Matching bottleneck_matching(const std::vector<BitVector>& left,
                             const std::vector<BitVector>& right) {
  if (left.size() != right.size() || left.empty())
    fail(ErrorCode::SizeMismatch,
         "bottleneck matching needs two nonempty sets of equal size");
  auto dist = distance_table(left, right);
  int n = static_cast<int>(left.size());

  // Candidate weights are the distances that actually occur.
  std::vector<int> values;
  for (const auto& row : dist) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Smallest threshold admitting a perfect matching; the largest always does.
  int lo = 0, hi = static_cast<int>(values.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (matcher_at_threshold(dist, values[mid]).solve() == n)
      hi = mid;
    else
      lo = mid + 1;
  }

  Matcher m = matcher_at_threshold(dist, values[lo]);
  m.solve();
  Matching result;
  result.weight = 0;
  for (int i = 0; i < n; ++i) {
    int j = m.match_left[i];
    result.pairs.emplace_back(left[static_cast<std::size_t>(i)],
                              right[static_cast<std::size_t>(j)]);
    result.weight = std::max(result.weight, dist[i][j]);
  }
  return result;
}

std::optional<std::vector<BitVector>> hall_violating_set(
    const std::vector<BitVector>& left, const std::vector<BitVector>& right,
    int threshold) {
  if (left.size() != right.size() || left.empty())
    fail(ErrorCode::SizeMismatch,
         "hall witness needs two nonempty sets of equal size");
  auto dist = distance_table(left, right);
  int n = static_cast<int>(left.size());
  Matcher m = matcher_at_threshold(dist, threshold);
  if (m.solve() == n) return std::nullopt;

  // Koenig: grow alternating paths from every unmatched left vertex. The
  // reached left vertices S then satisfy |N(S)| < |S|.
  std::vector<char> left_seen(static_cast<std::size_t>(n), 0);
  std::vector<char> right_seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  for (int u = 0; u < n; ++u)
    if (m.match_left[u] < 0) {
      left_seen[static_cast<std::size_t>(u)] = 1;
      stack.push_back(u);
    }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : m.adj[u]) {
      if (right_seen[static_cast<std::size_t>(v)]) continue;
      right_seen[static_cast<std::size_t>(v)] = 1;
      int w = m.match_right[v];  // matched, else an augmenting path existed
      if (w >= 0 && !left_seen[static_cast<std::size_t>(w)]) {
        left_seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  std::vector<BitVector> witness;
  for (int u = 0; u < n; ++u)
    if (left_seen[static_cast<std::size_t>(u)])
      witness.push_back(left[static_cast<std::size_t>(u)]);
  return witness;
}

DnaDistanceDetail dna_distance_detail(const Message& a, const Message& b) {
  if (a.params() != b.params())
    fail(ErrorCode::ParamMismatch, "messages live in different spaces");
  if (data_multiset(a) != data_multiset(b)) return DnaDistanceDetail{};

  DnaDistanceDetail detail;
  int worst = 0;
  DataMultiset fields = data_multiset(a);
  for (const auto& [u, count] : fields.entries()) {
    (void)count;
    Matching m = bottleneck_matching(indices_of(u, a), indices_of(u, b));
    detail.field_weights.emplace_back(u, m.weight);
    worst = std::max(worst, m.weight);
  }
  detail.distance = DnaDistance::finite(worst);
  return detail;
}

DnaDistance dna_distance(const Message& a, const Message& b) {
  return dna_distance_detail(a, b).distance;
}

DnaDistance code_dna_distance(const std::vector<Message>& code) {
  if (code.size() < 2)
    fail(ErrorCode::TooFewCodewords,
         "code distance needs at least two codewords");
  DnaDistance best = DnaDistance::infinite();
  for (std::size_t i = 0; i < code.size(); ++i)
    for (std::size_t j = i + 1; j < code.size(); ++j)
      best = std::min(best, dna_distance(code[i], code[j]));
  return best;
}

int index_distance(const std::vector<BitVector>& a,
                   const std::vector<BitVector>& b) {
  if (a.size() != b.size() || a.empty())
    fail(ErrorCode::ParamMismatch, "tuples of different arity");
  int worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, hamming_distance(a[i], b[i]));
  return worst;
}

namespace {

// Index groups of z paired with every candidate replacement group feasible
// at the given radius.
struct GroupCandidates {
  BitVector data;
  std::vector<std::vector<BitVector>> groups;
};

void subsets_of(const std::vector<BitVector>& pool, std::size_t k,
                std::size_t first, std::vector<BitVector>& acc,
                const std::vector<BitVector>& original, int radius,
                std::vector<std::vector<BitVector>>& out) {
  if (acc.size() == k) {
    // Feasible iff some bijection keeps every move within the radius.
    auto dist = distance_table(original, acc);
    Matcher m = matcher_at_threshold(dist, radius);
    if (m.solve() == static_cast<int>(k)) out.push_back(acc);
    return;
  }
  for (std::size_t i = first; i < pool.size(); ++i) {
    if (pool.size() - i < k - acc.size()) break;
    acc.push_back(pool[i]);
    subsets_of(pool, k, i + 1, acc, original, radius, out);
    acc.pop_back();
  }
}

void stitch_groups(const Message& z, int radius,
                   const std::vector<GroupCandidates>& cands, std::size_t at,
                   std::vector<Strand>& acc, std::set<Message>& out) {
  if (at == cands.size()) {
    Message y(z.params(), acc);
    if (dna_distance(z, y) <= radius) out.insert(std::move(y));
    return;
  }
  for (const auto& group : cands[at].groups) {
    bool collision = false;
    for (const auto& idx : group)
      for (const auto& s : acc)
        if (s.index == idx) {
          collision = true;
          break;
        }
    if (collision) continue;
    for (const auto& idx : group) acc.push_back({idx, cands[at].data});
    stitch_groups(z, radius, cands, at + 1, acc, out);
    acc.erase(acc.end() - static_cast<std::ptrdiff_t>(group.size()), acc.end());
  }
}

}  // namespace

std::set<Message> metric_ball(const Message& z, int radius,
                              std::uint64_t budget) {
  if (radius < 0) fail(ErrorCode::OutOfRange, "negative ball radius");

  std::vector<GroupCandidates> cands;
  BigInt total = 1;
  DataMultiset fields = data_multiset(z);
  for (const auto& [u, count] : fields.entries()) {
    (void)count;
    std::vector<BitVector> group = indices_of(u, z);

    // Candidate index pool: union of Hamming balls around current indices.
    BigInt ball_size = 0;
    int l = group.front().length();
    for (int i = 0; i <= std::min(radius, l); ++i) ball_size += binomial(l, i);
    if (ball_size * group.size() > budget)
      fail(ErrorCode::BudgetExceeded,
           "ball enumeration needs " +
               BigInt(ball_size * group.size()).str() +
               " candidate indices per field, budget " + std::to_string(budget));
    std::vector<BitVector> pool;
    for (const auto& idx : group) {
      auto b = hamming_ball(idx, radius);
      pool.insert(pool.end(), b.begin(), b.end());
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    total *= binomial(pool.size(), group.size());
    if (total > budget)
      fail(ErrorCode::BudgetExceeded,
           "ball enumeration needs " + total.str() +
               " candidate combinations, budget " + std::to_string(budget));

    GroupCandidates gc{u, {}};
    std::vector<BitVector> acc;
    subsets_of(pool, group.size(), 0, acc, group, radius, gc.groups);
    cands.push_back(std::move(gc));
  }

  std::set<Message> out;
  std::vector<Strand> acc;
  stitch_groups(z, radius, cands, 0, acc, out);
  return out;
}

}  // namespace dnacc
