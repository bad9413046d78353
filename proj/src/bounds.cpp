#include "dnacc/bounds.hpp"

#include <algorithm>
#include <bit>

#include "dnacc/indexcodes.hpp"

namespace dnacc {

namespace {

std::uint32_t log2_exact(std::uint32_t m) {
  std::uint32_t l = 0;
  while ((1ULL << l) < m) ++l;
  if ((1ULL << l) != m)
    fail(ErrorCode::NotPowerOfTwo,
         "M must be a power of two, got " + std::to_string(m));
  return l;
}

BigFloat log2_factorial(std::uint64_t n) {
  if (n == 0) return 0;
  return log2_bigfloat(factorial(n));
}

BigInt bigint_from_u128(unsigned __int128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) | static_cast<std::uint64_t>(v);
}

// floor(2^e) for a nonnegative quad-precision exponent.
BigInt floor_pow2(const BigFloat& e) {
  if (e < 0) return 0;
  BigFloat whole = boost::multiprecision::floor(e);
  BigFloat frac = e - whole;
  // 2^frac in [1,2), carried at 96 fractional bits.
  BigFloat scaled = boost::multiprecision::floor(
      boost::multiprecision::pow(BigFloat(2), frac + 96));
  BigInt mantissa = scaled.convert_to<BigInt>();
  long shift = whole.convert_to<long>() - 96;
  if (shift >= 0) return mantissa << shift;
  return mantissa >> -shift;
}

std::optional<double> to_double_if_finite(const BigFloat& v) {
  double d = v.convert_to<double>();
  if (std::isfinite(d)) return d;
  return std::nullopt;
}

}  // namespace

BinaryMatrix::BinaryMatrix(std::uint32_t n, std::vector<std::uint64_t> rows)
    : n_(n), rows_(std::move(rows)) {
  if (n_ < 1 || n_ > 64)
    fail(ErrorCode::OutOfRange, "matrix dimension must be in [1, 64]");
  if (rows_.size() != n_)
    fail(ErrorCode::SizeMismatch, "row count does not match the dimension");
  if (n_ < 64)
    for (auto r : rows_)
      if (r >> n_)
        fail(ErrorCode::OutOfRange, "row mask wider than the dimension");
}

BigInt permanent(const BinaryMatrix& a) {
  const std::uint32_t n = a.size();
  if (n > kMaxPermanentSize)
    fail(ErrorCode::BudgetExceeded,
         "permanent capped at n = " + std::to_string(kMaxPermanentSize) +
             ", got " + std::to_string(n));

  // Ryser: per(A) = (-1)^n sum over nonempty column subsets S of
  // (-1)^{|S|} prod_i (row_i restricted to S). Gray-code order updates one
  // column per step; row products fit 128 bits since n <= 24.
  std::vector<std::uint32_t> colsum(n, 0);
  BigInt positive = 0, negative = 0;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = 1ULL << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    std::uint64_t next = k ^ (k >> 1);
    std::uint64_t changed = next ^ gray;
    int col = std::countr_zero(changed);
    bool added = next & changed;
    for (std::uint32_t i = 0; i < n; ++i)
      if (a.at(i, static_cast<std::uint32_t>(col))) {
        if (added)
          ++colsum[i];
        else
          --colsum[i];
      }
    gray = next;

    unsigned __int128 prod = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      prod *= colsum[i];
      if (prod == 0) break;
    }
    if (prod == 0) continue;
    // Sign of (-1)^n (-1)^{|S|}.
    bool negative_term = ((n + std::popcount(next)) & 1) != 0;
    if (negative_term)
      negative += bigint_from_u128(prod);
    else
      positive += bigint_from_u128(prod);
  }
  return positive - negative;
}

BinaryMatrix proximity_matrix(std::uint32_t radius, std::uint32_t strand_count) {
  std::uint32_t l = log2_exact(strand_count);
  (void)l;
  std::vector<std::uint64_t> rows(strand_count, 0);
  for (std::uint32_t i = 0; i < strand_count; ++i)
    for (std::uint32_t j = 0; j < strand_count; ++j)
      if (static_cast<std::uint32_t>(std::popcount(i ^ j)) <= radius)
        rows[i] |= 1ULL << j;
  return BinaryMatrix(strand_count, std::move(rows));
}

BigInt permutation_ball_size(std::uint32_t radius, std::uint32_t strand_count) {
  return permanent(proximity_matrix(radius, strand_count));
}

BoundReport sphere_packing_bound(std::uint32_t strand_count,
                                 std::uint32_t min_distance) {
  std::uint32_t l = log2_exact(strand_count);
  if (min_distance < 1) fail(ErrorCode::OutOfRange, "need d >= 1");
  if (strand_count > 1u << 16)
    fail(ErrorCode::BudgetExceeded, "bound evaluation capped at M = 2^16");

  BigInt r_big = 0;
  for (std::uint32_t i = 0; i <= (min_distance - 1) / 2; ++i)
    r_big += binomial(l, i);
  std::uint64_t r = r_big.convert_to<std::uint64_t>();  // <= 2^l = M

  BoundReport report;
  report.name = "sphere-packing";
  report.inputs = "l=" + std::to_string(l) + " M=" + std::to_string(strand_count) +
                  " d=" + std::to_string(min_distance) +
                  " r=" + std::to_string(r);
  if (strand_count % r == 0) {
    BigInt value =
        factorial(strand_count) / ipow(factorial(r), strand_count / r);
    report.exact = true;
    report.floor_value = value;
    report.log2_value = log2_double(value);
    report.real_value = to_double_if_finite(static_cast<BigFloat>(value));
  } else {
    BigFloat lg = log2_factorial(strand_count) -
                  BigFloat(strand_count) / r * log2_factorial(r);
    report.exact = false;
    report.floor_value = floor_pow2(lg);
    report.log2_value = lg.convert_to<double>();
    report.real_value =
        to_double_if_finite(boost::multiprecision::pow(BigFloat(2), lg));
  }
  return report;
}

BoundReport singleton_bound(std::uint32_t strand_count,
                            std::uint32_t min_distance) {
  std::uint32_t l = log2_exact(strand_count);
  if (min_distance < 1 || min_distance > l + 1)
    fail(ErrorCode::OutOfRange,
         "need 1 <= d <= log2(M) + 1 = " + std::to_string(l + 1));
  if (strand_count > 1u << 16)
    fail(ErrorCode::BudgetExceeded, "bound evaluation capped at M = 2^16");

  std::uint64_t s = 1ULL << (min_distance - 1);
  std::uint64_t e = 1ULL << (l - min_distance + 1);

  BoundReport report;
  report.name = "singleton";
  report.inputs = "l=" + std::to_string(l) + " M=" + std::to_string(strand_count) +
                  " d=" + std::to_string(min_distance);
  BigInt value = factorial(strand_count) / ipow(factorial(s), e);
  report.exact = true;
  report.floor_value = value;
  report.log2_value = log2_double(value);
  report.real_value = to_double_if_finite(static_cast<BigFloat>(value));
  return report;
}

ConstructionSize coset_construction_size(std::uint32_t strand_count,
                                         std::uint32_t min_distance) {
  if (min_distance == 2) {
    std::uint32_t l = log2_exact(strand_count);
    if (strand_count < 4) fail(ErrorCode::OutOfRange, "need M >= 4 for d = 2");
    if (strand_count > 1024)
      fail(ErrorCode::BudgetExceeded, "construction size capped at M = 1024");
    std::uint64_t a = strand_count / 2;  // parity inner code size
    BigInt base = ipow(factorial(a), 2);
    // Augmentation words: odd weight >= 3, i.e. M/2 - log2(M) of them.
    BigInt survivors = BigInt(a) - l;
    BigInt total = base + survivors * base / (BigInt(a) * a);
    BoundReport report;
    report.name = "coset-construction";
    report.inputs = "M=" + std::to_string(strand_count) + " d=2";
    report.exact = true;
    report.floor_value = total;
    report.log2_value = log2_double(total);
    report.real_value = to_double_if_finite(static_cast<BigFloat>(total));
    return {report, std::nullopt};
  }
  if (min_distance == 3) {
    std::uint32_t l = log2_exact(strand_count);
    if (!std::has_single_bit(l + 1))
      fail(ErrorCode::OutOfRange,
           "d = 3 needs log2(M) = 2^m - 1; got log2(M) = " + std::to_string(l));
    std::uint32_t m = static_cast<std::uint32_t>(std::countr_zero(l + 1));
    if (m < 2 || m > 4)
      fail(ErrorCode::OutOfRange, "d = 3 size supported for m in [2, 4]");
    std::uint64_t a = 1ULL << (l - m);       // Hamming inner code size
    std::uint64_t cosets = 1ULL << m;
    BigInt base = ipow(factorial(a), cosets);

    BoundReport primary;
    primary.name = "coset-construction-base";
    primary.inputs = "M=" + std::to_string(strand_count) + " d=3 m=" +
                     std::to_string(m);
    primary.exact = true;
    primary.floor_value = base;
    primary.log2_value = log2_double(base);
    primary.real_value = to_double_if_finite(static_cast<BigFloat>(base));

    // Count with the augmentation words included; kept separate because it
    // disagrees with the validated construction at small m.
    BigInt survivors = pow2((1ULL << m) - 1 - m) - ((1ULL << m) - 4) / 2;
    BigInt augmented_total =
        base + (BigInt(cosets) - 1) * survivors * base / (BigInt(a) * a);
    BoundReport augmented;
    augmented.name = "coset-construction-augmented";
    augmented.inputs = primary.inputs;
    augmented.exact = true;
    augmented.floor_value = augmented_total;
    augmented.log2_value = log2_double(augmented_total);
    augmented.real_value = to_double_if_finite(static_cast<BigFloat>(augmented_total));
    return {primary, augmented};
  }
  fail(ErrorCode::UnsupportedD,
       "closed-form construction sizes exist for d in {2, 3}, got " +
           std::to_string(min_distance));
}

RedundancyReport distinct_data_redundancy(const SystemParams& params) {
  params.validate();
  const std::uint32_t dl = params.data_length();
  if (pow2(dl) < params.strand_count)
    fail(ErrorCode::EmptySpace,
         "no distinct-data messages: 2^(L-l) < M");

  BigFloat exact = 0;
  for (std::uint32_t i = 0; i < params.strand_count; ++i)
    exact += BigFloat(dl) - log2_bigfloat(pow2(dl) - i);

  RedundancyReport report{exact.convert_to<double>(), std::nullopt, false};
  BigInt m_sq = BigInt(params.strand_count) * params.strand_count;
  if (m_sq < pow2(dl + 1)) {
    BigFloat upper = BigFloat(dl + 1) - log2_bigfloat(pow2(dl + 1) - m_sq);
    report.upper = upper.convert_to<double>();
  }
  report.beta_ok = m_sq < pow2(dl);
  return report;
}

MaxCodeSizeReport max_code_size_shared_data(std::uint32_t index_length,
                                            std::uint32_t strand_count,
                                            const Rational& tau,
                                            std::uint32_t copies,
                                            std::uint32_t index_errors,
                                            std::uint64_t vertex_budget,
                                            std::uint64_t node_budget) {
  ChannelParams ch{tau, index_errors, 0, copies};
  ch.validate();
  MaxCodeSizeReport report;
  report.regime = ch.regime();

  if (report.regime == Regime::Low) {
    report.exact = true;
    report.value =
        binomial(pow2(index_length), strand_count) * factorial(strand_count);
    report.lower = report.upper = report.value;
    report.method = "whole distinct-index space (errors in the minority)";
    return report;
  }

  std::uint32_t d = report.regime == Regime::Tau1 ? 2 * index_errors + 1
                                                  : index_errors + 1;
  try {
    ExactSearchResult exact =
        search_exact_max_code(index_length, strand_count, d, vertex_budget,
                              node_budget);
    report.exact = true;
    report.value = exact.size;
    report.lower = report.upper = exact.size;
    report.method = "exact search at distance " + std::to_string(d);
    return report;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::BudgetExceeded) throw;
  }

  // Bracket: best greedy code over a few fixed seeds, against the tightest
  // applicable upper bound.
  std::size_t best = 0;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    IndexCode greedy = search_greedy(index_length, strand_count, d, seed);
    best = std::max(best, greedy.rows.size());
  }
  report.lower = best;
  report.upper = falling_factorial(pow2(index_length), strand_count);
  if ((1ULL << index_length) == strand_count) {
    report.upper = std::min(report.upper,
                            sphere_packing_bound(strand_count, d).floor_value);
    if (d <= index_length + 1)
      report.upper =
          std::min(report.upper, singleton_bound(strand_count, d).floor_value);
  }
  report.method = "bracketed: greedy lower bound at distance " +
                  std::to_string(d) + ", packing upper bounds";
  return report;
}

}  // namespace dnacc
