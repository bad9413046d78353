#include "dnacc/bigint.hpp"

#include "dnacc/errors.hpp"

namespace dnacc {

BigInt factorial(std::uint64_t n) {
  BigInt r = 1;
  for (std::uint64_t i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(const BigInt& n, std::uint64_t k) {
  if (n < 0) fail(ErrorCode::OutOfRange, "binomial needs n >= 0");
  if (BigInt(k) > n) return 0;
  BigInt r = 1;
  // n choose k = prod (n-k+i)/i with exact division at every step
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - BigInt(k) + i;
    r /= i;
  }
  return r;
}

BigInt falling_factorial(const BigInt& n, std::uint64_t k) {
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    BigInt term = n - i;
    if (term <= 0) return 0;
    r *= term;
  }
  return r;
}

BigInt pow2(std::uint64_t e) { return BigInt(1) << e; }

BigInt ipow(const BigInt& base, std::uint64_t e) {
  BigInt r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

BigFloat log2_bigfloat(const BigInt& v) {
  if (v <= 0) fail(ErrorCode::OutOfRange, "log2 of a nonpositive value");
  return boost::multiprecision::log2(static_cast<BigFloat>(v));
}

double log2_double(const BigInt& v) {
  return static_cast<double>(log2_bigfloat(v));
}

}  // namespace dnacc
