#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace dnacc {

using BigInt = boost::multiprecision::cpp_int;
// 113-bit mantissa; plenty for the log2-space bound arithmetic.
using BigFloat = boost::multiprecision::cpp_bin_float_quad;

BigInt factorial(std::uint64_t n);
BigInt binomial(const BigInt& n, std::uint64_t k);
// n * (n-1) * ... * (n-k+1)
BigInt falling_factorial(const BigInt& n, std::uint64_t k);
BigInt pow2(std::uint64_t e);
BigInt ipow(const BigInt& base, std::uint64_t e);

BigFloat log2_bigfloat(const BigInt& v);  // v > 0
double log2_double(const BigInt& v);

}  // namespace dnacc
