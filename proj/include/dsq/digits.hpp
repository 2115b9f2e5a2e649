#pragma once
#include <cstdint>
#include <boost/multiprecision/cpp_int.hpp>

namespace dsq {

using bigint = boost::multiprecision::cpp_int;

// Decomposition of a decimal addition m + n:
//   digit_sum(m) + digit_sum(n) = digit_sum(m+n) + 9 * carries
// where `carries` counts the positions whose ripple addition overflows.
struct CarryDecomposition {
    std::uint64_t digit_sum_lhs = 0;
    std::uint64_t digit_sum_rhs = 0;
    std::uint64_t digit_sum_total = 0;
    std::uint64_t carries = 0;
};

std::uint64_t digit_sum(std::uint64_t n);
std::uint64_t digit_sum(const bigint& n);  // n >= 0

// 1 + (n-1) mod 9 for n >= 1; digit_root(0) is defined as 0.
std::uint64_t digit_root(std::uint64_t n);
std::uint64_t digit_root(const bigint& n);

std::uint64_t carry_count(std::uint64_t m, std::uint64_t n);
std::uint64_t carry_count(const bigint& m, const bigint& n);

CarryDecomposition carry_decompose(std::uint64_t m, std::uint64_t n);
CarryDecomposition carry_decompose(const bigint& m, const bigint& n);

// digit_sum(m) + digit_sum(n) == digit_sum(m+n), i.e. carry_count(m,n) == 0
bool dgs_addition_is_carry_free(std::uint64_t m, std::uint64_t n);
bool dgs_addition_is_carry_free(const bigint& m, const bigint& n);

}  // namespace dsq
