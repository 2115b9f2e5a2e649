#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "dsq/digits.hpp"

namespace dsq {

// Exact set { x^2 mod modulus : x in [0, modulus) }, sorted.
struct ResidueSet {
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> residues;

    bool contains(std::uint64_t r) const;
};

// Eventually-periodic powers of ten:
//   10^n mod modulus = preperiod[n]                       for n < preperiod.size()
//                    = cycle[(n - preperiod.size()) % L]  otherwise
// with the preperiod minimal and the cycle the minimal period.
struct ResidueCycle {
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> preperiod;
    std::vector<std::uint64_t> cycle;

    std::uint64_t at(std::uint64_t n) const;
};

ResidueSet square_residues(std::uint64_t m);  // m >= 2
ResidueCycle pow10_cycle(std::uint64_t m);    // m >= 2

bigint integer_sqrt(const bigint& n);  // floor(sqrt(n)), n >= 0

// Exact: engaged with the root iff n is a perfect square.
std::optional<bigint> is_perfect_square(const bigint& n);

}  // namespace dsq
