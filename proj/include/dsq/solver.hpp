#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "dsq/primes.hpp"

namespace dsq {

// A verified solution of the constraint system
//   x1 + x2 + x3 + x4               = a^2        (x_i prime, repeats allowed)
//   dgs(x1) + dgs(x2) + dgs(x3) + dgs(x4) = b^2
//   dgs(a^2) + dgs(b^2)             = dgs(a^2 + b^2)
//   a^2 + b^2                       = p = 4s + 1, p prime
struct SolutionRecord {
    std::uint64_t x1 = 0, x2 = 0, x3 = 0, x4 = 0;  // ascending
    std::uint64_t a = 0, b = 0, s = 0, p = 0;

    friend auto operator<=>(const SolutionRecord&, const SolutionRecord&) = default;
};

enum class CheckFailure {
    None,
    NotPrime,          // input rejected before the constraints are consulted
    SumNotSquare,      // x1+x2+x3+x4 is not a^2
    DigitSumNotSquare, // sum of digit sums is not b^2
    DigitSumCarry,     // dgs(a^2)+dgs(b^2) != dgs(a^2+b^2)
    PNotPrime4s1,      // a^2+b^2 not a prime of the form 4s+1
};

const char* check_failure_name(CheckFailure f);

struct CheckResult {
    std::optional<SolutionRecord> record;
    CheckFailure failure = CheckFailure::None;
};

// Inputs in any order; the record is canonically ascending.
CheckResult check_system(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3, std::uint64_t x4);

struct SearchConfig {
    std::size_t min_index = 1;   // 1-based, inclusive
    std::size_t max_index = 1;
    bool dedup_per_ab = false;   // keep only the lexicographically least quadruple per (a,b)
    bool allow_repeats = true;   // a prime may be used more than once
};

// All solutions with every x_i drawn from table indices [min_index, max_index],
// sorted by (a, b, x1, x2, x3, x4).  Pairs are bucketed by (sum, digit sum) and
// joined against each square target, avoiding the quartic scan.
std::vector<SolutionRecord> search(const PrimeTable& table, const SearchConfig& config);

struct BConstraintReport {
    bool ok = true;
    std::vector<SolutionRecord> violations;  // records with b <= 4 or 3 | b
};

BConstraintReport assert_b_constraints(const std::vector<SolutionRecord>& records);

}  // namespace dsq
