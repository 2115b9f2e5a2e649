#pragma once
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dsq {

// Ascending primes with 1-based indexing: nth(1) == 2.
struct PrimeTable {
    std::vector<std::uint64_t> primes;
    std::uint64_t limit = 0;

    std::size_t size() const { return primes.size(); }
    std::uint64_t nth(std::size_t j) const;  // throws std::out_of_range
};

PrimeTable sieve_primes(std::uint64_t limit = 1'000'000);  // throws std::invalid_argument if limit < 2
std::uint64_t nth_prime(const PrimeTable& table, std::size_t j);

// Deterministic for the full 64-bit range (fixed Miller-Rabin witness set).
bool is_prime(std::uint64_t n);

// n = 4s+1 and n prime -> s; empty otherwise.
std::optional<std::uint64_t> is_prime_4s_plus_1(std::uint64_t n);

}  // namespace dsq
