#include "dsq/primes.hpp"

#include <stdexcept>
#include <string>

namespace dsq {

std::uint64_t PrimeTable::nth(std::size_t j) const {
    if (j < 1 || j > primes.size())
        throw std::out_of_range("nth_prime: index " + std::to_string(j) + " outside 1.." +
                                std::to_string(primes.size()));
    return primes[j - 1];
}

PrimeTable sieve_primes(std::uint64_t limit) {
    if (limit < 2) throw std::invalid_argument("sieve_primes: limit must be >= 2");
    if (limit > 2'000'000'000ULL)
        throw std::invalid_argument("sieve_primes: limit too large for an in-memory sieve");
    std::vector<bool> composite(limit + 1, false);
    PrimeTable table;
    table.limit = limit;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        table.primes.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return table;
}

std::uint64_t nth_prime(const PrimeTable& table, std::size_t j) { return table.nth(j); }

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Deterministic witness set for the whole 64-bit range.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::optional<std::uint64_t> is_prime_4s_plus_1(std::uint64_t n) {
    if (n % 4 != 1 || !is_prime(n)) return std::nullopt;
    return (n - 1) / 4;
}

}  // namespace dsq
