#include <doctest.h>

#include <algorithm>

#include "dsq/primes.hpp"

using namespace dsq;

TEST_SUITE("primes") {

TEST_CASE("sieve endpoints and counts") {
    CHECK_THROWS_AS(sieve_primes(0), std::invalid_argument);
    CHECK_THROWS_AS(sieve_primes(1), std::invalid_argument);
    PrimeTable two = sieve_primes(2);
    REQUIRE(two.size() == 1);
    CHECK(two.primes[0] == 2);
    CHECK(two.limit == 2);
    CHECK(sieve_primes(30).size() == 10);
    CHECK(sieve_primes(100'000).size() == 9592);
}

TEST_CASE("indexed access is 1-based with range checks") {
    PrimeTable t = sieve_primes(30'000);
    CHECK(t.nth(1) == 2);
    CHECK(t.nth(2) == 3);
    CHECK(t.nth(60) == 281);
    CHECK(t.nth(1000) == 7919);
    CHECK(t.nth(1001) == 7927);
    CHECK(t.nth(2000) == 17389);
    CHECK(t.nth(2001) == 17393);
    CHECK(t.nth(3000) == 27449);
    CHECK_THROWS_AS(t.nth(0), std::out_of_range);
    CHECK_THROWS_AS(t.nth(t.size() + 1), std::out_of_range);
    CHECK(nth_prime(t, 60) == 281);
    CHECK(nth_prime(t, 3000) == 27449);
}

TEST_CASE("deterministic primality agrees with the sieve") {
    PrimeTable t = sieve_primes(10'000);
    for (std::uint64_t n = 0; n <= 10'000; ++n) {
        bool in_table = std::binary_search(t.primes.begin(), t.primes.end(), n);
        CHECK(is_prime(n) == in_table);
    }
}

TEST_CASE("primality at 64-bit scale") {
    CHECK(is_prime(2'305'843'009'213'693'951ULL));   // 2^61 - 1
    CHECK(is_prime(18'446'744'073'709'551'557ULL));  // largest 64-bit prime
    CHECK(!is_prime(3'215'031'751ULL));              // strong pseudoprime to bases 2,3,5,7
    CHECK(!is_prime(341));
    CHECK(!is_prime(561));
    CHECK(!is_prime(18'446'744'073'709'551'615ULL));
}

TEST_CASE("4s+1 decomposition") {
    auto s449 = is_prime_4s_plus_1(449);
    REQUIRE(s449.has_value());
    CHECK(*s449 == 112);
    auto s3089 = is_prime_4s_plus_1(3089);
    REQUIRE(s3089.has_value());
    CHECK(*s3089 == 772);
    auto s5 = is_prime_4s_plus_1(5);
    REQUIRE(s5.has_value());
    CHECK(*s5 == 1);
    CHECK(!is_prime_4s_plus_1(2).has_value());
    CHECK(!is_prime_4s_plus_1(7).has_value());    // 3 mod 4
    CHECK(!is_prime_4s_plus_1(9).has_value());    // not prime
    CHECK(!is_prime_4s_plus_1(0).has_value());
    CHECK(!is_prime_4s_plus_1(1).has_value());
}

}  // TEST_SUITE
