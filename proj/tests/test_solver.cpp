#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "dsq/digits.hpp"
#include "dsq/primes.hpp"
#include "dsq/solver.hpp"

using namespace dsq;

namespace {

SolutionRecord rec(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3, std::uint64_t x4,
                   std::uint64_t a, std::uint64_t b) {
    std::uint64_t p = a * a + b * b;
    return {x1, x2, x3, x4, a, b, (p - 1) / 4, p};
}

// search() orders its output by (a, b, x1, x2, x3, x4)
bool by_ab(const SolutionRecord& l, const SolutionRecord& r) {
    return std::tuple(l.a, l.b, l.x1, l.x2, l.x3, l.x4) <
           std::tuple(r.a, r.b, r.x1, r.x2, r.x3, r.x4);
}

const std::vector<SolutionRecord> kGolden = {
    rec(2, 29, 997, 1997, 55, 8),        rec(3, 3, 11, 3347, 58, 5),
    rec(3, 3, 101, 4517, 68, 5),         rec(3, 3, 107, 911, 32, 5),
    rec(3, 3, 4217, 7877, 110, 7),       rec(3, 19, 179, 199, 20, 7),
    rec(11, 11, 5521, 7001, 112, 5),     rec(8101, 10301, 10301, 12101, 202, 5),
    rec(11003, 17033, 17123, 17341, 250, 7),
    rec(17393, 19889, 19979, 26839, 290, 11),
    rec(24799, 26879, 27299, 27299, 326, 11),
};

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("the eleven reference rows verify exactly") {
    for (const auto& g : kGolden) {
        CheckResult res = check_system(g.x1, g.x2, g.x3, g.x4);
        REQUIRE(res.record.has_value());
        CHECK(res.failure == CheckFailure::None);
        CHECK(*res.record == g);
    }
    // two sanity anchors
    CHECK(kGolden[5].p == 449);
    CHECK(kGolden[5].s == 112);
    CHECK(kGolden[0].p == 3089);
    CHECK(kGolden[0].s == 772);
}

TEST_CASE("input order does not matter") {
    CheckResult res = check_system(199, 3, 179, 19);
    REQUIRE(res.record.has_value());
    CHECK(*res.record == rec(3, 19, 179, 199, 20, 7));
}

TEST_CASE("each rejection reason is distinguishable") {
    CHECK(check_system(4, 6, 8, 9).failure == CheckFailure::NotPrime);
    CHECK(check_system(2, 3, 5, 7).failure == CheckFailure::SumNotSquare);
    CHECK(check_system(2, 2, 3, 29).failure == CheckFailure::DigitSumNotSquare);
    CHECK(check_system(2, 2, 2, 3).failure == CheckFailure::DigitSumCarry);
    CHECK(check_system(2, 13, 199, 227).failure == CheckFailure::PNotPrime4s1);
    CHECK(std::string(check_failure_name(CheckFailure::None)) == "none");
    CHECK(std::string(check_failure_name(CheckFailure::NotPrime)) == "not-prime");
    CHECK(std::string(check_failure_name(CheckFailure::SumNotSquare)) == "sum-not-square");
    CHECK(std::string(check_failure_name(CheckFailure::DigitSumNotSquare)) ==
          "digit-sum-not-square");
    CHECK(std::string(check_failure_name(CheckFailure::DigitSumCarry)) == "digit-sum-carry");
    CHECK(std::string(check_failure_name(CheckFailure::PNotPrime4s1)) == "p-not-prime-4s+1");
}

TEST_CASE("failed checks carry no record") {
    CHECK(!check_system(4, 6, 8, 9).record.has_value());
    CHECK(!check_system(2, 3, 5, 7).record.has_value());
    CHECK(!check_system(2, 13, 199, 227).record.has_value());
}

TEST_CASE("toy range search") {
    PrimeTable t = sieve_primes(300);
    REQUIRE(t.size() >= 60);
    SearchConfig cfg;
    cfg.min_index = 1;
    cfg.max_index = 60;
    auto recs = search(t, cfg);
    CHECK(recs.size() == 283);
    for (const auto& r : recs) {
        CHECK(r.a == 20);
        CHECK(r.b == 7);
        CHECK(r.p == 449);
        CHECK(r.s == 112);
        // re-verify independently
        CheckResult res = check_system(r.x1, r.x2, r.x3, r.x4);
        REQUIRE(res.record.has_value());
        CHECK(*res.record == r);
        // parity consequence of the sum being a square
        bool has2 = r.x1 == 2;
        CHECK((has2 ? r.a % 2 == 1 : r.a % 2 == 0));
    }
    CHECK(std::is_sorted(recs.begin(), recs.end(), by_ab));
    CHECK(recs.front() == rec(3, 19, 179, 199, 20, 7));
}

TEST_CASE("first thousand primes: reference pairs, counts and representatives") {
    PrimeTable t = sieve_primes(8000);
    REQUIRE(t.size() >= 1000);
    SearchConfig cfg;
    cfg.min_index = 1;
    cfg.max_index = 1000;
    auto recs = search(t, cfg);
    CHECK(recs.size() == 533'991);
    CHECK(std::is_sorted(recs.begin(), recs.end(), by_ab));

    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
    for (const auto& r : recs) ++counts[{r.a, r.b}];
    REQUIRE(counts.size() == 8);
    CHECK(counts.at({20, 7}) == 286);
    CHECK(counts.at({32, 5}) == 265);
    CHECK(counts.at({55, 8}) == 227);
    CHECK(counts.at({58, 5}) == 1663);
    CHECK(counts.at({68, 5}) == 1324);
    CHECK(counts.at({110, 7}) == 528'948);
    CHECK(counts.at({112, 5}) == 472);
    CHECK(counts.at({145, 8}) == 806);

    cfg.dedup_per_ab = true;
    auto reps = search(t, cfg);
    REQUIRE(reps.size() == 8);
    CHECK(reps[0] == rec(3, 19, 179, 199, 20, 7));
    CHECK(reps[1] == rec(2, 2, 101, 919, 32, 5));
    CHECK(reps[2] == rec(2, 29, 997, 1997, 55, 8));
    CHECK(reps[3] == rec(2, 2, 13, 3347, 58, 5));
    CHECK(reps[4] == rec(2, 2, 17, 4603, 68, 5));
    CHECK(reps[5] == rec(2, 2, 4177, 7919, 110, 7));
    CHECK(reps[6] == rec(11, 11, 5521, 7001, 112, 5));
    CHECK(reps[7] == rec(2, 5209, 7907, 7907, 145, 8));

    // reference representatives appear in the full result
    auto has = [&](const SolutionRecord& g) {
        return std::binary_search(recs.begin(), recs.end(), g, by_ab);
    };
    for (int i = 0; i < 7; ++i) CHECK(has(kGolden[i]));
}

TEST_CASE("second and third thousand windows") {
    PrimeTable t = sieve_primes(30'000);
    REQUIRE(t.size() >= 3000);

    SearchConfig cfg;
    cfg.min_index = 1001;
    cfg.max_index = 2000;
    auto recs2 = search(t, cfg);
    CHECK(recs2.size() == 951);
    CHECK(std::is_sorted(recs2.begin(), recs2.end(), by_ab));
    std::set<std::pair<std::uint64_t, std::uint64_t>> ab2;
    for (const auto& r : recs2) ab2.insert({r.a, r.b});
    CHECK(ab2 == std::set<std::pair<std::uint64_t, std::uint64_t>>{{202, 5}, {250, 7}});
    CHECK(std::binary_search(recs2.begin(), recs2.end(), kGolden[7], by_ab));
    CHECK(std::binary_search(recs2.begin(), recs2.end(), kGolden[8], by_ab));

    cfg.min_index = 2001;
    cfg.max_index = 3000;
    auto recs3 = search(t, cfg);
    CHECK(recs3.size() == 1934);
    CHECK(std::is_sorted(recs3.begin(), recs3.end(), by_ab));
    std::set<std::pair<std::uint64_t, std::uint64_t>> ab3;
    for (const auto& r : recs3) ab3.insert({r.a, r.b});
    CHECK(ab3 == std::set<std::pair<std::uint64_t, std::uint64_t>>{{290, 11}, {326, 11}});
    CHECK(std::binary_search(recs3.begin(), recs3.end(), kGolden[9], by_ab));
    CHECK(std::binary_search(recs3.begin(), recs3.end(), kGolden[10], by_ab));

    // forbidding repeated primes drops the records that reuse one
    cfg.allow_repeats = false;
    auto strict = search(t, cfg);
    CHECK(strict.size() < recs3.size());
    for (const auto& r : strict) {
        CHECK(r.x1 < r.x2);
        CHECK(r.x2 < r.x3);
        CHECK(r.x3 < r.x4);
    }
    CHECK(!std::binary_search(strict.begin(), strict.end(), kGolden[10], by_ab));
    CHECK(std::binary_search(strict.begin(), strict.end(), kGolden[9], by_ab));
}

TEST_CASE("index validation") {
    PrimeTable t = sieve_primes(300);
    SearchConfig cfg;
    cfg.min_index = 5;
    cfg.max_index = 4;
    CHECK(search(t, cfg).empty());
    cfg.min_index = 0;
    cfg.max_index = 4;
    CHECK_THROWS_AS(search(t, cfg), std::out_of_range);
    cfg.min_index = 1;
    cfg.max_index = t.size() + 1;
    CHECK_THROWS_AS(search(t, cfg), std::out_of_range);
}

TEST_CASE("b constraint report") {
    CHECK(assert_b_constraints({}).ok);
    CHECK(assert_b_constraints(kGolden).ok);
    SolutionRecord bad = rec(2, 13, 199, 227, 21, 6);  // 3 | 6
    BConstraintReport rep = assert_b_constraints({kGolden[0], bad});
    CHECK(!rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0] == bad);
    SolutionRecord b4 = rec(3, 19, 179, 199, 20, 4);
    CHECK(!assert_b_constraints({b4}).ok);
    SolutionRecord b5 = rec(3, 19, 179, 199, 20, 5);
    CHECK(assert_b_constraints({b5}).ok);
}

}  // TEST_SUITE
