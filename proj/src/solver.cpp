#include "dsq/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "dsq/digits.hpp"

namespace dsq {

namespace {

std::uint64_t isqrt64(std::uint64_t n) {
    std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

std::optional<std::uint64_t> exact_sqrt(std::uint64_t n) {
    std::uint64_t r = isqrt64(n);
    if (r * r == n) return r;
    return std::nullopt;
}

}  // namespace

const char* check_failure_name(CheckFailure f) {
    switch (f) {
        case CheckFailure::None: return "none";
        case CheckFailure::NotPrime: return "not-prime";
        case CheckFailure::SumNotSquare: return "sum-not-square";
        case CheckFailure::DigitSumNotSquare: return "digit-sum-not-square";
        case CheckFailure::DigitSumCarry: return "digit-sum-carry";
        case CheckFailure::PNotPrime4s1: return "p-not-prime-4s+1";
    }
    return "unknown";
}

CheckResult check_system(std::uint64_t x1, std::uint64_t x2, std::uint64_t x3, std::uint64_t x4) {
    std::array<std::uint64_t, 4> x{x1, x2, x3, x4};
    std::sort(x.begin(), x.end());
    for (std::uint64_t v : x)
        if (!is_prime(v)) return {std::nullopt, CheckFailure::NotPrime};

    std::uint64_t sum = x[0] + x[1] + x[2] + x[3];
    auto a = exact_sqrt(sum);
    if (!a) return {std::nullopt, CheckFailure::SumNotSquare};

    std::uint64_t ds = digit_sum(x[0]) + digit_sum(x[1]) + digit_sum(x[2]) + digit_sum(x[3]);
    auto b = exact_sqrt(ds);
    if (!b) return {std::nullopt, CheckFailure::DigitSumNotSquare};

    if (!dgs_addition_is_carry_free(sum, ds)) return {std::nullopt, CheckFailure::DigitSumCarry};

    auto s = is_prime_4s_plus_1(sum + ds);
    if (!s) return {std::nullopt, CheckFailure::PNotPrime4s1};

    SolutionRecord rec{x[0], x[1], x[2], x[3], *a, *b, *s, sum + ds};
    return {rec, CheckFailure::None};
}

namespace {

struct Pair {
    std::uint32_t sum;
    std::uint32_t ds;
    std::uint32_t lo;
    std::uint32_t hi;
};

}  // namespace

std::vector<SolutionRecord> search(const PrimeTable& table, const SearchConfig& config) {
    std::vector<SolutionRecord> out;
    if (config.min_index > config.max_index) return out;
    if (config.min_index < 1 || config.max_index > table.size())
        throw std::out_of_range("search: index range outside the prime table");

    const std::size_t lo = config.min_index - 1, hi = config.max_index;  // half-open over 0-based
    const std::size_t n = hi - lo;
    if (n * (n + 1) / 2 > 20'000'000)
        throw std::invalid_argument("search: index range too wide for the pair join");
    if (table.primes[hi - 1] > 500'000'000)
        throw std::invalid_argument("search: primes too large for the pair join");
    std::vector<std::uint32_t> pv(n), pd(n);
    for (std::size_t i = 0; i < n; ++i) {
        pv[i] = static_cast<std::uint32_t>(table.primes[lo + i]);
        pd[i] = static_cast<std::uint32_t>(digit_sum(table.primes[lo + i]));
    }

    // all unordered pairs, bucketed by (sum, digit sum)
    std::vector<Pair> pairs;
    pairs.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j0 = config.allow_repeats ? i : i + 1;
        for (std::size_t j = j0; j < n; ++j)
            pairs.push_back({pv[i] + pv[j], pd[i] + pd[j], pv[i], pv[j]});
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
        if (x.sum != y.sum) return x.sum < y.sum;
        if (x.ds != y.ds) return x.ds < y.ds;
        if (x.lo != y.lo) return x.lo < y.lo;
        return x.hi < y.hi;
    });

    // bucket spans: contiguous runs with equal (sum, ds)
    struct Bucket {
        std::uint32_t sum, ds;
        std::size_t begin, end;
    };
    std::vector<Bucket> buckets;
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j].sum == pairs[i].sum && pairs[j].ds == pairs[i].ds) ++j;
        buckets.push_back({pairs[i].sum, pairs[i].ds, i, j});
        i = j;
    }
    auto find_bucket = [&](std::uint32_t sum, std::uint32_t ds) -> const Bucket* {
        auto it = std::lower_bound(buckets.begin(), buckets.end(), std::make_pair(sum, ds),
                                   [](const Bucket& bk, const std::pair<std::uint32_t, std::uint32_t>& k) {
                                       if (bk.sum != k.first) return bk.sum < k.first;
                                       return bk.ds < k.second;
                                   });
        if (it == buckets.end() || it->sum != sum || it->ds != ds) return nullptr;
        return &*it;
    };

    // candidate (a, b) targets satisfying the carry-free and 4s+1 constraints
    const std::uint64_t min_sum = 4ULL * pv.front();
    const std::uint64_t max_sum = 4ULL * pv.back();
    std::uint64_t max_ds = 0, min_ds = UINT64_MAX;
    for (std::size_t i = 0; i < n; ++i) {
        max_ds = std::max<std::uint64_t>(max_ds, pd[i]);
        min_ds = std::min<std::uint64_t>(min_ds, pd[i]);
    }
    for (std::uint64_t a = std::max<std::uint64_t>(isqrt64(min_sum), 2); a * a <= max_sum; ++a) {
        const std::uint64_t S = a * a;
        if (S < min_sum) continue;
        for (std::uint64_t b = 1; b * b <= 4 * max_ds; ++b) {
            const std::uint64_t B = b * b;
            if (B < 4 * min_ds) continue;
            if (!dgs_addition_is_carry_free(S, B)) continue;
            auto s = is_prime_4s_plus_1(S + B);
            if (!s) continue;

            // join: left pair (x1,x2), right pair (x3,x4) with x2 <= x3;
            // x1+x2 <= x3+x4 forces the left sum under S/2
            for (const Bucket& bk : buckets) {
                if (bk.sum * 2 > S) break;
                if (bk.sum >= S || bk.ds >= B) continue;
                const std::uint32_t rsum = static_cast<std::uint32_t>(S - bk.sum);
                const std::uint32_t rds = static_cast<std::uint32_t>(B - bk.ds);
                if (rds == 0) continue;
                const Bucket* rb = find_bucket(rsum, rds);
                if (!rb) continue;
                for (std::size_t li = bk.begin; li < bk.end; ++li) {
                    const Pair& L = pairs[li];
                    // right pairs sorted by lo: skip those with x3 below x2
                    std::size_t ri = rb->begin;
                    {
                        std::size_t a0 = rb->begin, b0 = rb->end;
                        std::uint32_t need = config.allow_repeats ? L.hi : L.hi + 1;
                        while (a0 < b0) {
                            std::size_t mid = (a0 + b0) / 2;
                            if (pairs[mid].lo < need)
                                a0 = mid + 1;
                            else
                                b0 = mid;
                        }
                        ri = a0;
                    }
                    for (; ri < rb->end; ++ri) {
                        const Pair& R = pairs[ri];
                        out.push_back({L.lo, L.hi, R.lo, R.hi, a, b, *s, S + B});
                    }
                }
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const SolutionRecord& u, const SolutionRecord& v) {
        return std::tie(u.a, u.b, u.x1, u.x2, u.x3, u.x4) <
               std::tie(v.a, v.b, v.x1, v.x2, v.x3, v.x4);
    });
    if (config.dedup_per_ab) {
        std::vector<SolutionRecord> dedup;
        for (const auto& r : out)
            if (dedup.empty() || dedup.back().a != r.a || dedup.back().b != r.b)
                dedup.push_back(r);
        out = std::move(dedup);
    }
    return out;
}

BConstraintReport assert_b_constraints(const std::vector<SolutionRecord>& records) {
    BConstraintReport rep;
    for (const auto& r : records)
        if (r.b <= 4 || r.b % 3 == 0) rep.violations.push_back(r);
    rep.ok = rep.violations.empty();
    return rep;
}

}  // namespace dsq
