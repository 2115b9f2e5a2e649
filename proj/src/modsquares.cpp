#include "dsq/modsquares.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace dsq {

namespace {
constexpr std::uint64_t kMaxTableModulus = 10'000'000;  // O(m) table enumeration guard
}

bool ResidueSet::contains(std::uint64_t r) const {
    return std::binary_search(residues.begin(), residues.end(), r % modulus);
}

std::uint64_t ResidueCycle::at(std::uint64_t n) const {
    if (n < preperiod.size()) return preperiod[n];
    return cycle[(n - preperiod.size()) % cycle.size()];
}

ResidueSet square_residues(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("square_residues: modulus must be >= 2");
    if (m > kMaxTableModulus) throw std::invalid_argument("square_residues: modulus too large");
    std::vector<bool> seen(m, false);
    // x and m-x square to the same residue; half range suffices.
    for (std::uint64_t x = 0; x <= m / 2; ++x) seen[x * x % m] = true;
    ResidueSet out;
    out.modulus = m;
    for (std::uint64_t r = 0; r < m; ++r)
        if (seen[r]) out.residues.push_back(r);
    return out;
}

ResidueCycle pow10_cycle(std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("pow10_cycle: modulus must be >= 2");
    if (m > kMaxTableModulus) throw std::invalid_argument("pow10_cycle: modulus too large");
    std::vector<std::uint64_t> seq;
    std::vector<std::uint32_t> first(m, UINT32_MAX);  // first index where each residue appeared
    std::uint64_t v = 1 % m;
    while (first[v] == UINT32_MAX) {
        first[v] = static_cast<std::uint32_t>(seq.size());
        seq.push_back(v);
        v = v * 10 % m;
    }
    std::size_t start = first[v];  // earliest repeat -> minimal preperiod and period
    ResidueCycle out;
    out.modulus = m;
    out.preperiod.assign(seq.begin(), seq.begin() + start);
    out.cycle.assign(seq.begin() + start, seq.end());
    return out;
}

bigint integer_sqrt(const bigint& n) {
    if (n < 0) throw std::invalid_argument("integer_sqrt: negative input");
    return boost::multiprecision::sqrt(n);
}

namespace {

// Square residues mod 4095 = 9*5*7*13, packed as a lookup table.
const std::vector<bool>& qr4095() {
    static const std::vector<bool> table = [] {
        std::vector<bool> t(4095, false);
        for (std::uint64_t x = 0; x < 4095; ++x) t[x * x % 4095] = true;
        return t;
    }();
    return table;
}

}  // namespace

std::optional<bigint> is_perfect_square(const bigint& n) {
    if (n < 0) return std::nullopt;
    // Cheap residue prefilters; both are necessary conditions only.
    unsigned m16 = static_cast<unsigned>(n & 15);
    if (m16 != 0 && m16 != 1 && m16 != 4 && m16 != 9) return std::nullopt;
    if (!qr4095()[static_cast<std::uint64_t>(n % 4095)]) return std::nullopt;
    bigint r = boost::multiprecision::sqrt(n);
    if (r * r == n) return r;
    return std::nullopt;
}

}  // namespace dsq
