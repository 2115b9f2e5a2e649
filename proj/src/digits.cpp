#include "dsq/digits.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dsq {

std::uint64_t digit_sum(std::uint64_t n) {
    std::uint64_t s = 0;
    for (; n; n /= 10) s += n % 10;
    return s;
}

std::uint64_t digit_sum(const bigint& n) {
    if (n < 0) throw std::invalid_argument("digit_sum: negative input");
    std::uint64_t s = 0;
    for (char c : n.str()) s += static_cast<std::uint64_t>(c - '0');
    return s;
}

std::uint64_t digit_root(std::uint64_t n) {
    if (n == 0) return 0;
    return 1 + (n - 1) % 9;
}

std::uint64_t digit_root(const bigint& n) {
    if (n < 0) throw std::invalid_argument("digit_root: negative input");
    if (n == 0) return 0;
    return 1 + static_cast<std::uint64_t>((n - 1) % 9);
}

std::uint64_t carry_count(std::uint64_t m, std::uint64_t n) {
    std::uint64_t carries = 0, carry = 0;
    while (m || n || carry) {
        carry = (m % 10 + n % 10 + carry) >= 10 ? 1 : 0;
        carries += carry;
        m /= 10;
        n /= 10;
    }
    return carries;
}

std::uint64_t carry_count(const bigint& m, const bigint& n) {
    if (m < 0 || n < 0) throw std::invalid_argument("carry_count: negative input");
    std::string a = m.str(), b = n.str();  // most significant digit first
    std::uint64_t carries = 0;
    unsigned carry = 0;
    std::size_t len = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < len || carry; ++i) {
        unsigned da = i < a.size() ? static_cast<unsigned>(a[a.size() - 1 - i] - '0') : 0;
        unsigned db = i < b.size() ? static_cast<unsigned>(b[b.size() - 1 - i] - '0') : 0;
        carry = (da + db + carry) >= 10 ? 1 : 0;
        carries += carry;
        if (i >= len) break;  // carry exhausted past both operands
    }
    return carries;
}

CarryDecomposition carry_decompose(std::uint64_t m, std::uint64_t n) {
    return {digit_sum(m), digit_sum(n), digit_sum(m + n), carry_count(m, n)};
}

CarryDecomposition carry_decompose(const bigint& m, const bigint& n) {
    return {digit_sum(m), digit_sum(n), digit_sum(bigint(m + n)), carry_count(m, n)};
}

bool dgs_addition_is_carry_free(std::uint64_t m, std::uint64_t n) {
    return carry_count(m, n) == 0;
}

bool dgs_addition_is_carry_free(const bigint& m, const bigint& n) {
    return carry_count(m, n) == 0;
}

}  // namespace dsq
