#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsq/digits.hpp"

namespace dsq {

struct FormParseError : std::runtime_error {
    std::size_t position;  // byte offset into the input text
    FormParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// One symbolic term c * 10^sym with 1 <= c <= 9.
struct FormTerm {
    int coefficient = 1;
    int symbol = 0;  // index into SpecialForm::symbols
};

// sum of c_i * 10^{e_i} plus a constant.  Terms with literal exponents are
// folded into `constant` at parse time, so `terms` holds symbolic exponents only.
struct SpecialForm {
    std::vector<FormTerm> terms;
    bigint constant = 0;
    std::vector<std::string> symbols;          // first-appearance order
    std::vector<std::pair<int, int>> ge;       // (i, j): symbols[i] >= symbols[j]
    std::vector<std::uint64_t> lower;          // per-symbol literal bounds (default 0)

    // Literal bounds propagated along the ge chain (m >= n >= k >= 1 gives all three 1).
    std::vector<std::uint64_t> effective_lower() const;
    // Symbol order where every ge target precedes its source; parse rejects cycles.
    std::vector<int> topo_order() const;
    std::string text() const;
};

// Grammar (ASCII, whitespace-insensitive):
//   form        := term ('+' term)* [';' constraint (',' constraint)*]
//   term        := [coeff]['*'] '10' '^' (symbol | integer)  |  integer
//   constraint  := symbol '>=' (symbol | integer)
// coeff is a single digit 1..9 and may be juxtaposed ("3*10^n" == "310^n").
SpecialForm parse_form(const std::string& text);

// Exact value; throws std::invalid_argument naming the violated constraint
// or any missing symbol.  Exponents are capped at 10^6 digits of output.
bigint evaluate_form(const SpecialForm& form,
                     const std::map<std::string, std::uint64_t>& assignment);

// One exponent restricted to an arithmetic progression; modulus == 0 means the
// single fixed value min_value, modulus == 1 means everything >= min_value.
struct SymbolClass {
    std::uint64_t modulus = 1;
    std::uint64_t residue = 0;
    std::uint64_t min_value = 0;

    bool contains(std::uint64_t v) const {
        if (modulus == 0) return v == min_value;
        return v >= min_value && v % modulus == residue % modulus;
    }
    friend auto operator<=>(const SymbolClass&, const SymbolClass&) = default;
};

// A product of per-symbol classes, aligned with SpecialForm::symbols.
struct ExponentClass {
    std::vector<SymbolClass> symbols;

    bool contains(const std::vector<std::uint64_t>& exponents) const;
    std::string describe(const SpecialForm& form) const;
    friend auto operator<=>(const ExponentClass&, const ExponentClass&) = default;
};

// Least constraint-respecting member of the class, if any.
std::optional<std::vector<std::uint64_t>> class_min_assignment(const SpecialForm& form,
                                                               const ExponentClass& cls);
bool class_satisfiable(const SpecialForm& form, const ExponentClass& cls);

// Residue of the form modulo m on every satisfiable exponent class induced by
// pow10_cycle(m); the classes partition the constrained lattice.
std::vector<std::pair<ExponentClass, std::uint64_t>> form_residues(const SpecialForm& form,
                                                                   std::uint64_t m);

// For forms 10^n + R with constant R >= 1: every even n = 2k with k >= threshold
// satisfies (10^k)^2 < 10^n + R < (10^k + 1)^2, hence is not a square.
struct IntervalRule {
    int symbol = 0;
    std::uint64_t threshold = 0;  // least k with R < 2*10^k + 1
};
std::optional<IntervalRule> interval_exclusion(const SpecialForm& form);

struct CertificateCase {
    enum class Rule { Modulus, Interval };
    ExponentClass cls;
    Rule rule = Rule::Modulus;
    std::uint64_t modulus = 0;                // Rule::Modulus
    std::vector<std::uint64_t> witnesses;     // sorted; disjoint from square_residues(modulus)
    std::uint64_t threshold = 0;              // Rule::Interval
};

struct NonSquareCertificate {
    SpecialForm form;
    std::vector<CertificateCase> cases;  // cover the whole constrained lattice
};

struct CertificateResult {
    std::optional<NonSquareCertificate> certificate;  // engaged iff uncovered empty
    std::vector<CertificateCase> cases;               // progress, also when inconclusive
    std::vector<ExponentClass> uncovered;

    bool certified() const { return certificate.has_value(); }
};

// Greedy case-split search: ascending moduli, full covers preferred, then the
// first modulus making progress, recursing at most max_case_split levels deep.
CertificateResult find_certificate(const SpecialForm& form, std::uint64_t modulus_bound = 200,
                                   int max_case_split = 3);

// Re-derives every case from scratch (witness disjointness, residue membership,
// interval position at sampled exponents, lattice coverage).
bool verify_certificate(const SpecialForm& form, const NonSquareCertificate& cert,
                        std::string* why = nullptr);

struct FamilyReport {
    SpecialForm form;
    std::optional<NonSquareCertificate> certificate;
    std::vector<ExponentClass> uncovered_cases;
    std::uint64_t brute_force_bound = 0;
    std::uint64_t assignments_checked = 0;
    std::vector<std::map<std::string, std::uint64_t>> brute_force_squares_found;
};

// Evaluates the form at every constrained assignment with exponents <= bound.
FamilyReport brute_force_family(const SpecialForm& form, std::uint64_t exponent_bound);

// n >= 100 ending in 41 with odd hundreds digit, or in 21 with even hundreds
// digit, is 5 mod 8 and therefore not a square.
bool last_two_digits_exclusion(const bigint& n);

}  // namespace dsq
