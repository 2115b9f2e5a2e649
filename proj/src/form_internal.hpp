#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dsq/forms.hpp"
#include "dsq/modsquares.hpp"

// Shared class-refinement machinery for form_residues and the certificate
// engine: splitting an exponent class along the preperiod/period structure of
// 10^n mod m, so that 10^n is constant on every emitted subclass.
namespace dsq::detail {

constexpr std::uint64_t kSubclassBudget = 1 << 16;     // max subclasses per refinement
constexpr std::uint64_t kLcmCap = 1'000'000'000;       // max combined class period

struct RefinedSymbol {
    SymbolClass cls;
    std::uint64_t tenpow;  // 10^v mod m, constant across the subclass
};

// Partition sc into subclasses on which 10^n mod m is constant; empty optional
// when the combined period would exceed kLcmCap / budget.
std::optional<std::vector<RefinedSymbol>> refine_symbol(const SymbolClass& sc,
                                                        const ResidueCycle& rc);

// Cartesian refinement of a full exponent class, filtered to satisfiable
// subclasses, each paired with the form's residue mod m.  Empty optional when
// the subclass product exceeds the budget.
std::optional<std::vector<std::pair<ExponentClass, std::uint64_t>>> refine_class(
    const SpecialForm& form, const ExponentClass& cls, std::uint64_t m, const ResidueCycle& rc);

}  // namespace dsq::detail
