#include "dsq/forms.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "dsq/modsquares.hpp"
#include "form_internal.hpp"

namespace dsq {

namespace {

constexpr std::uint64_t kMaxLiteralExponent = 100'000;   // folding 10^e needs an e-digit number
constexpr std::uint64_t kMaxEvaluateExponent = 1'000'000;

bigint pow10_big(std::uint64_t e) {
    return boost::multiprecision::pow(bigint(10), static_cast<unsigned>(e));
}

}  // namespace

std::vector<int> SpecialForm::topo_order() const {
    std::vector<int> order;
    std::vector<bool> placed(symbols.size(), false);
    for (std::size_t round = 0; round < symbols.size(); ++round) {
        int pick = -1;
        for (int s = 0; s < static_cast<int>(symbols.size()); ++s) {
            if (placed[s]) continue;
            bool ready = true;
            for (const auto& [a, b] : ge)
                if (a == s && !placed[b]) ready = false;
            if (ready) {
                pick = s;
                break;
            }
        }
        if (pick < 0) throw std::invalid_argument("cyclic exponent constraints");
        placed[pick] = true;
        order.push_back(pick);
    }
    return order;
}

std::vector<std::uint64_t> SpecialForm::effective_lower() const {
    std::vector<std::uint64_t> eff = lower;
    for (int s : topo_order())
        for (const auto& [a, b] : ge)
            if (a == s) eff[s] = std::max(eff[s], eff[b]);
    return eff;
}

std::string SpecialForm::text() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (!first) os << " + ";
        first = false;
        if (t.coefficient != 1) os << t.coefficient << "*";
        os << "10^" << symbols[t.symbol];
    }
    if (constant != 0 || first) {
        if (!first) os << " + ";
        first = false;
        os << constant;
    }
    bool anycons = !ge.empty() ||
                   std::any_of(lower.begin(), lower.end(), [](std::uint64_t v) { return v > 0; });
    if (anycons) {
        os << " ; ";
        bool firstc = true;
        for (const auto& [a, b] : ge) {
            if (!firstc) os << ", ";
            firstc = false;
            os << symbols[a] << " >= " << symbols[b];
        }
        for (std::size_t s = 0; s < symbols.size(); ++s) {
            if (lower[s] == 0) continue;
            if (!firstc) os << ", ";
            firstc = false;
            os << symbols[s] << " >= " << lower[s];
        }
    }
    return os.str();
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip();
        return i < s.size() ? s[i] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        std::string d = s.substr(i, j - i);
        i = j;
        return d;
    }
    std::string ident() {
        skip();
        std::size_t j = i;
        while (j < s.size() && std::islower(static_cast<unsigned char>(s[j]))) ++j;
        std::string d = s.substr(i, j - i);
        i = j;
        return d;
    }
};

}  // namespace

SpecialForm parse_form(const std::string& text) {
    Cursor c{text};
    SpecialForm f;

    auto sym_index = [&](const std::string& name) -> int {
        auto it = std::find(f.symbols.begin(), f.symbols.end(), name);
        if (it != f.symbols.end()) return static_cast<int>(it - f.symbols.begin());
        f.symbols.push_back(name);
        f.lower.push_back(0);
        return static_cast<int>(f.symbols.size() - 1);
    };

    // exponent after "10^": lowercase symbol or literal, applied with coefficient
    auto parse_exponent = [&](int coeff, std::size_t termpos) {
        c.skip();
        std::size_t epos = c.i;
        if (std::islower(static_cast<unsigned char>(c.peek()))) {
            f.terms.push_back({coeff, sym_index(c.ident())});
            return;
        }
        std::string d = c.digits();
        if (d.empty()) throw FormParseError("expected exponent symbol or integer after '^'", epos);
        std::uint64_t e = 0;
        try {
            e = std::stoull(d);
        } catch (...) {
            throw FormParseError("exponent literal out of range", epos);
        }
        if (e > kMaxLiteralExponent) throw FormParseError("exponent literal too large", epos);
        f.constant += coeff * pow10_big(e);
        (void)termpos;
    };

    c.skip();
    if (c.i >= text.size()) throw FormParseError("empty form", 0);

    for (;;) {
        c.skip();
        std::size_t termpos = c.i;
        if (!std::isdigit(static_cast<unsigned char>(c.peek())))
            throw FormParseError("expected a term", termpos);
        std::string d = c.digits();
        if (c.eat('*')) {
            // explicit coefficient: c * 10^X
            if (d.size() != 1 || d[0] == '0')
                throw FormParseError("coefficient must be a single digit 1..9", termpos);
            std::size_t basepos = c.i;
            c.skip();
            std::string base = c.digits();
            if (base != "10") throw FormParseError("expected base 10 after coefficient", basepos);
            if (!c.eat('^')) throw FormParseError("expected '^' after 10", c.i);
            parse_exponent(d[0] - '0', termpos);
        } else if (c.peek() == '^') {
            // juxtaposed form [c]10^X: the digit string must end in "10"
            c.eat('^');
            if (d.size() >= 2 && d.compare(d.size() - 2, 2, "10") == 0) {
                std::string pre = d.substr(0, d.size() - 2);
                int coeff = 1;
                if (pre.size() == 1 && pre[0] != '0') {
                    coeff = pre[0] - '0';
                } else if (!pre.empty()) {
                    throw FormParseError("coefficient must be a single digit 1..9", termpos);
                }
                parse_exponent(coeff, termpos);
            } else {
                throw FormParseError("exponent base must be 10", termpos);
            }
        } else {
            // plain integer constant
            f.constant += bigint(d);
        }
        if (c.eat('+')) continue;
        break;
    }

    if (c.eat(';')) {
        for (;;) {
            c.skip();
            std::size_t cpos = c.i;
            std::string lhs = c.ident();
            if (lhs.empty()) throw FormParseError("expected symbol in constraint", cpos);
            auto it = std::find(f.symbols.begin(), f.symbols.end(), lhs);
            if (it == f.symbols.end())
                throw FormParseError("unknown symbol '" + lhs + "' in constraint", cpos);
            int li = static_cast<int>(it - f.symbols.begin());
            c.skip();
            if (!(c.eat('>') && c.eat('=')))
                throw FormParseError("expected '>=' in constraint", c.i);
            c.skip();
            std::size_t rpos = c.i;
            if (std::islower(static_cast<unsigned char>(c.peek()))) {
                std::string rhs = c.ident();
                auto jt = std::find(f.symbols.begin(), f.symbols.end(), rhs);
                if (jt == f.symbols.end())
                    throw FormParseError("unknown symbol '" + rhs + "' in constraint", rpos);
                int ri = static_cast<int>(jt - f.symbols.begin());
                if (ri == li) throw FormParseError("constraint compares a symbol to itself", cpos);
                if (std::find(f.ge.begin(), f.ge.end(), std::make_pair(li, ri)) == f.ge.end())
                    f.ge.emplace_back(li, ri);
            } else {
                std::string d = c.digits();
                if (d.empty()) throw FormParseError("expected symbol or integer after '>='", rpos);
                std::uint64_t v = 0;
                try {
                    v = std::stoull(d);
                } catch (...) {
                    throw FormParseError("constraint bound out of range", rpos);
                }
                f.lower[li] = std::max(f.lower[li], v);
            }
            if (c.eat(',')) continue;
            break;
        }
    }

    c.skip();
    if (c.i != text.size()) throw FormParseError("unexpected trailing input", c.i);

    try {
        f.topo_order();  // rejects cyclic constraint chains
    } catch (const std::invalid_argument& e) {
        throw FormParseError(e.what(), text.size());
    }
    return f;
}

bigint evaluate_form(const SpecialForm& form,
                     const std::map<std::string, std::uint64_t>& assignment) {
    std::vector<std::uint64_t> val(form.symbols.size());
    for (std::size_t s = 0; s < form.symbols.size(); ++s) {
        auto it = assignment.find(form.symbols[s]);
        if (it == assignment.end())
            throw std::invalid_argument("assignment missing symbol '" + form.symbols[s] + "'");
        val[s] = it->second;
        if (val[s] > kMaxEvaluateExponent)
            throw std::invalid_argument("exponent too large for symbol '" + form.symbols[s] + "'");
        if (val[s] < form.lower[s])
            throw std::invalid_argument("constraint violated: " + form.symbols[s] +
                                        " >= " + std::to_string(form.lower[s]) + " (" +
                                        form.symbols[s] + " = " + std::to_string(val[s]) + ")");
    }
    for (const auto& [a, b] : form.ge) {
        if (val[a] < val[b])
            throw std::invalid_argument("constraint violated: " + form.symbols[a] +
                                        " >= " + form.symbols[b] + " (" + form.symbols[a] + " = " +
                                        std::to_string(val[a]) + ", " + form.symbols[b] + " = " +
                                        std::to_string(val[b]) + ")");
    }
    bigint sum = form.constant;
    for (const auto& t : form.terms) sum += t.coefficient * pow10_big(val[t.symbol]);
    return sum;
}

bool ExponentClass::contains(const std::vector<std::uint64_t>& exponents) const {
    if (exponents.size() != symbols.size()) return false;
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (!symbols[i].contains(exponents[i])) return false;
    return true;
}

std::string ExponentClass::describe(const SpecialForm& form) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (i) os << "; ";
        const std::string& n = form.symbols[i];
        const SymbolClass& sc = symbols[i];
        if (sc.modulus == 0)
            os << n << " = " << sc.min_value;
        else if (sc.modulus == 1)
            os << n << " >= " << sc.min_value;
        else
            os << n << " mod " << sc.modulus << " = " << sc.residue % sc.modulus << ", " << n
               << " >= " << sc.min_value;
    }
    return os.str();
}

namespace {

// Least member of sc that is >= lo, if any.
std::optional<std::uint64_t> smallest_in(const SymbolClass& sc, std::uint64_t lo) {
    if (sc.modulus == 0) {
        if (sc.min_value >= lo) return sc.min_value;
        return std::nullopt;
    }
    std::uint64_t base = std::max(lo, sc.min_value);
    std::uint64_t M = sc.modulus;
    std::uint64_t k = (sc.residue % M + M - base % M) % M;
    return base + k;
}

// Greedy minimum over the constraint DAG; correct because every constraint is
// a lower bound, so minimal choices never invalidate later symbols.
bool min_assignment_impl(const SpecialForm& form, const ExponentClass& cls,
                         const std::vector<int>& topo, const std::vector<std::uint64_t>& eff,
                         std::vector<std::uint64_t>& val) {
    for (int s : topo) {
        std::uint64_t lo = eff[s];
        for (const auto& [a, b] : form.ge)
            if (a == s) lo = std::max(lo, val[b]);
        auto v = smallest_in(cls.symbols[s], lo);
        if (!v) return false;
        val[s] = *v;
    }
    return true;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> class_min_assignment(const SpecialForm& form,
                                                               const ExponentClass& cls) {
    if (cls.symbols.size() != form.symbols.size())
        throw std::invalid_argument("class arity does not match form");
    auto topo = form.topo_order();
    auto eff = form.effective_lower();
    std::vector<std::uint64_t> val(form.symbols.size(), 0);
    if (!min_assignment_impl(form, cls, topo, eff, val)) return std::nullopt;
    return val;
}

bool class_satisfiable(const SpecialForm& form, const ExponentClass& cls) {
    return class_min_assignment(form, cls).has_value();
}

namespace detail {

std::optional<std::vector<RefinedSymbol>> refine_symbol(const SymbolClass& sc,
                                                        const ResidueCycle& rc) {
    const std::uint64_t P = rc.preperiod.size();
    const std::uint64_t L = rc.cycle.size();
    std::vector<RefinedSymbol> out;
    if (sc.modulus == 0) {
        out.push_back({sc, rc.at(sc.min_value)});
        return out;
    }
    const std::uint64_t M = sc.modulus;
    const std::uint64_t r = sc.residue % M;
    const std::uint64_t m0 = sc.min_value;
    for (std::uint64_t v = m0; v < P; ++v)
        if (v % M == r) out.push_back({{0, 0, v}, rc.preperiod[v]});
    const std::uint64_t g = std::gcd(M, L);
    if (M / g > kLcmCap / L) return std::nullopt;
    const std::uint64_t M2 = M / g * L;
    if (M2 / M > kSubclassBudget) return std::nullopt;
    const std::uint64_t base = std::max(m0, P);
    for (std::uint64_t r2 = r; r2 < M2; r2 += M) {
        std::uint64_t min2 = base + (r2 % M2 + M2 - base % M2) % M2;
        std::uint64_t pos = (r2 % L + L - P % L) % L;
        out.push_back({{M2, r2, min2}, rc.cycle[pos]});
    }
    return out;
}

std::optional<std::vector<std::pair<ExponentClass, std::uint64_t>>> refine_class(
    const SpecialForm& form, const ExponentClass& cls, std::uint64_t m, const ResidueCycle& rc) {
    const std::size_t nsym = cls.symbols.size();
    std::vector<std::vector<RefinedSymbol>> per;
    per.reserve(nsym);
    std::uint64_t total = 1;
    for (const auto& sc : cls.symbols) {
        auto rs = refine_symbol(sc, rc);
        if (!rs) return std::nullopt;
        total *= rs->size();
        if (total > kSubclassBudget) return std::nullopt;
        per.push_back(std::move(*rs));
    }
    const auto topo = form.topo_order();
    const auto eff = form.effective_lower();
    std::vector<std::uint64_t> scratch(nsym, 0);
    const std::uint64_t cmod = static_cast<std::uint64_t>(form.constant % m);
    std::vector<std::pair<ExponentClass, std::uint64_t>> out;
    std::vector<std::size_t> idx(nsym, 0);
    ExponentClass sub;
    sub.symbols.resize(nsym);
    for (;;) {
        for (std::size_t i = 0; i < nsym; ++i) sub.symbols[i] = per[i][idx[i]].cls;
        if (min_assignment_impl(form, sub, topo, eff, scratch)) {
            std::uint64_t res = cmod;
            for (const auto& t : form.terms)
                res = (res + static_cast<std::uint64_t>(t.coefficient) *
                                 per[t.symbol][idx[t.symbol]].tenpow) %
                      m;
            out.emplace_back(sub, res);
        }
        // odometer, last symbol fastest
        std::size_t i = nsym;
        bool advanced = false;
        while (i > 0) {
            --i;
            if (++idx[i] < per[i].size()) {
                advanced = true;
                break;
            }
            idx[i] = 0;
        }
        if (!advanced) return out;
    }
}

}  // namespace detail

std::vector<std::pair<ExponentClass, std::uint64_t>> form_residues(const SpecialForm& form,
                                                                   std::uint64_t m) {
    if (m < 2) throw std::invalid_argument("form_residues: modulus must be >= 2");
    ResidueCycle rc = pow10_cycle(m);
    auto eff = form.effective_lower();
    ExponentClass root;
    for (std::size_t s = 0; s < form.symbols.size(); ++s) root.symbols.push_back({1, 0, eff[s]});
    auto refined = detail::refine_class(form, root, m, rc);
    if (!refined)
        throw std::invalid_argument("form_residues: class structure mod " + std::to_string(m) +
                                    " too large to enumerate");
    return *refined;
}

std::optional<IntervalRule> interval_exclusion(const SpecialForm& form) {
    if (form.terms.size() != 1 || form.symbols.size() != 1) return std::nullopt;
    if (form.terms[0].coefficient != 1) return std::nullopt;
    if (form.constant < 1) return std::nullopt;
    // least k with constant < 2*10^k + 1
    std::uint64_t k = 0;
    bigint t = 2;
    while (t < form.constant) {
        t *= 10;
        ++k;
    }
    return IntervalRule{form.terms[0].symbol, k};
}

FamilyReport brute_force_family(const SpecialForm& form, std::uint64_t exponent_bound) {
    if (exponent_bound < 1)
        throw std::invalid_argument("brute_force_family: exponent bound must be >= 1");
    if (form.symbols.empty())
        throw std::invalid_argument("brute_force_family: form has no symbolic exponents");
    double space = 1;
    for (std::size_t s = 0; s < form.symbols.size(); ++s) space *= double(exponent_bound) + 1;
    if (space > 2e8)
        throw std::invalid_argument("brute_force_family: assignment space too large");

    FamilyReport rep;
    rep.form = form;
    rep.brute_force_bound = exponent_bound;

    std::vector<bigint> p10(exponent_bound + 1);
    p10[0] = 1;
    for (std::uint64_t e = 1; e <= exponent_bound; ++e) p10[e] = p10[e - 1] * 10;

    auto topo = form.topo_order();
    std::vector<std::uint64_t> val(form.symbols.size(), 0);

    // depth-first over topo-ordered symbols; ge targets are already assigned
    auto rec = [&](auto&& self, std::size_t d) -> void {
        if (d == topo.size()) {
            bigint v = form.constant;
            for (const auto& t : form.terms) v += t.coefficient * p10[val[t.symbol]];
            ++rep.assignments_checked;
            if (is_perfect_square(v)) {
                std::map<std::string, std::uint64_t> a;
                for (std::size_t s = 0; s < form.symbols.size(); ++s) a[form.symbols[s]] = val[s];
                rep.brute_force_squares_found.push_back(std::move(a));
            }
            return;
        }
        int s = topo[d];
        std::uint64_t lo = form.lower[s];
        for (const auto& [x, y] : form.ge)
            if (x == s) lo = std::max(lo, val[y]);
        for (std::uint64_t v = lo; v <= exponent_bound; ++v) {
            val[s] = v;
            self(self, d + 1);
        }
    };
    rec(rec, 0);
    return rep;
}

bool last_two_digits_exclusion(const bigint& n) {
    if (n < 100) throw std::invalid_argument("last_two_digits_exclusion: n must be >= 100");
    unsigned r = static_cast<unsigned>(n % 1000);
    unsigned last2 = r % 100;
    unsigned hundreds = r / 100;
    // both patterns force n = 5 (mod 8)
    return (last2 == 41 && hundreds % 2 == 1) || (last2 == 21 && hundreds % 2 == 0);
}

}  // namespace dsq
