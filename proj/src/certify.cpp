#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "dsq/forms.hpp"
#include "dsq/modsquares.hpp"
#include "dsq/primes.hpp"
#include "form_internal.hpp"

namespace dsq {

namespace {

using Refinement = std::vector<std::pair<ExponentClass, std::uint64_t>>;

struct Engine {
    const SpecialForm& form;
    std::uint64_t bound;
    int max_split;
    std::map<std::uint64_t, ResidueCycle> cycles;
    std::map<std::uint64_t, std::vector<char>> qr;
    std::vector<CertificateCase> cases;
    std::vector<ExponentClass> uncovered;

    const ResidueCycle& cycle(std::uint64_t m) {
        auto it = cycles.find(m);
        if (it == cycles.end()) it = cycles.emplace(m, pow10_cycle(m)).first;
        return it->second;
    }

    const std::vector<char>& squares(std::uint64_t m) {
        auto it = qr.find(m);
        if (it == qr.end()) {
            std::vector<char> bits(m, 0);
            for (std::uint64_t r : square_residues(m).residues) bits[r] = 1;
            it = qr.emplace(m, std::move(bits)).first;
        }
        return it->second;
    }

    std::optional<Refinement> refine(const ExponentClass& cls, std::uint64_t m) {
        return detail::refine_class(form, cls, m, cycle(m));
    }

    // merged full-cover case: parent class excluded wholesale by one modulus
    bool emit_if_full(const ExponentClass& cls, std::uint64_t m, const Refinement& sub) {
        const auto& sq = squares(m);
        for (const auto& [c, r] : sub)
            if (sq[r]) return false;
        std::set<std::uint64_t> wit;
        for (const auto& [c, r] : sub) wit.insert(r);
        CertificateCase cc;
        cc.cls = cls;
        cc.rule = CertificateCase::Rule::Modulus;
        cc.modulus = m;
        cc.witnesses.assign(wit.begin(), wit.end());
        cases.push_back(std::move(cc));
        return true;
    }

    void visit(const ExponentClass& cls, int depth) {
        for (std::uint64_t m = 3; m <= bound; ++m) {
            auto sub = refine(cls, m);
            if (!sub || sub->empty()) continue;
            if (emit_if_full(cls, m, *sub)) return;
            // square-divisor lift: residue 0 mod a prime p says any square in the
            // family must be divisible by p^2, so split mod p^2 right away
            bool all_zero = std::all_of(sub->begin(), sub->end(),
                                        [](const auto& e) { return e.second == 0; });
            if (all_zero && m * m <= bound && is_prime(m)) {
                auto sub2 = refine(cls, m * m);
                if (sub2 && !sub2->empty() && emit_if_full(cls, m * m, *sub2)) return;
            }
        }
        if (depth >= max_split) {
            uncovered.push_back(cls);
            return;
        }
        for (std::uint64_t m = 3; m <= bound; ++m) {
            auto sub = refine(cls, m);
            if (!sub || sub->empty()) continue;
            const auto& sq = squares(m);
            std::vector<std::pair<ExponentClass, std::uint64_t>> excluded;
            std::vector<ExponentClass> rest;
            for (auto& [c, r] : *sub) {
                if (!sq[r])
                    excluded.emplace_back(std::move(c), r);
                else
                    rest.push_back(std::move(c));
            }
            if (excluded.empty()) continue;
            for (auto& [c, r] : excluded) {
                CertificateCase cc;
                cc.cls = std::move(c);
                cc.rule = CertificateCase::Rule::Modulus;
                cc.modulus = m;
                cc.witnesses = {r};
                cases.push_back(std::move(cc));
            }
            for (const auto& c : rest) visit(c, depth + 1);
            return;
        }
        uncovered.push_back(cls);
    }
};

bool case_less(const CertificateCase& a, const CertificateCase& b) {
    std::uint64_t ma = a.rule == CertificateCase::Rule::Interval ? 0 : a.modulus;
    std::uint64_t mb = b.rule == CertificateCase::Rule::Interval ? 0 : b.modulus;
    if (ma != mb) return ma < mb;
    return a.cls < b.cls;
}

}  // namespace

CertificateResult find_certificate(const SpecialForm& form, std::uint64_t modulus_bound,
                                   int max_case_split) {
    if (form.symbols.empty())
        throw std::invalid_argument("find_certificate: form has no symbolic exponents");
    if (modulus_bound < 3)
        throw std::invalid_argument("find_certificate: modulus bound must be >= 3");
    if (max_case_split < 1) max_case_split = 1;

    Engine eng{form, modulus_bound, max_case_split, {}, {}, {}, {}};
    auto eff = form.effective_lower();
    ExponentClass root;
    for (std::size_t s = 0; s < form.symbols.size(); ++s) root.symbols.push_back({1, 0, eff[s]});

    std::vector<ExponentClass> pending;
    if (auto iv = interval_exclusion(form)) {
        // split on the parity of the single exponent: even values past the
        // threshold are squeezed between consecutive squares, smaller even
        // values become singleton classes, odd values stay with the engine
        const int s = iv->symbol;
        const std::uint64_t m0 = eff[s];
        const std::uint64_t even_min = m0 + (m0 % 2);
        const std::uint64_t start = std::max(2 * iv->threshold, even_min);
        CertificateCase ic;
        ic.cls = root;
        ic.cls.symbols[s] = {2, 0, start};
        ic.rule = CertificateCase::Rule::Interval;
        ic.threshold = iv->threshold;
        eng.cases.push_back(std::move(ic));
        for (std::uint64_t v = even_min; v < start; v += 2) {
            ExponentClass c = root;
            c.symbols[s] = {0, 0, v};
            pending.push_back(std::move(c));
        }
        ExponentClass odd = root;
        odd.symbols[s] = {2, 1, m0 % 2 == 1 ? m0 : m0 + 1};
        pending.push_back(std::move(odd));
    } else {
        pending.push_back(root);
    }
    for (const auto& c : pending) eng.visit(c, 1);

    std::sort(eng.cases.begin(), eng.cases.end(), case_less);
    std::sort(eng.uncovered.begin(), eng.uncovered.end());

    CertificateResult res;
    res.cases = std::move(eng.cases);
    res.uncovered = std::move(eng.uncovered);
    if (res.uncovered.empty()) res.certificate = NonSquareCertificate{form, res.cases};
    return res;
}

namespace {

bool fail(std::string* why, const std::string& msg) {
    if (why) *why = msg;
    return false;
}

}  // namespace

bool verify_certificate(const SpecialForm& form, const NonSquareCertificate& cert,
                        std::string* why) {
    const std::size_t nsym = form.symbols.size();
    if (cert.cases.empty()) return fail(why, "certificate has no cases");

    for (std::size_t ci = 0; ci < cert.cases.size(); ++ci) {
        const CertificateCase& cc = cert.cases[ci];
        const std::string tag = "case " + std::to_string(ci) + " [" + cc.cls.describe(form) + "]";
        if (cc.cls.symbols.size() != nsym) return fail(why, tag + ": wrong arity");
        if (!class_satisfiable(form, cc.cls)) return fail(why, tag + ": empty class");

        if (cc.rule == CertificateCase::Rule::Modulus) {
            if (cc.modulus < 3) return fail(why, tag + ": modulus too small");
            if (cc.witnesses.empty()) return fail(why, tag + ": no witnesses");
            ResidueSet sq = square_residues(cc.modulus);
            for (std::uint64_t w : cc.witnesses)
                if (sq.contains(w)) return fail(why, tag + ": witness " + std::to_string(w) +
                                                         " is a square residue");
            ResidueCycle rc = pow10_cycle(cc.modulus);
            auto sub = detail::refine_class(form, cc.cls, cc.modulus, rc);
            if (!sub) return fail(why, tag + ": class too large to re-enumerate");
            if (sub->empty()) return fail(why, tag + ": class has no members");
            for (const auto& [c, r] : *sub)
                if (!std::binary_search(cc.witnesses.begin(), cc.witnesses.end(), r))
                    return fail(why, tag + ": residue " + std::to_string(r) +
                                         " not in the witness list");
        } else {
            auto iv = interval_exclusion(form);
            if (!iv) return fail(why, tag + ": form admits no interval rule");
            if (cc.threshold != iv->threshold) return fail(why, tag + ": wrong threshold");
            const SymbolClass& sc = cc.cls.symbols[iv->symbol];
            if (sc.modulus != 2 || sc.residue % 2 != 0)
                return fail(why, tag + ": interval class must be the even exponents");
            if (sc.min_value < 2 * iv->threshold)
                return fail(why, tag + ": class reaches below the interval threshold");
            // spot-check the squeeze (10^k)^2 < value < (10^k+1)^2 on the class
            for (int i = 0; i < 20; ++i) {
                std::uint64_t n = sc.min_value + 2 * static_cast<std::uint64_t>(i);
                std::map<std::string, std::uint64_t> asg{{form.symbols[iv->symbol], n}};
                bigint v = evaluate_form(form, asg);
                bigint r = boost::multiprecision::pow(bigint(10), static_cast<unsigned>(n / 2));
                if (!(r * r < v && v < (r + 1) * (r + 1)))
                    return fail(why, tag + ": value at exponent " + std::to_string(n) +
                                         " not strictly between consecutive squares");
            }
        }
    }

    // coverage: enumerate a window long enough to see one full period past
    // every class minimum in each coordinate
    std::vector<std::uint64_t> window(nsym);
    auto eff = form.effective_lower();
    double tuples = 1;
    for (std::size_t s = 0; s < nsym; ++s) {
        std::uint64_t lcm = 1, maxmin = eff[s];
        for (const auto& cc : cert.cases) {
            const SymbolClass& sc = cc.cls.symbols[s];
            std::uint64_t m = sc.modulus == 0 ? 1 : sc.modulus;
            std::uint64_t g = std::gcd(lcm, m);
            lcm = lcm / g * m;
            if (lcm > 1'000'000) return fail(why, "coverage window too large");
            maxmin = std::max(maxmin, sc.min_value);
        }
        window[s] = maxmin + 2 * lcm;
        tuples *= double(window[s] - eff[s] + 1);
    }
    if (tuples > 2e7) return fail(why, "coverage window too large");

    std::vector<std::uint64_t> val(nsym, 0);
    auto rec = [&](auto&& self, std::size_t d) -> bool {
        if (d == nsym) {
            for (const auto& [a, b] : form.ge)
                if (val[a] < val[b]) return true;  // constraint-violating tuple: skip
            for (const auto& cc : cert.cases)
                if (cc.cls.contains(val)) return true;
            if (why) {
                std::string s = "uncovered assignment:";
                for (std::size_t i = 0; i < nsym; ++i)
                    s += " " + form.symbols[i] + "=" + std::to_string(val[i]);
                *why = s;
            }
            return false;
        }
        for (std::uint64_t v = eff[d]; v <= window[d]; ++v) {
            val[d] = v;
            if (!self(self, d + 1)) return false;
        }
        return true;
    };
    return rec(rec, 0);
}

}  // namespace dsq
