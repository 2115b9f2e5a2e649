#include "dsq/cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dsq/digits.hpp"
#include "dsq/forms.hpp"
#include "dsq/modsquares.hpp"
#include "dsq/primes.hpp"
#include "dsq/solver.hpp"

namespace dsq::cli {
namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSieveLimit = 1'000'000;
constexpr std::uint64_t kSieveCeiling = 2'000'000'000;

std::uint64_t default_sieve_limit() {
    const char* env = std::getenv("DSQ_SIEVE_LIMIT");
    if (env == nullptr || *env == '\0') return kDefaultSieveLimit;
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), v);
    if (ec != std::errc() || *ptr != '\0' || v < 2)
        throw std::invalid_argument("DSQ_SIEVE_LIMIT must be a decimal integer >= 2");
    return v;
}

bigint parse_big(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("expected a nonnegative decimal integer");
    for (char c : s)
        if (c < '0' || c > '9')
            throw std::invalid_argument("expected a nonnegative decimal integer, got '" + s + "'");
    return bigint(s);
}

bool parse_u64(const std::string& s, std::uint64_t& v) {
    if (s.empty()) return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size();
}

ordered_json record_json(const SolutionRecord& r) {
    ordered_json j;
    j["x1"] = r.x1;
    j["x2"] = r.x2;
    j["x3"] = r.x3;
    j["x4"] = r.x4;
    j["a"] = r.a;
    j["b"] = r.b;
    j["s"] = r.s;
    j["p"] = r.p;
    return j;
}

// Rosser: p_j < j (ln j + ln ln j) for j >= 6; padded so one sieve usually suffices.
std::uint64_t nth_prime_upper(std::uint64_t j) {
    if (j < 6) return 13;
    double x = static_cast<double>(j);
    double est = x * (std::log(x) + std::log(std::log(x)));
    return static_cast<std::uint64_t>(est * 1.2) + 16;
}

PrimeTable table_for_index(std::uint64_t j, std::uint64_t base_limit) {
    std::uint64_t limit = std::min(std::max(base_limit, nth_prime_upper(j)), kSieveCeiling);
    for (;;) {
        PrimeTable t = sieve_primes(limit);
        if (t.size() >= j) return t;
        if (limit >= kSieveCeiling)
            throw std::invalid_argument("prime index beyond the supported sieve range");
        limit = std::min(kSieveCeiling, limit * 2);
    }
}

void print_list(std::ostream& out, const char* label, const std::vector<std::uint64_t>& xs) {
    out << label;
    for (auto x : xs) out << ' ' << x;
    out << '\n';
}

void print_case_text(std::ostream& out, const SpecialForm& form, const CertificateCase& c,
                     std::size_t idx) {
    out << "case " << idx << ": " << c.cls.describe(form) << " | ";
    if (c.rule == CertificateCase::Rule::Interval) {
        out << "interval | threshold " << c.threshold << '\n';
    } else {
        out << "modulus " << c.modulus << " | witnesses";
        for (auto w : c.witnesses) out << ' ' << w;
        out << '\n';
    }
}

ordered_json case_json(const SpecialForm& form, const CertificateCase& c, std::size_t idx) {
    ordered_json j;
    j["case"] = idx;
    j["class"] = c.cls.describe(form);
    if (c.rule == CertificateCase::Rule::Interval) {
        j["rule"] = "interval";
        j["threshold"] = c.threshold;
    } else {
        j["rule"] = "modulus";
        j["modulus"] = c.modulus;
        j["witnesses"] = c.witnesses;
    }
    return j;
}

int cmd_verify_args(const std::vector<std::uint64_t>& xs, std::ostream& out) {
    CheckResult res = check_system(xs[0], xs[1], xs[2], xs[3]);
    if (res.record) {
        out << record_json(*res.record).dump() << '\n';
        return 0;
    }
    out << "reject " << check_failure_name(res.failure) << '\n';
    return 1;
}

int cmd_verify_stream(std::istream& in, std::ostream& out) {
    std::string line;
    bool all_ok = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (toks.empty()) continue;  // whitespace-only lines carry no verdict
        std::array<std::uint64_t, 4> x{};
        bool ok = toks.size() == 4;
        for (std::size_t i = 0; ok && i < 4; ++i) ok = parse_u64(toks[i], x[i]);
        if (!ok) {
            out << "parse-error\n";
            all_ok = false;
            continue;
        }
        CheckResult res = check_system(x[0], x[1], x[2], x[3]);
        if (res.record) {
            out << "accept " << record_json(*res.record).dump() << '\n';
        } else {
            out << "reject " << check_failure_name(res.failure) << '\n';
            all_ok = false;
        }
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"prime quadruples under digital-sum constraints: search, verify, certify"};
    app.name("dsq");
    app.require_subcommand(1);

    auto* search_cmd =
        app.add_subcommand("search", "enumerate solution quadruples over a prime index window");
    std::uint64_t s_min = 1, s_max = 0;
    bool s_dedup = false;
    std::string s_format = "jsonl";
    std::optional<std::uint64_t> s_limit;
    search_cmd->add_option("--min-index", s_min, "first prime index, 1-based")
        ->capture_default_str();
    search_cmd->add_option("--max-index", s_max, "last prime index, 1-based")->required();
    search_cmd->add_flag("--dedup-ab", s_dedup,
                         "keep only the lexicographically least quadruple per (a,b)");
    search_cmd->add_option("--format", s_format, "output format")
        ->check(CLI::IsMember({"jsonl", "csv"}))
        ->capture_default_str();
    search_cmd->add_option("--limit", s_limit,
                           "sieve limit (default: DSQ_SIEVE_LIMIT or 1000000; grown as needed)");

    auto* verify_cmd = app.add_subcommand(
        "verify", "check one quadruple given as arguments, or one per line on standard input");
    std::vector<std::uint64_t> v_vals;
    verify_cmd
        ->add_option("values", v_vals, "four primes x1 x2 x3 x4 (omit to read standard input)")
        ->expected(0, 4);

    auto* dgs_cmd = app.add_subcommand("dgs", "digital sum of a nonnegative integer");
    std::string g_n;
    dgs_cmd->add_option("n", g_n, "nonnegative decimal integer")->required();

    auto* dgr_cmd = app.add_subcommand("dgr", "digit root of a nonnegative integer");
    std::string r_n;
    dgr_cmd->add_option("n", r_n, "nonnegative decimal integer")->required();

    auto* carries_cmd =
        app.add_subcommand("carries", "decimal carries produced when adding two integers");
    std::string c_m, c_n;
    carries_cmd->add_option("m", c_m, "nonnegative decimal integer")->required();
    carries_cmd->add_option("n", c_n, "nonnegative decimal integer")->required();

    auto* residues_cmd = app.add_subcommand("residues", "quadratic residues x^2 mod m");
    std::uint64_t q_mod = 0;
    residues_cmd->add_option("--modulus", q_mod, "modulus m >= 1")->required();

    auto* pow10_cmd =
        app.add_subcommand("pow10", "preperiod and cycle of the powers of ten mod m");
    std::uint64_t p_mod = 0;
    pow10_cmd->add_option("--modulus", p_mod, "modulus m >= 1")->required();

    auto* certify_cmd = app.add_subcommand(
        "certify", "search for a non-squareness certificate covering a special form");
    std::string cf_form;
    std::uint64_t cf_bound = 200;
    int cf_split = 3;
    std::string cf_format = "text";
    certify_cmd->add_option("--form", cf_form, "form text, e.g. \"10^n+10^k+41; n>=1, k>=1\"")
        ->required();
    certify_cmd->add_option("--modulus-bound", cf_bound, "largest modulus tried")
        ->capture_default_str();
    certify_cmd->add_option("--max-split", cf_split, "case-split recursion depth")
        ->capture_default_str();
    certify_cmd->add_option("--format", cf_format, "output format")
        ->check(CLI::IsMember({"text", "jsonl"}))
        ->capture_default_str();

    auto* brute_cmd = app.add_subcommand(
        "bruteforce", "exhaustively test a special form for squares at small exponents");
    std::string bf_form;
    std::uint64_t bf_bound = 0;
    brute_cmd->add_option("--form", bf_form, "form text, e.g. \"10^n+321; n>=1\"")->required();
    brute_cmd->add_option("--bound", bf_bound, "largest exponent value tried")->required();

    auto* primes_cmd = app.add_subcommand("primes", "list sieved primes, or print the J-th");
    std::optional<std::uint64_t> pr_limit;
    std::optional<std::uint64_t> pr_nth;
    primes_cmd->add_option("--limit", pr_limit,
                           "sieve limit (default: DSQ_SIEVE_LIMIT or 1000000)");
    primes_cmd->add_option("--nth", pr_nth, "print only the J-th prime, 1-based");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (search_cmd->parsed()) {
            if (s_min < 1) {
                err << "error: --min-index must be >= 1\n";
                return 2;
            }
            if (s_max < s_min) {
                err << "error: --max-index must be >= --min-index\n";
                return 2;
            }
            PrimeTable table = table_for_index(s_max, s_limit ? *s_limit : default_sieve_limit());
            SearchConfig cfg;
            cfg.min_index = s_min;
            cfg.max_index = s_max;
            cfg.dedup_per_ab = s_dedup;
            auto records = search(table, cfg);
            if (s_format == "csv") {
                out << "x1,x2,x3,x4,a2+b2,a,b\n";
                for (const auto& r : records)
                    out << r.x1 << ',' << r.x2 << ',' << r.x3 << ',' << r.x4 << ',' << r.p << ','
                        << r.a << ',' << r.b << '\n';
            } else {
                for (const auto& r : records) out << record_json(r).dump() << '\n';
            }
            return 0;
        }
        if (verify_cmd->parsed()) {
            if (v_vals.empty()) return cmd_verify_stream(in, out);
            if (v_vals.size() != 4) {
                err << "error: verify takes exactly four values (or none, for stream mode)\n";
                return 2;
            }
            return cmd_verify_args(v_vals, out);
        }
        if (dgs_cmd->parsed()) {
            out << digit_sum(parse_big(g_n)) << '\n';
            return 0;
        }
        if (dgr_cmd->parsed()) {
            out << digit_root(parse_big(r_n)) << '\n';
            return 0;
        }
        if (carries_cmd->parsed()) {
            out << carry_count(parse_big(c_m), parse_big(c_n)) << '\n';
            return 0;
        }
        if (residues_cmd->parsed()) {
            ResidueSet rs = square_residues(q_mod);
            for (std::size_t i = 0; i < rs.residues.size(); ++i)
                out << (i ? " " : "") << rs.residues[i];
            out << '\n';
            return 0;
        }
        if (pow10_cmd->parsed()) {
            ResidueCycle c = pow10_cycle(p_mod);
            print_list(out, "preperiod:", c.preperiod);
            print_list(out, "cycle:", c.cycle);
            return 0;
        }
        if (certify_cmd->parsed()) {
            SpecialForm form = parse_form(cf_form);
            CertificateResult res = find_certificate(form, cf_bound, cf_split);
            if (cf_format == "jsonl") {
                for (std::size_t i = 0; i < res.cases.size(); ++i)
                    out << case_json(form, res.cases[i], i + 1).dump() << '\n';
                ordered_json summary;
                summary["result"] = res.certified() ? "certified" : "inconclusive";
                summary["form"] = form.text();
                summary["cases"] = res.cases.size();
                ordered_json unc = ordered_json::array();
                for (const auto& u : res.uncovered) unc.push_back(u.describe(form));
                summary["uncovered"] = unc;
                out << summary.dump() << '\n';
            } else {
                out << "form: " << form.text() << '\n';
                out << "modulus-bound: " << cf_bound << '\n';
                out << "max-split: " << cf_split << '\n';
                out << "result: " << (res.certified() ? "certified" : "inconclusive") << '\n';
                out << "cases: " << res.cases.size() << '\n';
                for (std::size_t i = 0; i < res.cases.size(); ++i)
                    print_case_text(out, form, res.cases[i], i + 1);
                for (std::size_t i = 0; i < res.uncovered.size(); ++i)
                    out << "uncovered " << (i + 1) << ": " << res.uncovered[i].describe(form)
                        << '\n';
            }
            return res.certified() ? 0 : 1;
        }
        if (brute_cmd->parsed()) {
            SpecialForm form = parse_form(bf_form);
            FamilyReport rep = brute_force_family(form, bf_bound);
            out << "form: " << rep.form.text() << '\n';
            out << "bound: " << rep.brute_force_bound << '\n';
            out << "assignments: " << rep.assignments_checked << '\n';
            out << "squares: " << rep.brute_force_squares_found.size() << '\n';
            for (const auto& sq : rep.brute_force_squares_found) {
                out << "square:";
                for (const auto& [sym, val] : sq) out << ' ' << sym << '=' << val;
                out << " value=" << evaluate_form(form, sq) << '\n';
            }
            return rep.brute_force_squares_found.empty() ? 0 : 1;
        }
        if (primes_cmd->parsed()) {
            std::uint64_t base = pr_limit ? *pr_limit : default_sieve_limit();
            if (pr_nth) {
                if (*pr_nth < 1) {
                    err << "error: --nth must be >= 1\n";
                    return 2;
                }
                PrimeTable t = table_for_index(*pr_nth, base);
                out << t.nth(*pr_nth) << '\n';
                return 0;
            }
            PrimeTable t = sieve_primes(base);
            for (auto p : t.primes) out << p << '\n';
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "error: no subcommand dispatched\n";
    return 2;
}

}  // namespace dsq::cli
