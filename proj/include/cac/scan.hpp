#pragma once

/**
 * @file scan.hpp
 * @brief Range scans over primes running any subset of the library's checks,
 *        with batch-level parallelism and resumable checkpoints.
 */

#include <cac/chansim.hpp>
#include <cac/codes.hpp>
#include <cac/cyclotomic.hpp>
#include <cac/json_io.hpp>
#include <cac/modarith.hpp>
#include <cac/oracle.hpp>
#include <cac/squares.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace cac {

enum class ScanCheck { context, cyclotomic, squares, bounds, roots, positivity, construct, oracle, gauss, exhaustive };

inline const std::map<std::string, ScanCheck>& scan_check_names() {
    static const std::map<std::string, ScanCheck> names{
        {"context", ScanCheck::context},       {"cyclotomic", ScanCheck::cyclotomic},
        {"squares", ScanCheck::squares},       {"bounds", ScanCheck::bounds},
        {"roots", ScanCheck::roots},           {"positivity", ScanCheck::positivity},
        {"construct", ScanCheck::construct},   {"oracle", ScanCheck::oracle},
        {"gauss", ScanCheck::gauss},           {"exhaustive", ScanCheck::exhaustive},
    };
    return names;
}

inline std::string to_string(ScanCheck c) {
    for (const auto& [name, value] : scan_check_names())
        if (value == c) return name;
    return "?";
}

/// Parses "all" or a comma-separated list of check names.
inline std::set<ScanCheck> parse_checks(const std::string& list) {
    std::set<ScanCheck> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (item == "all") {
            for (const auto& [name, value] : scan_check_names()) out.insert(value);
            continue;
        }
        const auto it = scan_check_names().find(item);
        if (it == scan_check_names().end()) throw std::invalid_argument("unknown check: " + item);
        out.insert(it->second);
    }
    return out;
}

struct ScanRecord {
    u64 p = 0;
    u64 order_of_2 = 0;
    u64 subgroup_order = 0;
    u64 ell = 0;
    u64 big_o = 0;
    std::optional<u64> s_ell;
    std::optional<u64> known_optimal;
    std::optional<u64> constructed_size;
    bool verified = true;
    std::vector<std::string> failures;

    [[nodiscard]] bool ok() const noexcept { return verified && failures.empty(); }
};

struct ScanOptions {
    u64 from = 5;
    u64 to = 500;
    std::set<ScanCheck> checks;
    unsigned threads = 1;
    u64 search_limit = 1'000'000;
    std::optional<std::filesystem::path> checkpoint;
    u64 checkpoint_every = 64;
};

struct ScanReport {
    u64 from = 0;
    u64 to = 0;
    std::vector<ScanRecord> records;  // ascending by p

    [[nodiscard]] bool ok() const {
        return std::all_of(records.begin(), records.end(), [](const ScanRecord& r) { return r.ok(); });
    }
};

namespace detail {

inline void absorb(ScanRecord& rec, const CheckReport& report) {
    for (const auto& f : report.failures) rec.failures.push_back(report.name + ": " + f);
}

inline CheckReport check_context(const GroupContext& ctx) {
    CheckReport r{"context", {}, 0};
    const u64 p = ctx.p();
    r.expect_eq(ctx.ell() * ctx.subgroup_order(), p - 1, "ell * |L|");
    r.expect(ctx.subgroup_order() % 2 == 0, "|L| odd");
    r.expect_eq(ctx.big_o() == 0, ctx.subgroup_order() % 4 == 0, "O(p) = 0 iff 4 | |L|");
    r.expect_eq(multiplicative_order(ctx.primitive_root(), p, ctx.group_order_factors()), p - 1, "order of root");
    if (p <= (u64{1} << 20)) {
        std::vector<bool> hit(p, false);
        u64 total = 0;
        for (CosetIndex i = 0; i < ctx.ell(); ++i) {
            for (const Residue x : coset_members(ctx, i)) {
                r.expect(!hit[x], "residue " + std::to_string(x) + " in two cosets");
                hit[x] = true;
                ++total;
                if (ctx.coset_index(x) != i) r.expect(false, "coset_index mismatch at " + std::to_string(x));
            }
        }
        r.expect_eq(total, p - 1, "coset union size");
    }
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<u64> dist(1, p - 1);
    for (int k = 0; k < 200; ++k) {
        const u64 x = dist(rng), y = dist(rng);
        r.expect_eq(ctx.coset_index(mul_mod(x, y, p)), (ctx.coset_index(x) + ctx.coset_index(y)) % ctx.ell(),
                    "coset_index(" + std::to_string(x) + "*" + std::to_string(y) + ")");
        r.expect(legendre(x, p) >= 0 || legendre(y, p) >= 0 || legendre(mul_mod(x, y, p), p) >= 0,
                 "no square among x, y, xy");
    }
    return r;
}

inline CheckReport check_against_definition(const GroupContext& ctx) {
    CheckReport r{"oracle", {}, 0};
    const auto ell = static_cast<i64>(ctx.ell());
    for (i64 i = 0; i < ell; ++i)
        for (i64 j = 0; j < ell; ++j)
            r.expect_eq(oracle::a_by_definition(ctx.p(), ctx.primitive_root(), ctx.ell(), i, j),
                        cyclotomic_number(ctx, i, j), detail::entry_name("A", i, j));
    return r;
}

}  // namespace detail

/// Runs the selected checks for a single prime. Exceptions are recorded as
/// failures rather than propagated.
inline ScanRecord scan_prime(u64 p, const std::set<ScanCheck>& checks, u64 search_limit = 1'000'000) {
    ScanRecord rec;
    rec.p = p;
    auto has = [&](ScanCheck c) { return checks.count(c) > 0; };
    try {
        const auto ctx = build_context(p);
        rec.order_of_2 = ctx.order_of_2();
        rec.subgroup_order = ctx.subgroup_order();
        rec.ell = ctx.ell();
        rec.big_o = ctx.big_o();
        if (const auto known = known_optimal_size(ctx)) rec.known_optimal = known->size;
        const u64 ell = ctx.ell();
        const bool small_matrix = ell <= kMaxMatrixOrder;
        if (ell >= 3) rec.s_ell = s_ell(ctx);

        if (has(ScanCheck::context)) detail::absorb(rec, detail::check_context(ctx));
        if (has(ScanCheck::cyclotomic) && small_matrix) {
            const auto m = cyclotomic_matrix(ctx);
            detail::absorb(rec, check_cyclotomic_symmetries(m));
            ExtendedMatrix b(m.p(), m.root(), m.ell());
            for (i64 i = 0; i < static_cast<i64>(ell); ++i)
                for (i64 j = 0; j < static_cast<i64>(ell); ++j) b.at(i, j) = m(i, j) + (i == 0 && j == 0 ? 1 : 0);
            detail::absorb(rec, check_extended_invariants(b));
        }
        if (has(ScanCheck::squares) && small_matrix) {
            detail::absorb(rec, check_square_counts(ctx));
            if (p <= (u64{1} << 16)) detail::absorb(rec, check_square_map(ctx));
            if (is_odd_prime(ell)) detail::absorb(rec, check_square_sum_identity(ctx));
        }
        if (has(ScanCheck::bounds) && ell >= 3) detail::absorb(rec, check_bounds(ctx));
        if (has(ScanCheck::roots) && ell >= 3 && p <= (u64{1} << 20)) {
            const auto report = check_root_independence(ctx);
            if (!report.ok()) rec.failures.push_back("roots: s(ell) depends on the primitive root");
        }
        if (has(ScanCheck::positivity) && rec.s_ell && (ell <= 5 || is_odd_prime(ell)) && *rec.s_ell == 0) {
            rec.failures.push_back("positivity: s(ell) = 0 for ell = " + std::to_string(ell));
        }
        if (has(ScanCheck::construct) || has(ScanCheck::exhaustive)) {
            const auto code = construct(ctx, ConstructOptions{search_limit});
            rec.constructed_size = code.size();
            rec.verified = verify(code).ok();
            if (code.size() < code.meta.m_e) rec.failures.push_back("construct: size below m_e");
            if (rec.known_optimal && *rec.known_optimal != code.size()) {
                rec.failures.push_back("construct: size " + std::to_string(code.size()) + " differs from known optimum " +
                                       std::to_string(*rec.known_optimal));
            }
            if (has(ScanCheck::exhaustive) && p <= 40) {
                const auto ex = oracle::exhaustive_max_cac(p);
                if (ex.max_size != code.size()) {
                    rec.failures.push_back("exhaustive: maximum " + std::to_string(ex.max_size) + " vs constructed " +
                                           std::to_string(code.size()));
                }
            }
        }
        if (has(ScanCheck::oracle) && p <= 200) detail::absorb(rec, detail::check_against_definition(ctx));
        if (has(ScanCheck::gauss) && ell == 3) {
            const auto g = oracle::gauss_ell3(p);
            if (!g.ok()) rec.failures.push_back("gauss: closed forms disagree with the cyclotomic matrix");
        }
    } catch (const std::exception& e) {
        rec.failures.push_back(std::string("exception: ") + e.what());
    }
    return rec;
}

inline json to_json(const ScanRecord& r) {
    auto opt = [](const std::optional<u64>& v) { return v ? json_uint(*v) : json(nullptr); };
    return {{"p", json_uint(r.p)},
            {"o_p_2", json_uint(r.order_of_2)},
            {"L_order", json_uint(r.subgroup_order)},
            {"ell", json_uint(r.ell)},
            {"O_p", json_uint(r.big_o)},
            {"s_ell", opt(r.s_ell)},
            {"known_optimal", opt(r.known_optimal)},
            {"constructed", opt(r.constructed_size)},
            {"verified", r.verified},
            {"failures", r.failures}};
}

inline ScanRecord scan_record_from_json(const json& j) {
    ScanRecord r;
    auto opt = [&](const char* key) -> std::optional<u64> {
        if (!j.contains(key) || j[key].is_null()) return std::nullopt;
        return read_uint(j[key], key);
    };
    r.p = read_uint(j.at("p"), "p");
    r.order_of_2 = read_uint(j.at("o_p_2"), "o_p_2");
    r.subgroup_order = read_uint(j.at("L_order"), "L_order");
    r.ell = read_uint(j.at("ell"), "ell");
    r.big_o = read_uint(j.at("O_p"), "O_p");
    r.s_ell = opt("s_ell");
    r.known_optimal = opt("known_optimal");
    r.constructed_size = opt("constructed");
    r.verified = j.at("verified").get<bool>();
    r.failures = j.at("failures").get<std::vector<std::string>>();
    return r;
}

inline json checks_json(const std::set<ScanCheck>& checks) {
    json a = json::array();
    for (const auto c : checks) a.push_back(to_string(c));
    return a;
}

inline json to_json(const ScanReport& report, const std::set<ScanCheck>& checks) {
    json records = json::array();
    for (const auto& r : report.records) records.push_back(to_json(r));
    u64 failed = 0;
    for (const auto& r : report.records) failed += r.ok() ? 0 : 1;
    return {{"from", json_uint(report.from)},
            {"to", json_uint(report.to)},
            {"checks", checks_json(checks)},
            {"primes", json_uint(report.records.size())},
            {"failed", json_uint(failed)},
            {"ok", report.ok()},
            {"records", std::move(records)}};
}

namespace detail {

inline void write_checkpoint(const std::filesystem::path& path, const ScanOptions& opt, const ScanReport& report) {
    json j = to_json(report, opt.checks);
    j["format"] = "cac-scan-checkpoint-v1";
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write checkpoint " + tmp);
        out << dump(j);
    }
    std::filesystem::rename(tmp, path);
}

inline std::vector<ScanRecord> read_checkpoint(const std::filesystem::path& path, const ScanOptions& opt) {
    std::ifstream in(path);
    if (!in) return {};
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("checkpoint: ") + e.what());
    }
    if (!j.contains("format") || j["format"] != "cac-scan-checkpoint-v1") throw FormatError("checkpoint: wrong format");
    if (read_uint(j.at("from"), "from") != opt.from || read_uint(j.at("to"), "to") != opt.to ||
        j.at("checks") != checks_json(opt.checks)) {
        throw FormatError("checkpoint: range or checks differ from the current scan");
    }
    std::vector<ScanRecord> records;
    for (const auto& r : j.at("records")) records.push_back(scan_record_from_json(r));
    return records;
}

}  // namespace detail

/// Scans the primes p in [from, to] with p >= 5. Primes are processed in
/// batches of `checkpoint_every`; each batch is spread over `threads`
/// workers and the checkpoint (if any) is rewritten after every batch.
/// Records come out ascending by p regardless of completion order.
inline ScanReport run_scan(const ScanOptions& opt, const std::function<void(const ScanRecord&)>& on_record = {}) {
    ScanReport report{opt.from, opt.to, {}};
    if (opt.checkpoint) report.records = detail::read_checkpoint(*opt.checkpoint, opt);
    const u64 resume_after = report.records.empty() ? 0 : report.records.back().p;

    std::vector<u64> primes;
    for (u64 p = std::max<u64>(opt.from, 5); p <= opt.to; ++p) {
        if (p > resume_after && is_prime(p)) primes.push_back(p);
        if (p == ~u64{0}) break;
    }

    const std::size_t batch = std::max<u64>(opt.checkpoint_every, 1);
    for (std::size_t start = 0; start < primes.size(); start += batch) {
        const std::size_t end = std::min(primes.size(), start + batch);
        std::vector<ScanRecord> out(end - start);
        std::atomic<std::size_t> next{start};
        auto worker = [&] {
            for (std::size_t k; (k = next.fetch_add(1)) < end;) out[k - start] = scan_prime(primes[k], opt.checks, opt.search_limit);
        };
        const unsigned n = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(end - start)));
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
        worker();
        for (auto& t : pool) t.join();
        for (auto& r : out) {
            if (on_record) on_record(r);
            report.records.push_back(std::move(r));
        }
        if (opt.checkpoint) detail::write_checkpoint(*opt.checkpoint, opt, report);
    }
    return report;
}

}  // namespace cac
