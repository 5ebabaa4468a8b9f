// Command-line front end: analyze, matrix, squares, construct, verify,
// oracle, simulate, scan.
//
// Exit codes: 0 success, 1 usage or input error, 2 mathematical failure.

#include <cac/cac.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitMath = 2;

// Mathematical failure: a verification, invariant or search outcome.
struct MathFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cac::FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw cac::FormatError("cannot write " + path);
    out << text;
}

std::pair<cac::u64, cac::u64> parse_range(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) throw std::invalid_argument("range must look like a..b");
    std::size_t used = 0;
    const auto a = std::stoull(s.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument("bad range start");
    const auto tail = s.substr(dots + 2);
    const auto b = std::stoull(tail, &used);
    if (used != tail.size()) throw std::invalid_argument("bad range end");
    if (a > b) throw std::invalid_argument("empty range");
    return {a, b};
}

std::string join(const std::vector<cac::u64>& v) {
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
    return s;
}

int cmd_analyze(cac::u64 p, bool as_json) {
    const auto ctx = cac::build_context(p);
    auto j = cac::context_json(ctx);
    if (as_json) {
        std::cout << cac::dump(j);
        return kExitOk;
    }
    std::cout << "p = " << p << "\n"
              << "o_p(2) = " << ctx.order_of_2() << ", |L| = " << ctx.subgroup_order() << ", ell = " << ctx.ell()
              << ", O(p) = " << ctx.big_o() << "\n"
              << "primitive root = " << ctx.primitive_root() << "\n"
              << "M^e(p) = " << cac::m_e(ctx) << ", upper bound = " << cac::upper_bound(ctx) << "\n";
    if (const auto known = cac::known_optimal_size(ctx)) {
        std::cout << "optimal size = " << known->size << " (" << known->rationale << ")\n";
    } else {
        std::cout << "optimal size not determined\n";
    }
    return kExitOk;
}

int cmd_matrix(cac::u64 p, cac::u64 root, bool as_json) {
    const auto ctx = cac::build_context(p);
    const auto m = cac::cyclotomic_matrix(ctx, root == 0 ? ctx.primitive_root() : root);
    if (as_json) {
        std::cout << cac::dump(cac::to_json(m));
        return kExitOk;
    }
    std::cout << "cyclotomic matrix of order " << m.ell() << " for p = " << p << ", g = " << m.root() << "\n";
    for (const auto& row : m.rows()) std::cout << join(row) << "\n";
    return kExitOk;
}

int cmd_squares(cac::u64 p, cac::u64 k, std::size_t cap, bool as_json) {
    const auto ctx = cac::build_context(p);
    const auto s = cac::square_set(ctx, k);
    if (as_json) {
        std::cout << cac::dump(cac::to_json(s, cap));
        return kExitOk;
    }
    std::cout << "|S_" << k << "| = " << s.members.size() << "\n";
    if (s.members.size() <= cap) std::cout << join(s.members) << "\n";
    return kExitOk;
}

int cmd_construct(cac::u64 p, const std::string& out, cac::u64 limit, bool as_json) {
    cac::Code code;
    try {
        code = cac::construct(p, cac::ConstructOptions{limit});
    } catch (const cac::SearchLimitExceeded& e) {
        throw MathFailure(e.what());
    }
    const auto text = cac::dump(cac::to_json(code));
    if (!out.empty()) write_output(text, out);
    if (as_json || out.empty()) {
        if (out.empty()) std::cout << text;
        else std::cout << cac::dump({{"p", p}, {"size", code.size()}, {"optimal", code.meta.optimal}, {"file", out}});
    } else {
        std::cout << "p = " << p << ": " << code.size() << " codewords (" << code.meta.nonequi << " nonequi, "
                  << code.meta.equi << " equi), upper bound " << code.meta.upper_bound
                  << (code.meta.optimal ? ", optimal" : ", not known optimal") << "\nwritten to " << out << "\n";
    }
    return kExitOk;
}

int cmd_verify(const std::string& path, bool as_json) {
    const auto code = cac::code_from_string(read_file(path));
    const auto v = cac::verify(code);
    if (as_json) {
        cac::json j{{"ok", v.ok()}, {"p", cac::json_uint(code.p)}, {"size", code.size()}};
        if (!v.ok()) j["conflict"] = cac::to_json(*v.conflict, code);
        std::cout << cac::dump(j);
    } else if (v.ok()) {
        std::cout << "ok: " << code.size() << " codewords of length " << code.p << " have disjoint difference sets\n";
    } else {
        const auto& c = *v.conflict;
        std::cout << "conflict: codewords " << c.first << " and " << c.second << " share difference " << c.difference
                  << "\n";
    }
    return v.ok() ? kExitOk : kExitMath;
}

int cmd_oracle(cac::u64 p, bool as_json) {
    const auto r = cac::oracle::exhaustive_max_cac(p);
    if (as_json) {
        std::cout << cac::dump(cac::to_json(r, p));
    } else {
        std::cout << "M(" << p << ") = " << r.max_size << "\n";
        for (const auto& x : r.witness) std::cout << "  " << join(std::vector<cac::u64>(x.points().begin(), x.points().end())) << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& path, cac::u64 active, cac::u64 trials, cac::u64 seed, bool as_json) {
    const auto code = cac::code_from_string(read_file(path));
    if (!cac::verify(code).ok()) throw MathFailure("code in " + path + " is not conflict-avoiding");
    const auto stats = cac::random_trials(code, active, trials, seed);
    if (as_json) {
        std::cout << cac::dump(cac::to_json(stats, code.p));
    } else {
        std::cout << "p = " << code.p << ", " << active << " active users, " << trials
                  << " trials, seed " << seed << ": success rate " << stats.success_rate() << "\n";
    }
    // Pairwise overlap <= 1 guarantees success for up to three users.
    if (active <= 3 && stats.user_successes != stats.user_attempts) return kExitMath;
    return kExitOk;
}

int cmd_scan(const std::string& range, const std::string& checks, unsigned threads, const std::string& checkpoint,
             cac::u64 every, cac::u64 limit, bool as_json) {
    cac::ScanOptions opt;
    std::tie(opt.from, opt.to) = parse_range(range);
    opt.checks = cac::parse_checks(checks);
    opt.threads = threads;
    opt.search_limit = limit;
    opt.checkpoint_every = every;
    if (!checkpoint.empty()) opt.checkpoint = checkpoint;
    const auto report = cac::run_scan(opt, [&](const cac::ScanRecord& r) {
        if (as_json) return;
        std::cout << "p=" << r.p << " ell=" << r.ell << " O=" << r.big_o;
        if (r.s_ell) std::cout << " s=" << *r.s_ell;
        if (r.constructed_size) std::cout << " size=" << *r.constructed_size;
        std::cout << (r.ok() ? " ok" : " FAIL") << "\n";
        for (const auto& f : r.failures) std::cout << "  " << f << "\n";
    });
    if (as_json) {
        std::cout << cac::dump(cac::to_json(report, opt.checks));
    } else {
        std::size_t failed = 0;
        for (const auto& r : report.records) failed += r.ok() ? 0 : 1;
        std::cout << report.records.size() << " primes scanned, " << failed << " failed\n";
    }
    return report.ok() ? kExitOk : kExitMath;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conflict-avoiding codes of prime length and weight 3"};
    app.require_subcommand(1);

    bool as_json = false;
    cac::u64 p = 0, k = 0, root = 0, limit = 1'000'000, seed = 1, active = 3, trials = 1000, every = 64;
    std::size_t cap = 1000;
    unsigned threads = 1;
    std::string out, file, range = "5..500", checks = "all", checkpoint;

    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", as_json, "Emit JSON"); };

    auto* analyze = app.add_subcommand("analyze", "Group structure and size bounds for a prime length");
    analyze->add_option("p", p, "Prime length")->required();
    add_json(analyze);

    auto* matrix = app.add_subcommand("matrix", "Cyclotomic matrix A(i,j)");
    matrix->add_option("p", p, "Prime length")->required();
    matrix->add_option("--root", root, "Primitive root (default: smallest)");
    add_json(matrix);

    auto* squares = app.add_subcommand("squares", "Squares in 1 + g^k L");
    squares->add_option("p", p, "Prime length")->required();
    squares->add_option("k", k, "Coset index")->required();
    squares->add_option("--max-members", cap, "Omit the member list above this size");
    add_json(squares);

    auto* construct = app.add_subcommand("construct", "Build an optimal CAC");
    construct->add_option("p", p, "Prime length")->required();
    construct->add_option("--out", out, "Output file (default: stdout)");
    construct->add_option("--limit", limit, "Node budget for the fallback triple search");
    add_json(construct);

    auto* verify = app.add_subcommand("verify", "Check a code file for conflicts");
    verify->add_option("file", file, "Code file (cac-v1 JSON)")->required();
    add_json(verify);

    auto* oracle = app.add_subcommand("oracle", "Exhaustive maximum CAC (p <= 40)");
    oracle->add_option("p", p, "Prime length")->required();
    add_json(oracle);

    auto* simulate = app.add_subcommand("simulate", "Random collision-channel trials for a code file");
    simulate->add_option("file", file, "Code file (cac-v1 JSON)")->required();
    simulate->add_option("--active", active, "Active users per trial");
    simulate->add_option("--trials", trials, "Number of trials");
    simulate->add_option("--seed", seed, "Random seed");
    add_json(simulate);

    auto* scan = app.add_subcommand("scan", "Run checks over a range of primes");
    scan->add_option("--range", range, "Prime range a..b");
    scan->add_option("--checks", checks, "Comma-separated checks or 'all'");
    scan->add_option("--threads", threads, "Worker threads");
    scan->add_option("--checkpoint", checkpoint, "Checkpoint file for resumable scans");
    scan->add_option("--every", every, "Checkpoint interval in primes");
    scan->add_option("--limit", limit, "Node budget for the fallback triple search");
    add_json(scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*analyze) return cmd_analyze(p, as_json);
        if (*matrix) return cmd_matrix(p, root, as_json);
        if (*squares) return cmd_squares(p, k, cap, as_json);
        if (*construct) return cmd_construct(p, out, limit, as_json);
        if (*verify) return cmd_verify(file, as_json);
        if (*oracle) return cmd_oracle(p, as_json);
        if (*simulate) return cmd_simulate(file, active, trials, seed, as_json);
        if (*scan) return cmd_scan(range, checks, threads, checkpoint, every, limit, as_json);
    } catch (const MathFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::logic_error& e) {
        // std::invalid_argument and std::out_of_range derive from logic_error
        // but signal bad input.
        if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::out_of_range*>(&e) ||
            dynamic_cast<const std::domain_error*>(&e) || dynamic_cast<const std::length_error*>(&e)) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitInput;
        }
        std::cerr << "invariant violated: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
