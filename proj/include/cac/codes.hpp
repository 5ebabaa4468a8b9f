#pragma once

/**
 * @file codes.hpp
 * @brief Weight-3 conflict-avoiding codes of prime length: data model,
 *        verification, size formulas and the optimal construction.
 *
 * A code is a family of 3-subsets of Z_p whose difference sets are pairwise
 * disjoint. Because every difference set is closed under negation, the
 * natural bookkeeping unit is the negation class {d, p - d}, written by its
 * canonical representative min(d, p - d).
 *
 * Construction outline for O(p) = ell >= 3:
 *   1. find a generator coset t L with some 1 + b = c, b in tL, c in t^2 L;
 *   2. scale the relation by t^(3j) to get floor(ell/3) triples a + b = c in
 *      pairwise disjoint coset triples; each gives the codeword {0, a, c};
 *   3. in every coset, arrange the negation classes along the doubling cycle
 *      x -> 2x and take a maximum matching of consecutive classes that avoids
 *      the class used by a triple; each matched pair (x, 2x) is {0, x, 2x}.
 * For O(p) < 3 step 3 alone (with nothing forbidden) is already optimal.
 */

#include <cac/cyclotomic.hpp>
#include <cac/modarith.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cac {

/// min(x, n - x): representative of the negation class of x != 0.
constexpr Residue canonical_class(Residue x, u64 n) noexcept {
    x %= n;
    return std::min(x, n - x);
}

/// Three distinct residues modulo n, stored in ascending order.
class Codeword {
public:
    Codeword(u64 n, Residue a, Residue b, Residue c) : n_(n), points_{a, b, c} {
        if (n < 3) throw std::invalid_argument("codeword length must be at least 3");
        for (const Residue x : points_) {
            if (x >= n) throw std::invalid_argument("codeword entry " + std::to_string(x) + " not below " + std::to_string(n));
        }
        std::sort(points_.begin(), points_.end());
        if (points_[0] == points_[1] || points_[1] == points_[2]) {
            throw std::invalid_argument("codeword entries must be distinct");
        }
    }

    [[nodiscard]] u64 length() const noexcept { return n_; }
    [[nodiscard]] const std::array<Residue, 3>& points() const noexcept { return points_; }

    [[nodiscard]] Codeword translated(Residue t) const {
        return {n_, (points_[0] + t) % n_, (points_[1] + t) % n_, (points_[2] + t) % n_};
    }

    friend auto operator<=>(const Codeword&, const Codeword&) = default;

private:
    u64 n_;
    std::array<Residue, 3> points_;
};

/// Δ(x): the distinct nonzero differences x_i - x_j, ascending. Size 4 or 6
/// for odd prime length.
inline std::vector<Residue> difference_set(const Codeword& x) {
    const u64 n = x.length();
    const auto& v = x.points();
    std::vector<Residue> d;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) d.push_back(sub_mod(v[i], v[j], n));
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

/// Negation classes met by Δ(x), ascending.
inline std::vector<Residue> difference_classes(const Codeword& x) {
    std::vector<Residue> c;
    for (const Residue d : difference_set(x)) c.push_back(canonical_class(d, x.length()));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

/// True iff x is a translate of {0, α, 2α}.
inline bool is_equi(const Codeword& x) { return difference_set(x).size() == 4; }

struct CodeMeta {
    u64 equi = 0;
    u64 nonequi = 0;
    u64 m_e = 0;
    u64 upper_bound = 0;
    bool optimal = false;
    Residue primitive_root = 0;
    u64 order_of_2 = 0;
    u64 ell = 0;
    u64 big_o = 0;
    std::optional<CosetIndex> generator_coset;
};

struct Code {
    u64 p = 0;
    unsigned weight = 3;
    std::vector<Codeword> codewords;
    CodeMeta meta;

    [[nodiscard]] std::size_t size() const noexcept { return codewords.size(); }
};

struct Conflict {
    std::size_t first = 0;   // index of the earlier codeword
    std::size_t second = 0;  // index of the later codeword
    Residue difference = 0;
};

struct Verification {
    std::optional<Conflict> conflict;
    [[nodiscard]] bool ok() const noexcept { return !conflict.has_value(); }
};

/// Checks pairwise disjointness of difference sets. Codewords are scanned in
/// order and each difference in ascending order; the first collision found
/// is reported. Throws std::invalid_argument for malformed input.
inline Verification verify(const Code& code) {
    if (code.weight != 3) throw std::invalid_argument("only weight 3 is supported");
    if (code.p < 3) throw std::invalid_argument("code length must be at least 3");
    constexpr std::size_t kFree = static_cast<std::size_t>(-1);
    std::vector<std::size_t> owner(code.p, kFree);
    for (std::size_t k = 0; k < code.codewords.size(); ++k) {
        const Codeword& x = code.codewords[k];
        if (x.length() != code.p) {
            throw std::invalid_argument("codeword " + std::to_string(k) + " has length " + std::to_string(x.length()) +
                                        ", expected " + std::to_string(code.p));
        }
        const auto diffs = difference_set(x);
        for (const Residue d : diffs) {
            if (owner[d] != kFree) return {Conflict{owner[d], k, d}};
        }
        for (const Residue d : diffs) owner[d] = k;
    }
    return {};
}

// ---------------------------------------------------------------------------
// Size formulas
// ---------------------------------------------------------------------------

/// Largest equi-difference-only code: (p - 1 - 2 O(p)) / 4.
inline u64 m_e(const GroupContext& ctx) { return (ctx.p() - 1 - 2 * ctx.big_o()) / 4; }

/// m_e + floor(O(p)/3).
inline u64 upper_bound(const GroupContext& ctx) { return m_e(ctx) + ctx.big_o() / 3; }

inline u64 m_e(u64 p) { return m_e(build_context(p)); }
inline u64 upper_bound(u64 p) { return upper_bound(build_context(p)); }

struct KnownOptimum {
    u64 size = 0;
    std::string rationale;
};

/// The optimal size when it is provably known: O(p) < 3 (equi-only meets the
/// bound), 4 ∤ o_p(2) with ell in {3, 4, 5}, or 4 ∤ o_p(2) with ell an odd
/// prime. Empty otherwise.
inline std::optional<KnownOptimum> known_optimal_size(const GroupContext& ctx) {
    const u64 p = ctx.p();
    const u64 ell = ctx.ell();
    if (ctx.big_o() < 3) return KnownOptimum{m_e(ctx), "O(p) < 3: equi-difference codewords alone meet the upper bound"};
    if (ctx.order_of_2() % 4 == 0) return std::nullopt;
    if (ell == 3 || ell == 4 || ell == 5) {
        return KnownOptimum{(p - 1 - 2 * ell) / 4 + 1, "4 does not divide o_p(2) and ell in {3,4,5}"};
    }
    if (is_odd_prime(ell)) {
        return KnownOptimum{(p - 1 - 2 * ell) / 4 + ell / 3, "4 does not divide o_p(2) and ell is an odd prime"};
    }
    return std::nullopt;
}

inline std::optional<KnownOptimum> known_optimal_size(u64 p) { return known_optimal_size(build_context(p)); }

enum class PrimePowerError { wieferich, order_divisible_by_four, ell_not_odd_prime, zero_exponent, overflow };

class PrimePowerPrecondition : public std::domain_error {
public:
    PrimePowerPrecondition(PrimePowerError reason, const std::string& what)
        : std::domain_error(what), reason_(reason) {}
    [[nodiscard]] PrimePowerError reason() const noexcept { return reason_; }

private:
    PrimePowerError reason_;
};

/// Optimal size for length p^k: (p^k - 1 - 2k ell)/4 + k floor(ell/3), valid
/// for non-Wieferich p with 4 ∤ o_p(2) and ell an odd prime.
inline u64 prime_power_size(u64 p, u64 k) {
    const auto ctx = build_context(p);
    if (k == 0) throw PrimePowerPrecondition(PrimePowerError::zero_exponent, "exponent k must be at least 1");
    if (is_wieferich(p)) throw PrimePowerPrecondition(PrimePowerError::wieferich, std::to_string(p) + " is a Wieferich prime");
    if (ctx.order_of_2() % 4 == 0) {
        throw PrimePowerPrecondition(PrimePowerError::order_divisible_by_four, "4 divides o_p(2) for p = " + std::to_string(p));
    }
    if (!is_odd_prime(ctx.ell())) {
        throw PrimePowerPrecondition(PrimePowerError::ell_not_odd_prime,
                                     "ell = " + std::to_string(ctx.ell()) + " is not an odd prime");
    }
    u128 power = 1;
    for (u64 e = 0; e < k; ++e) {
        power *= p;
        if (power > static_cast<u128>(~u64{0})) {
            throw PrimePowerPrecondition(PrimePowerError::overflow, "p^k does not fit in 64 bits");
        }
    }
    const u128 numerator = power - 1 - static_cast<u128>(2) * k * ctx.ell();
    if (numerator % 4 != 0) throw std::logic_error("prime_power_size: numerator not divisible by 4");
    return static_cast<u64>(numerator / 4 + static_cast<u128>(k) * (ctx.ell() / 3));
}

// ---------------------------------------------------------------------------
// Doubling cycles and equi-difference packing
// ---------------------------------------------------------------------------

/// Negation classes of one coset in multiply-by-2 order, starting from the
/// smallest representative. Length |L|/2.
struct DoublingCycle {
    u64 p = 0;
    CosetIndex coset = 0;
    std::vector<Residue> classes;
};

inline DoublingCycle doubling_cycle(const GroupContext& ctx, CosetIndex i) {
    if (i >= ctx.ell()) throw std::out_of_range("doubling_cycle: index out of range");
    const u64 p = ctx.p();
    Residue start = p;
    ctx.for_each_in_coset(i, [&](Residue x) { start = std::min(start, canonical_class(x, p)); });
    DoublingCycle cycle{p, i, {}};
    const u64 n = ctx.subgroup_order() / 2;
    cycle.classes.reserve(n);
    Residue cur = start;
    for (u64 k = 0; k < n; ++k) {
        cycle.classes.push_back(cur);
        cur = canonical_class(add_mod(cur, cur, p), p);
    }
    if (cur != start) throw std::logic_error("doubling_cycle: cycle does not close");
    return cycle;
}

/// Maximum matching of consecutive classes on the cycle, avoiding the
/// forbidden class if given. A matched pair (x, 2x) becomes {0, x, 2x}.
/// With a forbidden class the remaining path is matched from its successor;
/// otherwise matching starts at the first class, so an odd cycle leaves the
/// last class unused.
inline std::vector<Codeword> equi_pack(const DoublingCycle& cycle, std::optional<Residue> forbidden = std::nullopt) {
    const u64 p = cycle.p;
    const std::size_t n = cycle.classes.size();
    std::size_t start = 0;
    std::size_t usable = n;
    if (forbidden) {
        const Residue f = canonical_class(*forbidden, p);
        const auto it = std::find(cycle.classes.begin(), cycle.classes.end(), f);
        if (it == cycle.classes.end()) {
            throw std::invalid_argument("equi_pack: forbidden class " + std::to_string(f) + " is not on the cycle");
        }
        start = static_cast<std::size_t>(it - cycle.classes.begin()) + 1;
        usable = n - 1;
    }
    std::vector<Codeword> out;
    for (std::size_t t = 0; 2 * t + 1 < usable; ++t) {
        const Residue alpha = cycle.classes[(start + 2 * t) % n];
        out.emplace_back(p, 0, alpha, add_mod(alpha, alpha, p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Nonequi-difference triples
// ---------------------------------------------------------------------------

/// a + b = c in Z_p with a, b, c in three distinct cosets.
struct Triple {
    Residue a = 0, b = 0, c = 0;
    CosetIndex coset_a = 0, coset_b = 0, coset_c = 0;

    friend bool operator==(const Triple&, const Triple&) = default;
};

inline Triple make_triple(const GroupContext& ctx, Residue a, Residue b) {
    const Residue c = add_mod(a, b, ctx.p());
    return Triple{a, b, c, ctx.coset_index(a), ctx.coset_index(b), ctx.coset_index(c)};
}

struct GeneratorSolution {
    CosetIndex generator = 0;  // i with t L = g^i L
    Residue t = 0;
    Residue b = 0;  // 1 + b = c with b in tL, c in t^2 L
    Residue c = 0;
    std::vector<Triple> triples;
};

/// Scans generator indices upward for a witness 1 + b = c and spreads it over
/// floor(ell/3) disjoint coset triples (t^3j, t^3j b, t^3j c). Empty iff
/// A(i, 2i) = 0 for every generator index.
inline std::optional<GeneratorSolution> find_generator_triples(const GroupContext& ctx) {
    if (ctx.big_o() != ctx.ell() || ctx.ell() < 3) {
        throw std::invalid_argument("generator triples need O(p) = ell >= 3");
    }
    const u64 p = ctx.p();
    for (const CosetIndex i : generator_indices(ctx.ell())) {
        const auto witness = find_witness(ctx, i);
        if (!witness) continue;
        GeneratorSolution sol{i, ctx.coset_representative(i), witness->first, witness->second, {}};
        const Residue t3 = mod_pow(sol.t, 3, p);
        Residue scale = 1;
        for (u64 j = 0; j < ctx.ell() / 3; ++j) {
            sol.triples.push_back(make_triple(ctx, scale, mul_mod(scale, sol.b, p)));
            scale = mul_mod(scale, t3, p);
        }
        return sol;
    }
    return std::nullopt;
}

struct TripleSearch {
    enum class Status {
        complete,       // floor(ell/3) triples found
        exhausted,      // search space exhausted; triples holds the best found
        limit_reached,  // node budget spent before a decision
    };
    Status status = Status::exhausted;
    std::vector<Triple> triples;
    u64 expansions = 0;
};

/// Backtracking search for floor(ell/3) coset-disjoint triples, used when no
/// generator coset has a witness. A coset triple {X, Y, Z} admits a + b = c
/// iff A(Y - X, Z - X) > 0 (scale by a^-1 and use -1 in L), so feasibility is
/// a cyclotomic lookup memoized by index differences.
inline TripleSearch find_triples_general(const GroupContext& ctx, u64 limit) {
    if (ctx.big_o() != ctx.ell() || ctx.ell() < 3) {
        throw std::invalid_argument("triple search needs O(p) = ell >= 3");
    }
    const u64 ell = ctx.ell();
    detail::guard_matrix_order(ell);
    const u64 target = ell / 3;

    std::vector<signed char> feasible(ell * ell, -1);
    auto is_feasible = [&](CosetIndex x, CosetIndex y, CosetIndex z) {
        const u64 d1 = (y + ell - x) % ell, d2 = (z + ell - x) % ell;
        auto& f = feasible[d1 * ell + d2];
        if (f < 0) f = cyclotomic_number(ctx, static_cast<i64>(d1), static_cast<i64>(d2)) > 0 ? 1 : 0;
        return f == 1;
    };

    TripleSearch result;
    std::vector<std::array<CosetIndex, 3>> chosen, best;
    std::vector<bool> used(ell, false);
    u64 skips_left = ell - 3 * target;
    bool aborted = false;

    auto dfs = [&](auto&& self) -> bool {
        if (++result.expansions > limit) {
            aborted = true;
            return false;
        }
        if (chosen.size() > best.size()) best = chosen;
        if (chosen.size() == target) return true;
        CosetIndex x = 0;
        while (x < ell && used[x]) ++x;
        if (x == ell) return false;
        used[x] = true;
        for (CosetIndex y = x + 1; y < ell && !aborted; ++y) {
            if (used[y]) continue;
            used[y] = true;
            for (CosetIndex z = y + 1; z < ell && !aborted; ++z) {
                if (used[z] || !is_feasible(x, y, z)) continue;
                used[z] = true;
                chosen.push_back({x, y, z});
                if (self(self)) return true;
                chosen.pop_back();
                used[z] = false;
            }
            used[y] = false;
        }
        if (!aborted && skips_left > 0) {
            --skips_left;
            if (self(self)) return true;
            ++skips_left;
        }
        used[x] = false;
        return false;
    };

    const bool found = dfs(dfs);
    result.status = found ? TripleSearch::Status::complete
                          : (aborted ? TripleSearch::Status::limit_reached : TripleSearch::Status::exhausted);

    const u64 p = ctx.p();
    for (const auto& [x, y, z] : found ? chosen : best) {
        const auto pair = find_shifted_pair(ctx, static_cast<i64>(y + ell - x), static_cast<i64>(z + ell - x));
        if (!pair) throw std::logic_error("triple search: feasible coset triple without a witness");
        const Residue a = ctx.coset_representative(x);
        result.triples.push_back(make_triple(ctx, a, mul_mod(a, pair->first, p)));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

class SearchLimitExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConstructOptions {
    u64 search_limit = 1'000'000;
};

/// Builds a verified CAC of length p from a prebuilt context.
inline Code construct(const GroupContext& ctx, const ConstructOptions& options = {}) {
    const u64 p = ctx.p();
    const u64 ell = ctx.ell();
    Code code;
    code.p = p;
    code.meta.m_e = m_e(ctx);
    code.meta.upper_bound = upper_bound(ctx);
    code.meta.primitive_root = ctx.primitive_root();
    code.meta.order_of_2 = ctx.order_of_2();
    code.meta.ell = ell;
    code.meta.big_o = ctx.big_o();

    std::vector<Triple> triples;
    if (ctx.big_o() >= 3) {
        if (auto sol = find_generator_triples(ctx)) {
            code.meta.generator_coset = sol->generator;
            triples = std::move(sol->triples);
        } else {
            auto search = find_triples_general(ctx, options.search_limit);
            if (search.status == TripleSearch::Status::limit_reached) {
                throw SearchLimitExceeded("triple search for p = " + std::to_string(p) + " exceeded " +
                                          std::to_string(options.search_limit) + " node expansions");
            }
            triples = std::move(search.triples);
        }
    }

    std::vector<std::optional<Residue>> forbidden(ell);
    for (const Triple& t : triples) {
        code.codewords.emplace_back(p, 0, t.a, t.c);
        forbidden[t.coset_a] = canonical_class(t.a, p);
        forbidden[t.coset_b] = canonical_class(t.b, p);
        forbidden[t.coset_c] = canonical_class(t.c, p);
    }
    code.meta.nonequi = triples.size();
    for (CosetIndex i = 0; i < ell; ++i) {
        auto packed = equi_pack(doubling_cycle(ctx, i), forbidden[i]);
        code.meta.equi += packed.size();
        code.codewords.insert(code.codewords.end(), packed.begin(), packed.end());
    }
    std::sort(code.codewords.begin(), code.codewords.end());
    code.meta.optimal = code.size() == code.meta.upper_bound;

    if (const auto v = verify(code); !v.ok()) {
        throw std::logic_error("construct: produced a conflicting code for p = " + std::to_string(p));
    }
    return code;
}

/// Builds a verified CAC of length p. Throws std::invalid_argument for p < 5
/// or composite p and SearchLimitExceeded when the fallback search runs out.
inline Code construct(u64 p, const ConstructOptions& options = {}) { return construct(build_context(p), options); }

}  // namespace cac
