#pragma once

/**
 * @file squares.hpp
 * @brief Squares in the shifted cosets 1 + g^k L and the sets
 *        R(i, j) = (1 + g^i L) ∩ (-1 + g^j L).
 *
 * Squaring maps the disjoint union of R(i, j) over i + j = k (mod ell) onto
 * S_k, the squares of 1 + g^k L, two-to-one away from 0. That yields
 *
 *     2|S_0| = 1 + sum_i A(i, -i),   2|S_k| = sum_i A(i, k - i)  (k != 0),
 *
 * and, when ell is an odd prime, 2|S_0| = 1 + A(0,0) + s(ell). Halves are kept
 * out of the arithmetic by comparing doubled quantities.
 */

#include <cac/cyclotomic.hpp>
#include <cac/modarith.hpp>
#include <cac/report.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace cac {

struct SquareSet {
    u64 p = 0;
    CosetIndex k = 0;
    std::vector<Residue> members;  // ascending
};

struct RSet {
    CosetIndex i = 0;
    CosetIndex j = 0;
    std::vector<Residue> members;  // ascending
};

/// Squares of 1 + g^k L, detected by the Legendre symbol.
inline SquareSet square_set(const GroupContext& ctx, CosetIndex k) {
    if (k >= ctx.ell()) throw std::out_of_range("square_set: index out of range");
    const u64 p = ctx.p();
    SquareSet out{p, k, {}};
    ctx.for_each_in_coset(k, [&](Residue x) {
        const Residue y = add_mod(x, 1, p);
        if (legendre(y, p) >= 0) out.members.push_back(y);
    });
    std::sort(out.members.begin(), out.members.end());
    return out;
}

/// |S_k| without materializing the set.
inline u64 square_count(const GroupContext& ctx, CosetIndex k) {
    const u64 p = ctx.p();
    u64 n = 0;
    ctx.for_each_in_coset(k % ctx.ell(), [&](Residue x) {
        if (legendre(add_mod(x, 1, p), p) >= 0) ++n;
    });
    return n;
}

/// r with r - 1 in g^i L and r + 1 in g^j L.
inline RSet r_set(const GroupContext& ctx, CosetIndex i, CosetIndex j) {
    if (i >= ctx.ell() || j >= ctx.ell()) throw std::out_of_range("r_set: index out of range");
    const u64 p = ctx.p();
    RSet out{i, j, {}};
    ctx.for_each_in_coset(i, [&](Residue x) {
        const Residue r = add_mod(x, 1, p);
        const Residue r_plus = add_mod(r, 1, p);
        if (r_plus != 0 && ctx.coset_index(r_plus) == j) out.members.push_back(r);
    });
    std::sort(out.members.begin(), out.members.end());
    return out;
}

/// The doubled square-count identity for every k, using an independently
/// counted |S_k| on one side and cyclotomic numbers on the other.
inline CheckReport check_square_counts(const GroupContext& ctx) {
    CheckReport r{"square counts", {}, 0};
    const auto m = cyclotomic_matrix(ctx);
    const auto ell = static_cast<i64>(ctx.ell());
    for (i64 k = 0; k < ell; ++k) {
        u64 doubled = k == 0 ? 1 : 0;
        for (i64 i = 0; i < ell; ++i) doubled += m(i, k - i);
        r.expect_eq(2 * square_count(ctx, static_cast<CosetIndex>(k)), doubled, "2|S_" + std::to_string(k) + "|");
    }
    return r;
}

/// Materializes both sides of the squaring map: the union of R(i, j) over
/// i + j = k squared must equal S_k; each |R(i, j)| must equal A(i, j); the
/// sets R(i, j) must be pairwise disjoint and contain 0 only for i = j = 0.
inline CheckReport check_square_map(const GroupContext& ctx) {
    CheckReport r{"square map", {}, 0};
    const u64 p = ctx.p();
    const u64 ell = ctx.ell();
    const auto m = cyclotomic_matrix(ctx);
    std::vector<std::set<Residue>> images(ell);
    std::set<Residue> seen;
    u64 total = 0;
    for (CosetIndex i = 0; i < ell; ++i) {
        for (CosetIndex j = 0; j < ell; ++j) {
            const auto rs = r_set(ctx, i, j);
            const auto name = "R(" + std::to_string(i) + "," + std::to_string(j) + ")";
            r.expect_eq(static_cast<u64>(rs.members.size()), m(static_cast<i64>(i), static_cast<i64>(j)),
                        "|" + name + "| vs A");
            const bool has_zero = std::binary_search(rs.members.begin(), rs.members.end(), Residue{0});
            r.expect_eq(has_zero, i == 0 && j == 0, "0 in " + name);
            for (const Residue x : rs.members) {
                seen.insert(x);
                images[(i + j) % ell].insert(mul_mod(x, x, p));
            }
            total += rs.members.size();
        }
    }
    r.expect_eq(static_cast<u64>(seen.size()), total, "R sets pairwise disjoint");
    for (CosetIndex k = 0; k < ell; ++k) {
        const auto s = square_set(ctx, k);
        const bool equal = std::equal(images[k].begin(), images[k].end(), s.members.begin(), s.members.end());
        r.expect(equal, "squares of R(i,j), i+j=" + std::to_string(k) + ", differ from S_" + std::to_string(k));
        const bool has_zero = std::binary_search(s.members.begin(), s.members.end(), Residue{0});
        r.expect_eq(has_zero, k == 0, "0 in S_" + std::to_string(k));
    }
    return r;
}

/// 2|S_0| = 1 + A(0,0) + s(ell) for ell an odd prime; each term computed on
/// its own path.
inline CheckReport check_square_sum_identity(const GroupContext& ctx) {
    if (!is_odd_prime(ctx.ell())) {
        throw std::invalid_argument("square sum identity requires ell to be an odd prime, got " +
                                    std::to_string(ctx.ell()));
    }
    CheckReport r{"square sum identity", {}, 0};
    const u64 s0 = square_count(ctx, 0);
    const u64 a00 = cyclotomic_number(ctx, 0, 0);
    const u64 s = s_ell(ctx);
    r.expect_eq(2 * s0, 1 + a00 + s, "2|S_0| vs 1 + A(0,0) + s(ell)");
    return r;
}

/// A(0,0) <= ceil((p-1)/(2 ell)) - 1, A(0,0) <= |L|/2 - 1, |S_0| >= |L|/4 + 1/2;
/// for ell an odd prime additionally the chain that forces s(ell) > 0.
inline CheckReport check_bounds(const GroupContext& ctx) {
    if (ctx.ell() < 3) throw std::invalid_argument("bounds require ell >= 3");
    CheckReport r{"bounds", {}, 0};
    const u64 p = ctx.p();
    const u64 ell = ctx.ell();
    const u64 order = ctx.subgroup_order();
    const u64 a00 = cyclotomic_number(ctx, 0, 0);
    const u64 s0 = square_count(ctx, 0);
    const u64 ceil_half = (p - 1 + 2 * ell - 1) / (2 * ell);

    r.expect(a00 + 1 <= ceil_half, "A(0,0) = " + std::to_string(a00) + " exceeds ceil((p-1)/(2 ell)) - 1");
    r.expect(2 * (a00 + 1) <= order, "A(0,0) = " + std::to_string(a00) + " exceeds |L|/2 - 1");
    r.expect(4 * s0 >= order + 2, "|S_0| = " + std::to_string(s0) + " below |L|/4 + 1/2");
    if (is_odd_prime(ell)) {
        const u64 s = s_ell(ctx);
        r.expect(2 * (1 + a00 + s) > order, "1 + A(0,0) + s(ell) not above |L|/2");
        r.expect(s > 0, "s(ell) = 0 although ell is an odd prime");
    }
    return r;
}

}  // namespace cac
