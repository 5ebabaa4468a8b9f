#pragma once

/**
 * @file oracle.hpp
 * @brief Slow reference computations that share no code path with the fast
 *        ones: literal cyclotomic counting, exhaustive maximum-CAC search and
 *        the classical closed forms for ell = 3.
 */

#include <cac/codes.hpp>
#include <cac/cyclotomic.hpp>
#include <cac/modarith.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cac::oracle {

/// Counts pairs (m, n) in [0, (p-1)/ell)^2 with 1 + g^(i + m ell) = g^(j + n ell)
/// by plain double enumeration.
inline u64 a_by_definition(u64 p, Residue g, u64 ell, i64 i, i64 j) {
    constexpr u64 kMaxModulus = 5000;
    if (p > kMaxModulus) throw std::length_error("a_by_definition: modulus above " + std::to_string(kMaxModulus));
    if (ell == 0 || (p - 1) % ell != 0) throw std::invalid_argument("a_by_definition: ell must divide p - 1");
    const u64 order = p - 1;
    const u64 count = order / ell;
    auto exponent = [&](i64 base, u64 step) {
        return (static_cast<u64>(base % static_cast<i64>(order) + static_cast<i64>(order)) + step * ell) % order;
    };
    u64 hits = 0;
    for (u64 m = 0; m < count; ++m) {
        const Residue lhs = (1 + mod_pow(g, exponent(i, m), p)) % p;
        for (u64 n = 0; n < count; ++n) {
            if (lhs == mod_pow(g, exponent(j, n), p)) ++hits;
        }
    }
    return hits;
}

struct ExhaustiveResult {
    u64 max_size = 0;
    std::vector<Codeword> witness;
    u64 candidates = 0;  // distinct difference-class patterns searched
};

/// Exact maximum weight-3 CAC of length p <= 40.
///
/// Every codeword is a translate of some {0, a, b}; only the set of negation
/// classes its differences hit matters, so candidates are bitmasks over the
/// (p-1)/2 classes. The packing is solved by memoized branching on the lowest
/// undecided class: either leave it unused or cover it with a candidate
/// whose classes are all undecided.
inline ExhaustiveResult exhaustive_max_cac(u64 p) {
    if (p > 40) throw std::invalid_argument("exhaustive_max_cac: p = " + std::to_string(p) + " is above 40");
    if (p < 5 || !is_prime(p)) throw std::invalid_argument("exhaustive_max_cac: p must be a prime >= 5");
    const unsigned classes = static_cast<unsigned>((p - 1) / 2);
    using Mask = std::uint32_t;

    std::vector<std::optional<Codeword>> first_with_mask(Mask{1} << classes);
    std::vector<Mask> masks;
    for (Residue a = 1; a < p; ++a) {
        for (Residue b = a + 1; b < p; ++b) {
            const Codeword x(p, 0, a, b);
            Mask m = 0;
            for (const Residue c : difference_classes(x)) m |= Mask{1} << (c - 1);
            if (!first_with_mask[m]) {
                first_with_mask[m] = x;
                masks.push_back(m);
            }
        }
    }
    std::sort(masks.begin(), masks.end());

    const Mask full = (Mask{1} << classes) - 1;
    std::vector<std::int8_t> memo(std::size_t{1} << classes, -1);
    auto best = [&](auto&& self, Mask decided) -> int {
        if (decided == full) return 0;
        auto& slot = memo[decided];
        if (slot >= 0) return slot;
        const Mask lowest = ~decided & (decided + 1);
        int value = self(self, decided | lowest);
        for (const Mask m : masks) {
            if ((m & lowest) && !(m & decided)) value = std::max(value, 1 + self(self, decided | m));
        }
        slot = static_cast<std::int8_t>(value);
        return value;
    };

    ExhaustiveResult result;
    result.candidates = masks.size();
    result.max_size = static_cast<u64>(best(best, 0));

    // Replay the optimal decisions to recover a witness.
    Mask decided = 0;
    while (decided != full) {
        const int here = best(best, decided);
        const Mask lowest = ~decided & (decided + 1);
        if (best(best, decided | lowest) == here) {
            decided |= lowest;
            continue;
        }
        for (const Mask m : masks) {
            if ((m & lowest) && !(m & decided) && 1 + best(best, decided | m) == here) {
                result.witness.push_back(*first_with_mask[m]);
                decided |= m;
                break;
            }
        }
    }
    return result;
}

/// Solution of 4p = a^2 + 27 b^2 with a = 1 (mod 3); b >= 0 since its sign
/// depends on the choice of primitive root.
struct GaussPair {
    i64 a = 0;
    u64 b = 0;
};

struct GaussReport {
    GaussPair pair;
    u64 expected_a00 = 0, actual_a00 = 0;
    u64 expected_a12 = 0, actual_a12 = 0;
    std::pair<u64, u64> expected_off = {0, 0};  // {A(0,1), A(0,2)} unordered
    std::pair<u64, u64> actual_off = {0, 0};
    [[nodiscard]] bool ok() const {
        const auto sorted = [](std::pair<u64, u64> v) { return v.first <= v.second ? v : std::pair{v.second, v.first}; };
        return expected_a00 == actual_a00 && expected_a12 == actual_a12 && sorted(expected_off) == sorted(actual_off);
    }
};

inline std::optional<GaussPair> solve_gauss_pair(u64 p) {
    const u64 four_p = 4 * p;
    for (u64 b = 0; 27 * b * b <= four_p; ++b) {
        const u64 rest = four_p - 27 * b * b;
        auto x = static_cast<u64>(std::sqrt(static_cast<double>(rest)));
        while (x * x > rest) --x;
        while ((x + 1) * (x + 1) <= rest) ++x;
        if (x * x != rest) continue;
        const auto xs = static_cast<i64>(x);
        for (const i64 a : {xs, -xs}) {
            if (((a % 3) + 3) % 3 == 1) return GaussPair{a, b};
        }
    }
    return std::nullopt;
}

/// Checks the classical ell = 3 formulas
///   A(0,0) = (p - 8 + a)/9,  A(1,2) = (p + 1 + a)/9,
///   {A(0,1), A(0,2)} = {(2p - 4 - a ± 9b)/18},
/// against the cyclotomic matrix of the context root.
inline GaussReport gauss_ell3(u64 p) {
    const auto ctx = build_context(p);
    if (ctx.ell() != 3) throw std::invalid_argument("gauss_ell3: ell is " + std::to_string(ctx.ell()) + ", not 3");
    const auto pair = solve_gauss_pair(p);
    if (!pair) throw std::logic_error("gauss_ell3: no solution of 4p = a^2 + 27b^2 for p = " + std::to_string(p));
    const i64 sp = static_cast<i64>(p);
    const i64 a = pair->a;
    const i64 nine_b = 9 * static_cast<i64>(pair->b);
    auto exact = [](i64 num, i64 den) {
        if (num % den != 0 || num < 0) throw std::logic_error("gauss_ell3: formula is not a nonnegative integer");
        return static_cast<u64>(num / den);
    };
    const auto m = cyclotomic_matrix(ctx);
    GaussReport report;
    report.pair = *pair;
    report.expected_a00 = exact(sp - 8 + a, 9);
    report.expected_a12 = exact(sp + 1 + a, 9);
    report.expected_off = {exact(2 * sp - 4 - a + nine_b, 18), exact(2 * sp - 4 - a - nine_b, 18)};
    report.actual_a00 = m(0, 0);
    report.actual_a12 = m(1, 2);
    report.actual_off = {m(0, 1), m(0, 2)};
    return report;
}

}  // namespace cac::oracle
