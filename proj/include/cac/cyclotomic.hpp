#pragma once

/**
 * @file cyclotomic.hpp
 * @brief Cyclotomic numbers of order ell with respect to the cosets of L = <-1, 2>.
 *
 * For a primitive root g, A(i, j) = |(1 + g^i L) ∩ g^j L|. Indices are taken
 * modulo ell everywhere, so A(2, 4) and A(2, 1) are the same entry when
 * ell = 3.
 *
 * Single entries walk one coset (|L| classifications); full matrices either
 * sweep all of Z_p with a dense label table or, for large p, walk every coset.
 */

#include <cac/modarith.hpp>
#include <cac/report.hpp>

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cac {

/// Largest ell for which a full ell-by-ell table is materialized.
inline constexpr u64 kMaxMatrixOrder = 4096;

/// Square table indexed modulo its order.
class CosetMatrix {
public:
    CosetMatrix() = default;
    CosetMatrix(u64 p, Residue root, u64 ell) : p_(p), root_(root), ell_(ell), entries_(ell * ell, 0) {}

    [[nodiscard]] u64 p() const noexcept { return p_; }
    [[nodiscard]] Residue root() const noexcept { return root_; }
    [[nodiscard]] u64 ell() const noexcept { return ell_; }
    [[nodiscard]] u64 subgroup_order() const noexcept { return (p_ - 1) / ell_; }

    [[nodiscard]] u64 operator()(i64 i, i64 j) const { return entries_[index(i, j)]; }
    u64& at(i64 i, i64 j) { return entries_[index(i, j)]; }

    [[nodiscard]] std::vector<u64> row(i64 i) const {
        const auto r = reduce_index(i, ell_);
        return {entries_.begin() + static_cast<std::ptrdiff_t>(r * ell_),
                entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * ell_)};
    }

    [[nodiscard]] std::vector<std::vector<u64>> rows() const {
        std::vector<std::vector<u64>> out;
        out.reserve(ell_);
        for (u64 i = 0; i < ell_; ++i) out.push_back(row(static_cast<i64>(i)));
        return out;
    }

    friend bool operator==(const CosetMatrix&, const CosetMatrix&) = default;

private:
    [[nodiscard]] std::size_t index(i64 i, i64 j) const {
        return static_cast<std::size_t>(reduce_index(i, ell_) * ell_ + reduce_index(j, ell_));
    }

    u64 p_ = 0;
    Residue root_ = 0;
    u64 ell_ = 0;
    std::vector<u64> entries_;
};

/// Entries A(i, j).
struct CyclotomicMatrix : CosetMatrix {
    using CosetMatrix::CosetMatrix;
};

/// b_{0,0} = A(0,0) + 1 and b_{i,j} = A(i,j) elsewhere.
struct ExtendedMatrix : CosetMatrix {
    using CosetMatrix::CosetMatrix;
};

namespace detail {

inline std::string entry_name(const char* sym, i64 i, i64 j) {
    return std::string(sym) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

inline void guard_matrix_order(u64 ell) {
    if (ell > kMaxMatrixOrder) {
        throw std::length_error("cyclotomic matrix of order " + std::to_string(ell) + " exceeds the table limit");
    }
}

}  // namespace detail

/// A(i, j) relative to the primitive root g, by walking g^i L and classifying
/// each 1 + x (the element x = -1 is skipped since 1 + x = 0).
inline u64 cyclotomic_number(const GroupContext& ctx, Residue g, i64 i, i64 j) {
    const RootedClassifier label(ctx, g);
    const u64 p = ctx.p();
    const CosetIndex target = reduce_index(j, ctx.ell());
    u64 count = 0;
    label.for_each_in_coset(reduce_index(i, ctx.ell()), [&](Residue x) {
        const Residue y = add_mod(x, 1, p);
        if (y != 0 && label(y) == target) ++count;
    });
    return count;
}

inline u64 cyclotomic_number(const GroupContext& ctx, i64 i, i64 j) {
    return cyclotomic_number(ctx, ctx.primitive_root(), i, j);
}

/// Full table of A(i, j). For p within the dense-table limit this is one
/// sweep u -> (label(u), label(1 + u)) over Z_p^x \ {-1}; beyond it every
/// coset is walked, which touches the same p - 2 elements.
inline CyclotomicMatrix cyclotomic_matrix(const GroupContext& ctx, Residue g) {
    detail::guard_matrix_order(ctx.ell());
    const u64 p = ctx.p();
    const RootedClassifier label(ctx, g);
    CyclotomicMatrix m(p, label.root(), ctx.ell());
    if (p <= DenseCosetTable::kMaxModulus) {
        const DenseCosetTable table(p, ctx.ell(), label.root());
        for (Residue u = 1; u + 1 < p; ++u) {
            ++m.at(static_cast<i64>(table(u)), static_cast<i64>(table(u + 1)));
        }
        return m;
    }
    for (CosetIndex i = 0; i < ctx.ell(); ++i) {
        label.for_each_in_coset(i, [&](Residue x) {
            const Residue y = add_mod(x, 1, p);
            if (y != 0) ++m.at(static_cast<i64>(i), static_cast<i64>(label(y)));
        });
    }
    return m;
}

inline CyclotomicMatrix cyclotomic_matrix(const GroupContext& ctx) {
    return cyclotomic_matrix(ctx, ctx.primitive_root());
}

/// Symmetries A(i,j) = A(j,i) = A(-i, j-i), row sums (|L|-1 for row 0, |L|
/// otherwise) and trace |L| - 1.
inline CheckReport check_cyclotomic_symmetries(const CyclotomicMatrix& m) {
    CheckReport r{"cyclotomic symmetries", {}, 0};
    const auto ell = static_cast<i64>(m.ell());
    const u64 order = m.subgroup_order();
    u64 trace = 0;
    for (i64 i = 0; i < ell; ++i) {
        u64 row_sum = 0;
        for (i64 j = 0; j < ell; ++j) {
            r.expect_eq(m(i, j), m(j, i), detail::entry_name("A", i, j) + " vs " + detail::entry_name("A", j, i));
            r.expect_eq(m(i, j), m(-i, j - i), detail::entry_name("A", i, j) + " vs A(-i,j-i)");
            row_sum += m(i, j);
        }
        r.expect_eq(row_sum, i == 0 ? order - 1 : order, "row " + std::to_string(i) + " sum");
        trace += m(i, i);
    }
    r.expect_eq(trace, order - 1, "trace");
    return r;
}

/// Every relation the extended matrix must satisfy: the six index aliases,
/// symmetry, positivity of b_{0,0}, the reversed diagonal, the shifted rows
/// and uniform row, column and diagonal sums equal to |L|.
inline CheckReport check_extended_invariants(const ExtendedMatrix& b) {
    CheckReport r{"extended matrix", {}, 0};
    const auto ell = static_cast<i64>(b.ell());
    const u64 order = b.subgroup_order();

    for (i64 i = 0; i < ell; ++i) {
        for (i64 j = 0; j < ell; ++j) {
            const u64 v = b(i, j);
            const auto name = detail::entry_name("b", i, j);
            r.expect_eq(v, b(-i, j - i), name + " = b(-i,j-i)");
            r.expect_eq(v, b(j - i, -i), name + " = b(j-i,-i)");
            r.expect_eq(v, b(i - j, -j), name + " = b(i-j,-j)");
            r.expect_eq(v, b(-j, i - j), name + " = b(-j,i-j)");
            r.expect_eq(v, b(j, i), name + " = b(j,i)");
        }
    }
    r.expect(b(0, 0) > 0, "b(0,0) must be positive");
    for (i64 i = 1; i < ell; ++i) {
        r.expect_eq(b(i, i), b(0, ell - i), "diagonal entry " + std::to_string(i) + " vs reversed row 0");
        for (i64 j = 0; j < ell; ++j) {
            r.expect_eq(b(ell - i, j), b(i, j + i),
                        "row " + std::to_string(ell - i) + " vs row " + std::to_string(i) + " shifted, column " +
                            std::to_string(j));
        }
    }
    u64 trace = 0;
    for (i64 i = 0; i < ell; ++i) {
        u64 row_sum = 0, col_sum = 0;
        for (i64 j = 0; j < ell; ++j) {
            row_sum += b(i, j);
            col_sum += b(j, i);
        }
        r.expect_eq(row_sum, order, "row " + std::to_string(i) + " sum");
        r.expect_eq(col_sum, order, "column " + std::to_string(i) + " sum");
        trace += b(i, i);
    }
    r.expect_eq(trace, order, "trace");
    return r;
}

/// Adds one at the corner; throws std::logic_error naming the first failed
/// relation if the result is not a valid extended matrix.
inline ExtendedMatrix extended_matrix(const CyclotomicMatrix& m) {
    ExtendedMatrix b(m.p(), m.root(), m.ell());
    const auto ell = static_cast<i64>(m.ell());
    for (i64 i = 0; i < ell; ++i)
        for (i64 j = 0; j < ell; ++j) b.at(i, j) = m(i, j);
    ++b.at(0, 0);
    if (const auto report = check_extended_invariants(b); !report.ok()) {
        throw std::logic_error("extended matrix invariant violated: " + report.failures.front());
    }
    return b;
}

/// Residues i in [1, ell) coprime to ell; each g^i L generates Z_p^x / L.
inline std::vector<CosetIndex> generator_indices(u64 ell) {
    std::vector<CosetIndex> out;
    for (CosetIndex i = 1; i < ell; ++i)
        if (std::gcd(i, ell) == 1) out.push_back(i);
    return out;
}

/// s(ell) = sum of A(i, 2i) over generator indices i, relative to root g.
inline u64 s_ell(const GroupContext& ctx, Residue g) {
    if (ctx.ell() < 3) throw std::invalid_argument("s(ell) requires ell >= 3, got " + std::to_string(ctx.ell()));
    u64 total = 0;
    for (const CosetIndex i : generator_indices(ctx.ell())) {
        total += cyclotomic_number(ctx, g, static_cast<i64>(i), static_cast<i64>(2 * i));
    }
    return total;
}

inline u64 s_ell(const GroupContext& ctx) { return s_ell(ctx, ctx.primitive_root()); }

struct RootIndependenceReport {
    u64 value = 0;  // s(ell) under the context root
    std::vector<std::pair<Residue, u64>> per_root;
    [[nodiscard]] bool ok() const {
        return std::all_of(per_root.begin(), per_root.end(), [&](const auto& e) { return e.second == value; });
    }
};

/// Recomputes s(ell) under every primitive root. Up to the dense-table limit
/// each root gets its own power-walk labeling, so no value is derived from
/// another; above it the rooted classifier is used.
inline RootIndependenceReport check_root_independence(const GroupContext& ctx) {
    constexpr u64 kMaxModulus = u64{1} << 20;
    if (ctx.p() > kMaxModulus) throw std::length_error("root independence check: modulus too large");
    RootIndependenceReport report;
    report.value = s_ell(ctx);
    const u64 p = ctx.p();
    const u64 ell = ctx.ell();
    constexpr u64 kDenseLimit = u64{1} << 16;
    for (const Residue h : primitive_roots(ctx)) {
        u64 s = 0;
        if (p <= kDenseLimit) {
            const DenseCosetTable table(p, ell, h);
            for (Residue u = 1; u + 1 < p; ++u) {
                const CosetIndex i = table(u);
                if (std::gcd(i, ell) == 1 && table(u + 1) == (2 * i) % ell) ++s;
            }
        } else {
            s = s_ell(ctx, h);
        }
        report.per_root.emplace_back(h, s);
    }
    return report;
}

/// Smallest b in g^i L (by residue value) with 1 + b in g^j L, paired with
/// c = 1 + b. Empty exactly when A(i, j) = 0.
inline std::optional<std::pair<Residue, Residue>> find_shifted_pair(const GroupContext& ctx, i64 i, i64 j) {
    const u64 p = ctx.p();
    const CosetIndex target = reduce_index(j, ctx.ell());
    std::optional<Residue> best;
    ctx.for_each_in_coset(reduce_index(i, ctx.ell()), [&](Residue b) {
        if (best && *best < b) return;
        const Residue c = add_mod(b, 1, p);
        if (c != 0 && ctx.coset_index(c) == target) best = b;
    });
    if (!best) return std::nullopt;
    return std::pair{*best, add_mod(*best, 1, p)};
}

/// Witness (b, 1 + b) with b in g^i L and 1 + b in g^(2i) L for a generator
/// index i.
inline std::optional<std::pair<Residue, Residue>> find_witness(const GroupContext& ctx, CosetIndex i) {
    if (std::gcd(i % ctx.ell(), ctx.ell()) != 1) {
        throw std::invalid_argument("find_witness: index " + std::to_string(i) + " is not coprime to ell");
    }
    return find_shifted_pair(ctx, static_cast<i64>(i), static_cast<i64>(2 * (i % ctx.ell())));
}

}  // namespace cac
