#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cac;

namespace {

using Rows = std::vector<std::vector<u64>>;

}  // namespace

TEST(CyclotomicMatrix, P31) {
    const auto ctx = build_context(31);
    const auto m = cyclotomic_matrix(ctx, 3);
    EXPECT_EQ(m.rows(), (Rows{{3, 4, 2}, {4, 2, 4}, {2, 4, 4}}));
    EXPECT_EQ(m.ell(), 3u);
    EXPECT_EQ(m.root(), 3u);
}

TEST(CyclotomicMatrix, OrderOne) {
    // 7: o(2) = 3, |L| = 6 = p - 1.
    const auto ctx = build_context(7);
    EXPECT_EQ(cyclotomic_matrix(ctx).rows(), (Rows{{5}}));
    EXPECT_EQ(extended_matrix(cyclotomic_matrix(ctx)).rows(), (Rows{{6}}));
}

TEST(CyclotomicMatrix, IndicesReduceModEll) {
    const auto m = cyclotomic_matrix(build_context(31));
    EXPECT_EQ(m(2, 4), m(2, 1));
    EXPECT_EQ(m(-1, -2), m(2, 1));
    EXPECT_EQ(m.row(-1), m.row(2));
}

TEST(CyclotomicNumber, Examples) {
    const auto c31 = build_context(31);
    EXPECT_EQ(cyclotomic_number(c31, 3, 0, 0), 3u);
    EXPECT_EQ(cyclotomic_number(c31, 1, 2), 4u);

    const auto c331 = build_context(331);
    EXPECT_EQ(c331.primitive_root(), 3u);
    EXPECT_EQ(cyclotomic_number(c331, 3, 0, 0), 5u);
    EXPECT_EQ(cyclotomic_number(c331, 3, 1, 2), 3u);

    EXPECT_THROW(cyclotomic_number(c31, 2, 0, 0), std::invalid_argument);  // 2 has order 5
}

TEST(CyclotomicNumber, LargePrimeSingleEntry) {
    const auto ctx = build_context(1229241823);
    EXPECT_EQ(cyclotomic_number(ctx, 3, 1, 2), 4u);
}

TEST(CyclotomicNumber, SingleEntriesMatchMatrix) {
    std::mt19937_64 rng(3);
    for (const u64 p : cac_test::primes_between(5, 500)) {
        const auto ctx = build_context(p);
        const auto m = cyclotomic_matrix(ctx);
        std::uniform_int_distribution<i64> idx(-static_cast<i64>(ctx.ell()), 2 * static_cast<i64>(ctx.ell()));
        for (int t = 0; t < 100; ++t) {
            const i64 i = idx(rng), j = idx(rng);
            ASSERT_EQ(cyclotomic_number(ctx, i, j), m(i, j)) << "p=" << p << " (" << i << "," << j << ")";
        }
    }
}

TEST(CyclotomicNumber, OtherRootsMatchDefinition) {
    for (const u64 p : {31u, 43u, 73u, 89u, 127u}) {
        const auto ctx = build_context(p);
        for (const Residue h : primitive_roots(ctx)) {
            const auto m = cyclotomic_matrix(ctx, h);
            for (i64 i = 0; i < static_cast<i64>(ctx.ell()); ++i)
                for (i64 j = 0; j < static_cast<i64>(ctx.ell()); ++j)
                    ASSERT_EQ(m(i, j), oracle::a_by_definition(p, h, ctx.ell(), i, j)) << p << " root " << h;
        }
    }
}

TEST(CyclotomicMatrix, SymmetriesUpTo500) {
    for (const u64 p : cac_test::primes_between(5, 500)) {
        const auto m = cyclotomic_matrix(build_context(p));
        const auto report = check_cyclotomic_symmetries(m);
        EXPECT_TRUE(report.ok()) << "p=" << p << "\n" << cac_test::failures_of(report);
    }
}

TEST(CyclotomicMatrix, CorruptedMatrixIsCaught) {
    auto m = cyclotomic_matrix(build_context(73));
    ++m.at(1, 2);
    EXPECT_FALSE(check_cyclotomic_symmetries(m).ok());
    EXPECT_THROW(extended_matrix(m), std::logic_error);
}

TEST(ExtendedMatrix, P31) {
    const auto b = extended_matrix(cyclotomic_matrix(build_context(31)));
    EXPECT_EQ(b(0, 0), 4u);
    for (i64 i = 0; i < 3; ++i) {
        u64 sum = 0;
        for (i64 j = 0; j < 3; ++j) sum += b(i, j);
        EXPECT_EQ(sum, 10u);
    }
    EXPECT_EQ(b(0, 0) + b(1, 1) + b(2, 2), 10u);
}

TEST(ExtendedMatrix, InvariantsUpTo500) {
    for (const u64 p : cac_test::primes_between(5, 500)) {
        const auto ctx = build_context(p);
        if (ctx.ell() < 3) continue;
        const auto m = cyclotomic_matrix(ctx);
        ExtendedMatrix b(m.p(), m.root(), m.ell());
        for (i64 i = 0; i < static_cast<i64>(m.ell()); ++i)
            for (i64 j = 0; j < static_cast<i64>(m.ell()); ++j) b.at(i, j) = m(i, j);
        ++b.at(0, 0);
        const auto report = check_extended_invariants(b);
        EXPECT_TRUE(report.ok()) << "p=" << p << "\n" << cac_test::failures_of(report);
        EXPECT_NO_THROW(extended_matrix(m));
    }
}

TEST(SEll, Examples) {
    EXPECT_EQ(s_ell(build_context(31)), 8u);
    const auto c73 = build_context(73);
    EXPECT_GE(s_ell(c73), 1u);
    EXPECT_GE(cyclotomic_number(c73, 5, 1, 2), 1u);
    EXPECT_THROW(s_ell(build_context(13)), std::invalid_argument);  // ell = 1
    EXPECT_THROW(s_ell(build_context(17)), std::invalid_argument);  // ell = 2
}

TEST(SEll, P331MatchesSquareIdentity) {
    const auto ctx = build_context(331);
    const u64 s = s_ell(ctx);
    EXPECT_GT(s, 0u);
    EXPECT_EQ(s, 2 * square_count(ctx, 0) - 1 - cyclotomic_number(ctx, 0, 0));
}

TEST(SEll, GeneratorIndices) {
    EXPECT_EQ(generator_indices(3), (std::vector<CosetIndex>{1, 2}));
    EXPECT_EQ(generator_indices(4), (std::vector<CosetIndex>{1, 3}));
    EXPECT_EQ(generator_indices(6), (std::vector<CosetIndex>{1, 5}));
    EXPECT_EQ(generator_indices(11).size(), 10u);
}

TEST(SEll, PositiveForSmallAndPrimeIndex) {
    for (const u64 p : cac_test::primes_between(5, 500)) {
        const auto ctx = build_context(p);
        const u64 ell = ctx.ell();
        if (ell < 3) continue;
        if (ell <= 5 || is_odd_prime(ell)) {
            EXPECT_GT(s_ell(ctx), 0u) << "p=" << p << " ell=" << ell;
        }
    }
}

TEST(RootIndependence, Examples) {
    const auto r31 = check_root_independence(build_context(31));
    EXPECT_EQ(r31.per_root.size(), 8u);
    EXPECT_EQ(r31.value, 8u);
    for (const auto& [root, value] : r31.per_root) EXPECT_EQ(value, 8u) << "root " << root;
    EXPECT_TRUE(r31.ok());
    EXPECT_TRUE(check_root_independence(build_context(73)).ok());
}

TEST(RootIndependence, UpTo500) {
    for (const u64 p : cac_test::primes_between(5, 500)) {
        const auto ctx = build_context(p);
        if (ctx.ell() < 3) continue;
        const auto r = check_root_independence(ctx);
        EXPECT_TRUE(r.ok()) << "p=" << p;
        EXPECT_EQ(r.value, s_ell(ctx));
    }
}

TEST(FindWitness, Examples) {
    const auto c31 = build_context(31);
    const auto w = find_witness(c31, 1);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->first, 12u);
    EXPECT_EQ(w->second, 13u);
    EXPECT_EQ(coset_index(c31, 12), 1u);
    EXPECT_EQ(coset_index(c31, 13), 2u);

    EXPECT_TRUE(find_witness(build_context(331), 1).has_value());

    const auto c73 = build_context(73);
    const auto w73 = find_witness(c73, 1);
    ASSERT_TRUE(w73.has_value());
    EXPECT_EQ(*w73, (std::pair<Residue, Residue>{5, 6}));

    EXPECT_THROW(find_witness(c73, 2), std::invalid_argument);
}

TEST(FindWitness, AbsentExactlyWhenEntryIsZero) {
    for (const u64 p : cac_test::primes_between(5, 500)) {
        const auto ctx = build_context(p);
        if (ctx.ell() < 3) continue;
        for (const CosetIndex i : generator_indices(ctx.ell())) {
            const auto w = find_witness(ctx, i);
            const u64 a = cyclotomic_number(ctx, static_cast<i64>(i), static_cast<i64>(2 * i));
            EXPECT_EQ(w.has_value(), a > 0) << "p=" << p << " i=" << i;
            if (!w) continue;
            EXPECT_EQ(coset_index(ctx, w->first), i);
            EXPECT_EQ(coset_index(ctx, w->second), 2 * i % ctx.ell());
            EXPECT_EQ((w->first + 1) % p, w->second);
            for (const Residue smaller : coset_members(ctx, i)) {
                if (smaller >= w->first) break;
                EXPECT_FALSE(smaller + 1 < p && coset_index(ctx, smaller + 1) == 2 * i % ctx.ell());
            }
        }
    }
}

TEST(CyclotomicMatrix, OrderGuard) {
    EXPECT_THROW(cyclotomic_matrix(build_context(1229241823)), std::length_error);
}
