#pragma once

/**
 * @file modarith.hpp
 * @brief Arithmetic in Z_p and the coset structure of Z_p^x modulo L = <-1, 2>.
 *
 * All residues are plain 64-bit integers reduced into [0, p). Products are
 * taken in 128 bits, so every modulus below 2^63 is safe.
 *
 * The central object is GroupContext: for a prime p it records o_p(2), the
 * subgroup L generated by -1 and 2, its index ell in Z_p^x, the smallest
 * primitive root g, and a classifier that sends x to the i with x in g^i L.
 * The classifier avoids discrete logarithms: x^|L| is a power of g^|L|,
 * an element of order ell, so a sorted table of those ell powers identifies
 * the coset with one exponentiation and one binary search.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cac {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

using Residue = u64;
using CosetIndex = u64;

/// Prime factorization as prime -> multiplicity, ascending by prime.
using Factorization = std::map<u64, unsigned>;

inline constexpr u64 kModulusLimit = u64{1} << 63;

/// Largest index ell for which a context keeps its fingerprint table.
inline constexpr u64 kMaxCosetCount = u64{1} << 24;

// ---------------------------------------------------------------------------
// Scalar arithmetic
// ---------------------------------------------------------------------------

constexpr u64 mul_mod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) noexcept {
    // a, b < m < 2^63, so a + b cannot wrap
    const u64 s = a + b;
    return s >= m ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) noexcept { return a >= b ? a - b : a + (m - b); }

/// base^exp mod m by square-and-multiply. mod_pow(x, 0, m) == 1 for m > 1.
constexpr u64 mod_pow(u64 base, u64 exp, u64 m) noexcept {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace detail {

// Double-and-add product for moduli up to 2^127, where a 128-bit product
// would not fit.
constexpr u128 mul_mod_wide(u128 a, u128 b, u128 m) noexcept {
    u128 r = 0;
    a %= m;
    b %= m;
    while (b != 0) {
        if (b & 1) {
            r += a;
            if (r >= m) r -= m;
        }
        a += a;
        if (a >= m) a -= m;
        b >>= 1;
    }
    return r;
}

constexpr u128 pow_mod_wide(u128 base, u64 exp, u128 m) noexcept {
    u128 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod_wide(result, base, m);
        base = mul_mod_wide(base, base, m);
        exp >>= 1;
    }
    return result;
}

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int r = 1; r < s; ++r) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

inline u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, q = 1, g = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

}  // namespace detail

/// Deterministic Miller-Rabin for every 64-bit input.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (detail::miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

inline bool is_odd_prime(u64 n) { return n > 2 && is_prime(n); }

/// Trial division up to 10^6, then Brent's variant of Pollard rho.
inline Factorization factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    Factorization out;
    for (u64 d = 2; d <= 1'000'000 && d * d <= n; d += (d == 2 ? 1 : 2)) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
    }
    std::vector<u64> pending;
    if (n > 1) pending.push_back(n);
    while (!pending.empty()) {
        const u64 m = pending.back();
        pending.pop_back();
        if (is_prime(m)) {
            ++out[m];
            continue;
        }
        const u64 f = detail::pollard_brent(m);
        pending.push_back(f);
        pending.push_back(m / f);
    }
    return out;
}

/// Smallest d >= 1 with x^d == 1 (mod p), obtained by stripping primes from
/// the group order p - 1.
inline u64 multiplicative_order(Residue x, u64 p, const Factorization& p_minus_1) {
    x %= p;
    if (x == 0) throw std::invalid_argument("multiplicative_order: 0 has no order");
    u64 d = p - 1;
    for (const auto& [q, e] : p_minus_1) {
        for (unsigned k = 0; k < e && d % q == 0 && mod_pow(x, d / q, p) == 1; ++k) d /= q;
    }
    return d;
}

inline u64 multiplicative_order(Residue x, u64 p) { return multiplicative_order(x, p, factorize(p - 1)); }

/// Legendre symbol computed as x^((p-1)/2).
inline int legendre(Residue x, u64 p) {
    x %= p;
    if (x == 0) return 0;
    return mod_pow(x, (p - 1) / 2, p) == 1 ? 1 : -1;
}

/// True iff 2^(p-1) == 1 (mod p^2).
inline bool is_wieferich(u64 p) {
    if (p < 3 || p >= kModulusLimit) throw std::invalid_argument("is_wieferich: need an odd p below 2^63");
    if (p < (u64{1} << 32)) return mod_pow(2, p - 1, p * p) == 1;
    const u128 p2 = static_cast<u128>(p) * p;
    return detail::pow_mod_wide(2, p - 1, p2) == 1;
}

/// Reduces a possibly negative index into [0, ell).
constexpr CosetIndex reduce_index(i64 i, u64 ell) noexcept {
    const i64 m = static_cast<i64>(ell);
    const i64 r = i % m;
    return static_cast<CosetIndex>(r < 0 ? r + m : r);
}

/// Inverse of a modulo m for gcd(a, m) = 1; m == 1 yields 0.
inline u64 inverse_mod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        const i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r > 1) throw std::invalid_argument("inverse_mod: not invertible");
    return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t) % m;
}

// ---------------------------------------------------------------------------
// Prime modulus and group context
// ---------------------------------------------------------------------------

/// An odd prime p with 5 <= p < 2^63.
class PrimeModulus {
public:
    explicit PrimeModulus(u64 p) : p_(p) {
        if (p < 5) throw std::invalid_argument("modulus " + std::to_string(p) + " is below 5");
        if (p >= kModulusLimit) throw std::invalid_argument("modulus " + std::to_string(p) + " is not below 2^63");
        if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    }

    [[nodiscard]] u64 value() const noexcept { return p_; }

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    u64 p_;
};

class GroupContext {
public:
    [[nodiscard]] u64 p() const noexcept { return p_; }
    [[nodiscard]] u64 order_of_2() const noexcept { return order_of_2_; }
    /// |L| for L = <-1, 2>.
    [[nodiscard]] u64 subgroup_order() const noexcept { return subgroup_order_; }
    /// [Z_p^x : L].
    [[nodiscard]] u64 ell() const noexcept { return ell_; }
    /// O(p): 0 when 4 divides |L|, otherwise ell.
    [[nodiscard]] u64 big_o() const noexcept { return big_o_; }
    [[nodiscard]] Residue primitive_root() const noexcept { return root_; }
    [[nodiscard]] const Factorization& group_order_factors() const noexcept { return factors_; }

    /// g^i for 0 <= i < ell.
    [[nodiscard]] Residue coset_representative(CosetIndex i) const { return coset_reps_.at(i % ell_); }

    /// i such that x lies in g^i L.
    [[nodiscard]] CosetIndex coset_index(Residue x) const {
        x %= p_;
        if (x == 0) throw std::invalid_argument("coset_index: 0 lies in no coset");
        const u64 fp = mod_pow(x, subgroup_order_, p_);
        const auto it = std::lower_bound(fingerprints_.begin(), fingerprints_.end(), std::pair<u64, u64>{fp, 0});
        if (it == fingerprints_.end() || it->first != fp) throw std::logic_error("coset_index: fingerprint not found");
        return it->second;
    }

    [[nodiscard]] bool is_primitive_root(Residue g) const {
        g %= p_;
        if (g == 0) return false;
        return std::all_of(factors_.begin(), factors_.end(),
                           [&](const auto& qe) { return mod_pow(g, (p_ - 1) / qe.first, p_) != 1; });
    }

    /// Calls f(x) for every x in g^i L. Order follows powers of 2; not sorted.
    template <typename F>
    void for_each_in_coset(CosetIndex i, F&& f) const {
        Residue x = coset_representative(i);
        const bool add_negatives = (order_of_2_ % 2) == 1;
        for (u64 e = 0; e < order_of_2_; ++e) {
            f(x);
            if (add_negatives) f(p_ - x);
            x = add_mod(x, x, p_);
        }
    }

    friend GroupContext build_context(u64 p);

private:
    GroupContext() = default;

    u64 p_ = 0;
    u64 order_of_2_ = 0;
    u64 subgroup_order_ = 0;
    u64 ell_ = 0;
    u64 big_o_ = 0;
    Residue root_ = 0;
    Factorization factors_;
    std::vector<Residue> coset_reps_;
    std::vector<std::pair<u64, CosetIndex>> fingerprints_;
};

/// Builds every group-structure fact for p. Throws std::invalid_argument for
/// p < 5 or composite p, std::length_error when ell exceeds kMaxCosetCount.
inline GroupContext build_context(u64 p) {
    const PrimeModulus modulus(p);
    GroupContext ctx;
    ctx.p_ = modulus.value();
    ctx.factors_ = factorize(p - 1);
    ctx.order_of_2_ = multiplicative_order(2, p, ctx.factors_);
    ctx.subgroup_order_ = ctx.order_of_2_ % 2 == 0 ? ctx.order_of_2_ : 2 * ctx.order_of_2_;
    ctx.ell_ = (p - 1) / ctx.subgroup_order_;
    ctx.big_o_ = ctx.subgroup_order_ % 4 == 0 ? 0 : ctx.ell_;
    if (ctx.ell_ > kMaxCosetCount) {
        throw std::length_error("index " + std::to_string(ctx.ell_) + " of <-1,2> is too large to tabulate");
    }

    for (Residue g = 2;; ++g) {
        if (ctx.is_primitive_root(g)) {
            ctx.root_ = g;
            break;
        }
    }

    ctx.coset_reps_.reserve(ctx.ell_);
    ctx.fingerprints_.reserve(ctx.ell_);
    const u64 h = mod_pow(ctx.root_, ctx.subgroup_order_, p);
    Residue rep = 1, fp = 1;
    for (CosetIndex i = 0; i < ctx.ell_; ++i) {
        ctx.coset_reps_.push_back(rep);
        ctx.fingerprints_.emplace_back(fp, i);
        rep = mul_mod(rep, ctx.root_, p);
        fp = mul_mod(fp, h, p);
    }
    std::sort(ctx.fingerprints_.begin(), ctx.fingerprints_.end());
    return ctx;
}

inline CosetIndex coset_index(const GroupContext& ctx, Residue x) { return ctx.coset_index(x); }

/// The |L| elements of g^i L in ascending order.
inline std::vector<Residue> coset_members(const GroupContext& ctx, CosetIndex i) {
    if (i >= ctx.ell()) throw std::out_of_range("coset_members: index out of range");
    std::vector<Residue> out;
    out.reserve(ctx.subgroup_order());
    ctx.for_each_in_coset(i, [&](Residue x) { out.push_back(x); });
    std::sort(out.begin(), out.end());
    return out;
}

/// All primitive roots of p in ascending order: g^k with gcd(k, p-1) = 1.
inline std::vector<Residue> primitive_roots(const GroupContext& ctx) {
    const u64 p = ctx.p();
    std::vector<Residue> roots;
    Residue x = 1;
    for (u64 k = 1; k < p; ++k) {
        x = mul_mod(x, ctx.primitive_root(), p);
        if (std::gcd(k, p - 1) == 1) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

/// Coset labels relative to an arbitrary primitive root h: x lies in h^i L.
///
/// If h lies in g^k L then h^i L = g^(k i) L, so the label under h is the
/// context label times k^-1 modulo ell.
class RootedClassifier {
public:
    RootedClassifier(const GroupContext& ctx, Residue root) : ctx_(&ctx), root_(root % ctx.p()) {
        if (!ctx.is_primitive_root(root_)) {
            throw std::invalid_argument(std::to_string(root) + " is not a primitive root of " + std::to_string(ctx.p()));
        }
        scale_ = inverse_mod(ctx.coset_index(root_), ctx.ell());
        if (ctx.ell() == 1) scale_ = 0;
    }

    [[nodiscard]] Residue root() const noexcept { return root_; }
    [[nodiscard]] const GroupContext& context() const noexcept { return *ctx_; }

    [[nodiscard]] CosetIndex operator()(Residue x) const {
        return static_cast<CosetIndex>(static_cast<u128>(ctx_->coset_index(x)) * scale_ % ctx_->ell());
    }

    /// Calls f(x) for every x in root^i L.
    template <typename F>
    void for_each_in_coset(CosetIndex i, F&& f) const {
        // root^i L coincides with the context coset of index k*i.
        const CosetIndex k = ctx_->coset_index(root_);
        ctx_->for_each_in_coset(static_cast<CosetIndex>(static_cast<u128>(k) * (i % ctx_->ell()) % ctx_->ell()),
                                std::forward<F>(f));
    }

private:
    const GroupContext* ctx_;
    Residue root_;
    u64 scale_ = 0;
};

/// Labels every residue by walking the powers of a chosen primitive root:
/// table[root^k] = k mod ell. O(p) memory; independent of the fingerprint
/// classifier, which makes it a useful cross-check.
class DenseCosetTable {
public:
    static constexpr u64 kMaxModulus = u64{1} << 24;

    DenseCosetTable(u64 p, u64 ell, Residue root) : p_(p), labels_(p, kUnlabeled) {
        if (p > kMaxModulus) throw std::length_error("dense coset table: modulus too large");
        Residue x = 1;
        for (u64 k = 0; k + 1 < p; ++k) {
            if (labels_[x] != kUnlabeled) throw std::invalid_argument("dense coset table: root is not primitive");
            labels_[x] = static_cast<std::uint32_t>(k % ell);
            x = mul_mod(x, root, p);
        }
    }

    [[nodiscard]] CosetIndex operator()(Residue x) const {
        const auto v = labels_.at(x % p_);
        if (v == kUnlabeled) throw std::invalid_argument("dense coset table: 0 lies in no coset");
        return v;
    }

private:
    static constexpr std::uint32_t kUnlabeled = 0xffffffffu;
    u64 p_;
    std::vector<std::uint32_t> labels_;
};

}  // namespace cac
