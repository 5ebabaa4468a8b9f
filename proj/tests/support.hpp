#pragma once

// Shared helpers for the test binaries.

#include <cac/cac.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cac_test {

// Primes in [lo, hi] by a plain sieve, so test ranges do not depend on the
// library's primality test.
inline std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
    std::vector<bool> composite(hi + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 2; n <= hi; ++n) {
        if (composite[n]) continue;
        if (n >= lo) out.push_back(n);
        for (std::uint64_t m = n * n; m <= hi; m += n) composite[m] = true;
    }
    return out;
}

inline std::string failures_of(const cac::CheckReport& r) {
    std::string s;
    for (const auto& f : r.failures) s += f + "\n";
    return s;
}

}  // namespace cac_test
