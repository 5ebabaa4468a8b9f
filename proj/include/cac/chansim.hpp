#pragma once

/**
 * @file chansim.hpp
 * @brief Codewords as binary protocol sequences on a slotted collision
 *        channel without feedback.
 *
 * Model: synchronous slots, frame length p, each active user repeats its
 * sequence cyclically shifted by an unknown offset. A slot delivers a packet
 * iff exactly one active user transmits in it (no capture). A user succeeds
 * iff at least one of its slots is collision-free.
 *
 * For a CAC two distinct sequences overlap in at most one slot under any
 * relative shift, so with at most three active users each user loses at most
 * two of its three slots.
 */

#include <cac/codes.hpp>
#include <cac/modarith.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace cac {

struct ProtocolSequence {
    std::vector<std::uint8_t> bits;

    explicit ProtocolSequence(const Codeword& x) : bits(x.length(), 0) {
        for (const Residue v : x.points()) bits[v] = 1;
    }

    [[nodiscard]] unsigned weight() const {
        return static_cast<unsigned>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
    }
};

/// |x ∩ (y + shift)| in Z_n.
inline unsigned shifted_overlap(const Codeword& x, const Codeword& y, u64 shift) {
    if (x.length() != y.length()) throw std::invalid_argument("shifted_overlap: lengths differ");
    const u64 n = x.length();
    unsigned overlap = 0;
    for (const Residue u : x.points())
        for (const Residue v : y.points())
            if ((v + shift) % n == u) ++overlap;
    return overlap;
}

struct Scenario {
    std::vector<std::size_t> users;  // distinct codeword indices
    std::vector<u64> offsets;        // one per active user, reduced mod p
    std::optional<u64> seed;         // set when drawn by random_trials
};

struct ScenarioResult {
    std::vector<bool> success;            // per active user, in scenario order
    std::vector<unsigned> transmissions;  // per slot: number of active transmitters

    [[nodiscard]] std::size_t successes() const {
        return static_cast<std::size_t>(std::count(success.begin(), success.end(), true));
    }
};

inline ScenarioResult simulate(const Code& code, const Scenario& scenario) {
    if (scenario.users.size() != scenario.offsets.size()) {
        throw std::invalid_argument("simulate: one offset per active user required");
    }
    if (scenario.users.size() > code.size()) throw std::invalid_argument("simulate: more active users than codewords");
    std::vector<std::size_t> sorted = scenario.users;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("simulate: active users must be distinct");
    }

    const u64 p = code.p;
    ScenarioResult result;
    result.transmissions.assign(p, 0);
    for (std::size_t k = 0; k < scenario.users.size(); ++k) {
        for (const Residue v : code.codewords.at(scenario.users[k]).points()) {
            ++result.transmissions[(v + scenario.offsets[k]) % p];
        }
    }
    result.success.reserve(scenario.users.size());
    for (std::size_t k = 0; k < scenario.users.size(); ++k) {
        const auto& pts = code.codewords[scenario.users[k]].points();
        result.success.push_back(std::any_of(pts.begin(), pts.end(), [&](Residue v) {
            return result.transmissions[(v + scenario.offsets[k]) % p] == 1;
        }));
    }
    return result;
}

struct TrialStats {
    u64 trials = 0;
    u64 active = 0;
    u64 seed = 0;
    u64 user_attempts = 0;
    u64 user_successes = 0;
    u64 all_succeeded = 0;  // trials in which every active user got through

    [[nodiscard]] double success_rate() const {
        return user_attempts == 0 ? 1.0 : static_cast<double>(user_successes) / static_cast<double>(user_attempts);
    }
};

/// Draws `trials` scenarios from a seeded mt19937_64: a uniformly random set
/// of `active` distinct users and independent uniform offsets.
inline TrialStats random_trials(const Code& code, u64 active, u64 trials, u64 seed) {
    if (active == 0 || active > code.size()) throw std::invalid_argument("random_trials: invalid number of active users");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<u64> offset(0, code.p - 1);
    std::vector<std::size_t> pool(code.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});

    TrialStats stats{trials, active, seed, 0, 0, 0};
    for (u64 t = 0; t < trials; ++t) {
        Scenario s;
        s.seed = seed;
        for (u64 k = 0; k < active; ++k) {
            std::uniform_int_distribution<std::size_t> pick(k, pool.size() - 1);
            std::swap(pool[k], pool[pick(rng)]);
            s.users.push_back(pool[k]);
            s.offsets.push_back(offset(rng));
        }
        const auto r = simulate(code, s);
        stats.user_attempts += active;
        stats.user_successes += r.successes();
        if (r.successes() == active) ++stats.all_succeeded;
    }
    return stats;
}

}  // namespace cac
