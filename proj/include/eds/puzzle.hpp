// HMAC-bound SHA-256 proof-of-work challenges.
//
// A challenge binds (nonce, issued_at, client identity, difficulty) under a
// keyed tag, so the server can verify any returned solution without keeping
// per-challenge state. A solution is a counter x such that
// SHA256(x_be64 || nonce) has at least `difficulty` leading zero bits.
#pragma once

#include "eds/crypto.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eds::puzzle {

inline constexpr int kMinDifficulty = 0;
inline constexpr int kMaxDifficulty = 32;
inline constexpr std::int64_t kChallengeTtlSeconds = 60;
inline constexpr std::size_t kMaxClientIdBytes = 64;

struct Challenge {
    std::array<std::uint8_t, 16> nonce{};
    std::int64_t issued_at = 0;  // unix seconds
    std::string client_id;
    int difficulty = 0;
    crypto::Digest tag{};
};

struct Solution {
    Challenge challenge;     // echoed verbatim; keeps verification stateless
    std::uint64_t counter = 0;
};

struct SolveStats {
    std::uint64_t attempts = 0;  // every SHA-256 evaluation
    std::chrono::nanoseconds elapsed{0};
};

enum class VerifyOutcome {
    Accept,
    RejectBadTag,
    RejectExpired,
    RejectWrongClient,
    RejectWrongDifficulty,
    RejectInsufficientWork,
};

inline const char* to_string(VerifyOutcome v) {
    switch (v) {
        case VerifyOutcome::Accept: return "accept";
        case VerifyOutcome::RejectBadTag: return "bad_tag";
        case VerifyOutcome::RejectExpired: return "expired";
        case VerifyOutcome::RejectWrongClient: return "wrong_client";
        case VerifyOutcome::RejectWrongDifficulty: return "wrong_difficulty";
        case VerifyOutcome::RejectInsufficientWork: return "insufficient_work";
    }
    return "unknown";
}

namespace detail {

inline std::vector<std::uint8_t> tag_preimage(const Challenge& c) {
    std::vector<std::uint8_t> buf;
    buf.reserve(16 + 8 + c.client_id.size() + 1);
    buf.insert(buf.end(), c.nonce.begin(), c.nonce.end());
    std::uint8_t ts[8];
    crypto::put_be64(ts, static_cast<std::uint64_t>(c.issued_at));
    buf.insert(buf.end(), ts, ts + 8);
    buf.insert(buf.end(), c.client_id.begin(), c.client_id.end());
    buf.push_back(static_cast<std::uint8_t>(c.difficulty));
    return buf;
}

}  // namespace detail

inline crypto::Digest compute_tag(const Challenge& c, const crypto::Key256& server_key) {
    auto pre = detail::tag_preimage(c);
    return crypto::hmac_sha256(server_key, pre);
}

// Consecutive zero bits from the most significant bit of byte 0.
inline int count_leading_zero_bits(std::span<const std::uint8_t, 32> digest) {
    int bits = 0;
    for (std::uint8_t b : digest) {
        if (b == 0) {
            bits += 8;
            continue;
        }
        bits += std::countl_zero(b);
        break;
    }
    return bits;
}

inline Challenge generate_challenge(const std::string& client_id, int difficulty,
                                    std::int64_t now_s, const crypto::Key256& server_key,
                                    Rng& rng) {
    if (difficulty < kMinDifficulty || difficulty > kMaxDifficulty) {
        throw ConfigError("puzzle difficulty out of range [0, 32]");
    }
    if (client_id.size() > kMaxClientIdBytes) {
        throw ConfigError("client id exceeds 64 bytes");
    }
    Challenge c;
    rng.fill(c.nonce);
    c.issued_at = now_s;
    c.client_id = client_id;
    c.difficulty = difficulty;
    c.tag = compute_tag(c, server_key);
    return c;
}

// Hash input for the work check: counter as 8 bytes big-endian, then nonce.
inline crypto::Digest work_digest(std::uint64_t counter,
                                  const std::array<std::uint8_t, 16>& nonce) {
    std::array<std::uint8_t, 24> buf{};
    crypto::put_be64(std::span(buf).first(8), counter);
    std::copy(nonce.begin(), nonce.end(), buf.begin() + 8);
    return crypto::sha256(buf);
}

// Honest search: counters tried in order from 0, so the solve trace for a
// given challenge is reproducible. Always terminates for difficulty <= 32.
inline std::pair<Solution, SolveStats> solve(const Challenge& challenge) {
    SolveStats stats;
    auto t0 = std::chrono::steady_clock::now();
    std::uint64_t counter = 0;
    for (;;) {
        ++stats.attempts;
        auto digest = work_digest(counter, challenge.nonce);
        if (count_leading_zero_bits(digest) >= challenge.difficulty) break;
        ++counter;
    }
    stats.elapsed = std::chrono::steady_clock::now() - t0;
    return {Solution{challenge, counter}, stats};
}

namespace detail {

// Shared by real verification and the harness's simulated-work mode.
// Always computes exactly one HMAC and one SHA-256, whatever the outcome,
// so the evaluation count leaks nothing about which check failed.
inline VerifyOutcome verify_impl(const Solution& sol, const std::string& expected_client_id,
                                 int expected_difficulty, std::int64_t now_s,
                                 const crypto::Key256& server_key, bool check_work) {
    const Challenge& c = sol.challenge;
    auto expected_tag = compute_tag(c, server_key);
    bool tag_ok = crypto::ct_equal(expected_tag, c.tag);
    auto digest = work_digest(sol.counter, c.nonce);
    int zeros = count_leading_zero_bits(digest);

    if (!tag_ok) return VerifyOutcome::RejectBadTag;
    if (c.client_id != expected_client_id) return VerifyOutcome::RejectWrongClient;
    if (c.difficulty < expected_difficulty) return VerifyOutcome::RejectWrongDifficulty;
    if (now_s < c.issued_at || now_s - c.issued_at > kChallengeTtlSeconds) {
        return VerifyOutcome::RejectExpired;
    }
    if (check_work && zeros < c.difficulty) return VerifyOutcome::RejectInsufficientWork;
    return VerifyOutcome::Accept;
}

}  // namespace detail

inline VerifyOutcome verify(const Solution& sol, const std::string& expected_client_id,
                            int expected_difficulty, std::int64_t now_s,
                            const crypto::Key256& server_key) {
    return detail::verify_impl(sol, expected_client_id, expected_difficulty, now_s,
                               server_key, /*check_work=*/true);
}

}  // namespace eds::puzzle
