// SHA-256 / HMAC-SHA256 primitives, hex codecs, and injectable RNG sources.
#pragma once

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eds {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace crypto {

using Digest = std::array<std::uint8_t, 32>;
using Key256 = std::array<std::uint8_t, 32>;

// Global evaluation counters. Tests use deltas of these to pin down the
// O(1) verification contract (exactly one hash + one HMAC per verify).
struct Counters {
    inline static std::atomic<std::uint64_t> sha256_calls{0};
    inline static std::atomic<std::uint64_t> hmac_calls{0};
};

namespace detail {

struct MdCtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

inline EVP_MD_CTX* thread_md_ctx() {
    thread_local std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> ctx{EVP_MD_CTX_new()};
    return ctx.get();
}

}  // namespace detail

inline Digest sha256(std::span<const std::uint8_t> data) {
    Digest out{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = detail::thread_md_ctx();
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, out.data(), &len) != 1 || len != out.size()) {
        throw std::runtime_error("sha256 failed");
    }
    Counters::sha256_calls.fetch_add(1, std::memory_order_relaxed);
    return out;
}

inline Digest hmac_sha256(std::span<const std::uint8_t> key,
                          std::span<const std::uint8_t> data) {
    Digest out{};
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
             data.data(), data.size(), out.data(), &len) == nullptr ||
        len != out.size()) {
        throw std::runtime_error("hmac-sha256 failed");
    }
    Counters::hmac_calls.fetch_add(1, std::memory_order_relaxed);
    return out;
}

// Constant-time comparison; unequal lengths compare unequal.
inline bool ct_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size()) return false;
    return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

inline std::string to_hex(std::span<const std::uint8_t> data) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(data.size() * 2);
    for (std::uint8_t b : data) {
        s.push_back(kDigits[b >> 4]);
        s.push_back(kDigits[b & 0x0F]);
    }
    return s;
}

inline std::optional<std::vector<std::uint8_t>> from_hex(std::string_view s) {
    if (s.size() % 2 != 0) return std::nullopt;
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    std::vector<std::uint8_t> out(s.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        int hi = nibble(s[2 * i]);
        int lo = nibble(s[2 * i + 1]);
        if (hi < 0 || lo < 0) return std::nullopt;
        out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
    }
    return out;
}

inline void put_be64(std::span<std::uint8_t> out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>((v >> (56 - 8 * i)) & 0xFF);
    }
}

inline std::uint64_t get_be64(std::span<const std::uint8_t> in) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | in[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace crypto

// Injectable randomness. Everything that draws randomness takes an Rng so
// the harness and the tests can run fully deterministic given a seed.
class Rng {
public:
    virtual ~Rng() = default;
    virtual std::uint64_t next_u64() = 0;

    virtual void fill(std::span<std::uint8_t> out) {
        std::size_t i = 0;
        while (i < out.size()) {
            std::uint64_t v = next_u64();
            for (int j = 0; j < 8 && i < out.size(); ++j, ++i) {
                out[i] = static_cast<std::uint8_t>(v >> (8 * j));
            }
        }
    }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps the
    // stream portable across standard-library implementations.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(next_u64());  // full range
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % range);
    }

    // Uniform double in [0, 1).
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Number of Bernoulli(p) trials up to and including the first success.
    std::uint64_t geometric(double p) {
        if (p <= 0.0 || p > 1.0) throw std::invalid_argument("geometric: p out of range");
        if (p == 1.0) return 1;
        double u = uniform_real();
        double k = std::floor(std::log1p(-u) / std::log1p(-p));
        if (k < 0) k = 0;
        if (k > 9e18) k = 9e18;
        return static_cast<std::uint64_t>(k) + 1;
    }
};

// CSPRNG-backed source for production key/nonce material.
class SecureRng final : public Rng {
public:
    std::uint64_t next_u64() override {
        std::uint64_t v;
        fill({reinterpret_cast<std::uint8_t*>(&v), sizeof(v)});
        return v;
    }

    void fill(std::span<std::uint8_t> out) override {
        if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
            throw std::runtime_error("RAND_bytes failed");
        }
    }
};

// Seeded source for tests and the simulation harness.
class DeterministicRng final : public Rng {
public:
    explicit DeterministicRng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next_u64() override { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace eds
