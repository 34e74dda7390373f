#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace sbp {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Chosen for its documented stream-splitting semantics: a 64-bit key plus a
// 128-bit counter, of which the high 64 bits are used as a stream id and the
// low 64 bits as the block index. Streams with distinct ids are statistically
// independent, so replica r of a run with base seed s draws from
// Rng(s, stream_for_replica(r)) with no coordination.
class Rng {
public:
    Rng() : Rng(0, 0) {}
    Rng(uint64_t seed, uint64_t stream) : key0_(static_cast<uint32_t>(seed)),
                                          key1_(static_cast<uint32_t>(seed >> 32)),
                                          stream_(stream) {}

    // Independent generator for a sub-stream of this one's (seed, stream).
    Rng split(uint64_t substream) const {
        Rng r;
        r.key0_ = key0_;
        r.key1_ = key1_;
        // Feistel-free mixing of (stream, substream) into a fresh stream id.
        r.stream_ = mix64(stream_ ^ mix64(substream + 0x9e3779b97f4a7c15ull));
        return r;
    }

    uint64_t next_u64() {
        if (buf_pos_ >= 2) refill();
        return buf_[buf_pos_++];
    }

    uint32_t next_u32() { return static_cast<uint32_t>(next_u64()); }

    // Uniform in [0,1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (caches the second deviate).
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    // Uniform integer in [0, bound) by rejection (bound > 0).
    uint64_t next_below(uint64_t bound) {
        const uint64_t lim = bound * ((~uint64_t{0}) / bound);
        uint64_t v;
        do {
            v = next_u64();
        } while (v >= lim);
        return v % bound;
    }

    // Raw block function, exposed for the known-answer tests.
    static std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr,
                                              std::array<uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += 0x9E3779B9u;
                key[1] += 0xBB67AE85u;
            }
            const uint64_t p0 = uint64_t{0xD2511F53u} * ctr[0];
            const uint64_t p1 = uint64_t{0xCD9E8D57u} * ctr[2];
            const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32);
            const uint32_t lo0 = static_cast<uint32_t>(p0);
            const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32);
            const uint32_t lo1 = static_cast<uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    void refill() {
        const std::array<uint32_t, 4> ctr = {
            static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32),
            static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)};
        const auto out = philox4x32(ctr, {key0_, key1_});
        buf_[0] = (uint64_t{out[1]} << 32) | out[0];
        buf_[1] = (uint64_t{out[3]} << 32) | out[2];
        buf_pos_ = 0;
        ++block_;
    }

    static uint64_t mix64(uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    uint32_t key0_ = 0;
    uint32_t key1_ = 0;
    uint64_t stream_ = 0;
    uint64_t block_ = 0;
    uint64_t buf_[2] = {0, 0};
    int buf_pos_ = 2;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace sbp
