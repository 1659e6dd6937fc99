#pragma once

#include <cstdint>
#include <random>

namespace ngems {

// Deterministic random source. All randomness in the library flows through
// this class so that a (seed, substream index) pair pins down every draw,
// independent of platform: uniforms are built from raw mt19937_64 output
// rather than std::uniform_real_distribution, whose algorithm is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix_(seed)) {}

    // Independent-looking stream for (seed, index); used for per-rollout and
    // per-instance substreams so parallel order never changes the draws.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(mix_(seed) ^ mix_(0x9e3779b97f4a7c15ULL + index));
    }

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi], inclusive. Rejection-free modulo is fine
    // here: ranges are tiny compared to 2^64, bias is ~2^-60.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

private:
    // splitmix64 finalizer; decorrelates consecutive seeds.
    static std::uint64_t mix_(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace ngems
