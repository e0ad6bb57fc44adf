#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace newsbias {

/// Seeded generator shared by every randomized step (fold assignment,
/// under-sampling, SGD ordering, synthetic corpora).
///
/// The stream is fully specified so other implementations can reproduce
/// it bit for bit:
///
///   * state: xoshiro256** (Blackman & Vigna), four 64-bit words s0..s3;
///   * seeding: the four words are successive outputs of splitmix64 started
///     at the user seed (x += 0x9E3779B97F4A7C15; z = x;
///     z = (z ^ z>>30) * 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB;
///     out = z ^ z>>31);
///   * next(): r = rotl(s1 * 5, 7) * 9; t = s1 << 17; s2 ^= s0; s3 ^= s1;
///     s1 ^= s2; s0 ^= s3; s2 ^= t; s3 = rotl(s3, 45);
///   * uniform_below(n): draw r until r >= (2^64 - n) mod n, return r mod n;
///   * uniform01(): (next() >> 11) * 2^-53;
///   * shuffle: Fisher-Yates from the back, j = uniform_below(i + 1).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // n must be > 0.
    std::uint64_t uniform_below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) noexcept { return uniform01() < p; }

    template <typename T>
    void shuffle(std::span<T> items) noexcept {
        if (items.size() < 2) return;
        for (std::size_t i = items.size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(uniform_below(i + 1));
            using std::swap;
            swap(items[i], items[j]);
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) noexcept {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4]{};
};

/// Independent sub-stream seed: first output of Rng(seed ^ (stream * 0x9E3779B97F4A7C15)).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return Rng(seed ^ (stream * 0x9E3779B97F4A7C15ULL)).next();
}

} // namespace newsbias
