#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace tsdhsic {

// All randomness in the library flows through this generator so that results
// are identical across platforms and standard libraries. Streams are derived
// by hashing (master seed, stream labels); consumers never share a stream, so
// outputs do not depend on execution order.

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

/// Mix a master seed with up to three stream labels into a new seed.
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                               std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    std::uint64_t s = master;
    std::uint64_t h = detail::splitmix64(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= detail::splitmix64(s);
    s ^= b + 0xd1b54a32d192ed03ULL;
    h ^= detail::splitmix64(s);
    s ^= c + 0x8cb92ba72f3d8dd7ULL;
    h ^= detail::splitmix64(s);
    return h;
}

/// Deterministic xoshiro256** generator seeded through splitmix64.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept {
        std::uint64_t s = seed;
        for (auto& word : state_) word = detail::splitmix64(s);
    }

    std::uint64_t next_u64() noexcept {
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

    /// Uniform double in [0, 1).
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Unbiased uniform integer in [0, bound) via rejection sampling.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal draw (Box-Muller; caches the paired value).
    double next_normal() noexcept {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::span<T> values) noexcept {
        for (std::size_t i = values.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

[[nodiscard]] inline RngStream derive_stream(std::uint64_t master, std::uint64_t a,
                                             std::uint64_t b = 0, std::uint64_t c = 0) noexcept {
    return RngStream(derive_seed(master, a, b, c));
}

/// Uniform random permutation of {0, ..., n-1}.
[[nodiscard]] inline std::vector<std::uint32_t> random_permutation(std::size_t n, RngStream& rng) {
    std::vector<std::uint32_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(std::span<std::uint32_t>(perm));
    return perm;
}

}  // namespace tsdhsic
