#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace when2tool {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Order-sensitive 64-bit hash combiner used for every derived seed.
class SeedHasher {
public:
    explicit constexpr SeedHasher(std::uint64_t init = 0) noexcept : state_(mix64(init)) {}

    constexpr SeedHasher& add(std::uint64_t v) noexcept {
        state_ = mix64(state_ ^ mix64(v + 0x632be59bd9b4e019ULL));
        return *this;
    }

    constexpr SeedHasher& add(std::string_view s) noexcept {
        // FNV-1a over the bytes, then folded in with the length.
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return add(h).add(static_cast<std::uint64_t>(s.size()));
    }

    constexpr std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

template <typename... Parts>
constexpr std::uint64_t hash64(std::uint64_t seed, const Parts&... parts) noexcept {
    SeedHasher h(seed);
    (h.add(parts), ...);
    return h.value();
}

/// Deterministic RNG. Distributions are implemented here rather than with
/// <random> distributions so the stream is identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi] (inclusive).
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % span;
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return lo + static_cast<std::int64_t>(r % span);
    }

    int uniform_int(int lo, int hi) { return static_cast<int>(uniform(lo, hi)); }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = unit();
        while (u1 <= 0.0) u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

    template <typename T>
    const T& pick(std::span<const T> items) {
        return items[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(items.size()) - 1))];
    }

    template <typename T>
    const T& pick(const std::vector<T>& items) {
        return pick(std::span<const T>(items));
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace when2tool
