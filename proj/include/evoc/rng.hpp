#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>

namespace evoc {

/**
 * Per-run random stream.
 *
 * The generator is SplitMix64 so that other implementations can reproduce a
 * stream bit-exactly:
 *
 *     state += 0x9E3779B97F4A7C15
 *     z = state
 *     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
 *     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
 *     return z ^ (z >> 31)
 *
 * The initial state is the seed itself. Derived draws:
 *   uniform01()  = (next() >> 11) * 2^-53, in [0, 1)
 *   range(n)     = floor(uniform01() * n), in [0, n)
 *   shuffle      = for i = n-1 down to 1: swap(a[i], a[range(i + 1)])
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    std::uint64_t range(std::uint64_t n) {
        auto r = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
        return r < n ? r : n - 1;
    }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = range(i);
            std::swap(items[i - 1], items[j]);
        }
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

/// SplitMix64 finalizer, used to derive replicate seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Folds indices into a base seed: h = mix64(h ^ index) for each index in order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> indices) {
    std::uint64_t h = mix64(base);
    for (auto idx : indices) h = mix64(h ^ idx);
    return h;
}

} // namespace evoc
