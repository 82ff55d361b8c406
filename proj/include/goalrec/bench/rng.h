#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>
#include <vector>

namespace goalrec::bench {

// Deterministic generator. Bounded draws use rejection sampling instead of
// std::uniform_int_distribution so sequences do not depend on the standard
// library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, bound); bound must be > 0.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform in [lo, hi].
    int range(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    template <typename T>
    void shuffle(std::vector<T> &items) {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Seed derived from a base seed and a list of integers / a label.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts,
                                 std::string_view label = {}) {
    std::uint64_t h = mix_seed(base);
    for (std::uint64_t p : parts)
        h = mix_seed(h ^ p);
    for (char c : label)
        h = mix_seed(h ^ static_cast<unsigned char>(c));
    return h;
}

}  // namespace goalrec::bench
