#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ctxjudge {

// Deterministic pseudo-random stream. std::shuffle and the std distributions
// are implementation-defined, so anything that must be reproducible
// byte-for-byte across platforms (sampling, bootstrap, permutation flips)
// draws from this instead.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        // splitmix64
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound) via rejection.
    uint64_t next_below(uint64_t bound) {
        if (bound == 0) return 0;
        const uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bool() { return (next_u64() & 1ULL) != 0; }

    // Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    uint64_t state_;
};

// Mixes a parent seed with a stream label so that independent consumers
// (per-cell shuffles, per-round resamples) get decorrelated streams while
// staying fully determined by (seed, label).
uint64_t derive_seed(uint64_t seed, uint64_t stream);
uint64_t derive_seed(uint64_t seed, std::string_view label);

template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, Rng& rng) {
    for (size_t i = items.size(); i > 1; --i) {
        size_t j = static_cast<size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace ctxjudge
