#pragma once

// Seeded deterministic RNG. mt19937_64 is fully specified by the standard,
// and bounded draws avoid std::uniform_int_distribution (whose output is
// implementation-defined), so reports are byte-identical across platforms.

#include <cstdint>
#include <random>
#include <vector>

namespace cotlab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform-ish draw in [0, bound); bias is irrelevant at these sizes.
    std::int64_t below(std::int64_t bound) {
        if (bound <= 1) return 0;
        return static_cast<std::int64_t>(gen_() % static_cast<std::uint64_t>(bound));
    }

    // Independent child stream keyed by index only, so trial batches are
    // reproducible regardless of execution order.
    Rng fork(std::uint64_t stream) const {
        return Rng(splitmix64(seed_ ^ splitmix64(stream)));
    }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<size_t>(below(static_cast<std::int64_t>(xs.size())))];
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace cotlab
