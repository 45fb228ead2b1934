#pragma once

#include <cstdint>
#include <string_view>

namespace scrip {

// Counter-based 64-bit generator: output i is a hash of (seed, i). Streams are
// cheap to fork, and a run is replayable bit-exactly from the seed recorded in
// its config.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static constexpr std::string_view name() { return "splitmix64"; }
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~std::uint64_t{0}; }

    result_type operator()() {
        counter_ += 0x9E3779B97F4A7C15ull;
        return mix(seed_ ^ counter_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % n;
    }

    // Independent stream derived from this seed; used to hand each replica run
    // its own generator.
    CounterRng fork(std::uint64_t stream) const {
        return CounterRng(mix(seed_ + 0xA24BAED4963EE407ull * (stream + 1)));
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

}  // namespace scrip
