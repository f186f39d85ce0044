#pragma once

#include <cstdint>
#include <random>

namespace pdp {

// splitmix64 finalizer; used to derive independent child seeds and to unbias
// the small consecutive seeds humans actually type.
inline uint64_t mix_seed(uint64_t seed, uint64_t index) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random source. mt19937_64 is fully specified by the standard
// and the value mappings below avoid std::uniform_*_distribution, whose
// output is implementation-defined. Same seed, same stream, everywhere.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(mix_seed(seed, 0)) {}

    uint64_t next() { return engine_(); }

    // in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // inclusive bounds
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pdp
