#pragma once

#include <cstdint>

namespace smblab {

/// splitmix64 finalizer; also used to hash path indices into per-path seeds.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Seed for path/trajectory index i under a master seed. Counter-based, so
/// experiment output does not depend on worker count or scheduling.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    return master ^ mix64(index);
}

/// xoshiro256** -- small, fast, and identical on every platform (unlike the
/// standard library distributions, which are implementation-defined).
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        // splitmix64 state expansion, per the reference implementation
        uint64_t z = seed;
        for (auto& s : s_) {
            z += 0x9e3779b97f4a7c15ull;
            uint64_t x = z;
            x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
            x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
            s = x ^ (x >> 31);
        }
    }

    uint64_t next_u64() {
        uint64_t result = rotl(s_[1] * 5, 7) * 9;
        uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    uint64_t s_[4];
};

}  // namespace smblab
