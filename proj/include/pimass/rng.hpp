#pragma once

#include <cstdint>
#include <random>

namespace pimass {

// splitmix64 finalizer; used both as a standalone mixer and to derive
// independent seed streams from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives a per-stream seed from (master, stream ids). Streams with
// distinct ids are statistically independent for our purposes.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master ^ splitmix64(a));
    s = splitmix64(s ^ splitmix64(b + 0x165667b19e3779f9ULL));
    return splitmix64(s ^ splitmix64(c + 0x27d4eb2f165667c5ULL));
}

// mt19937_64 is fully specified by the standard, and we only extract bits
// through our own conversions below, so sequences are identical across
// platforms for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // uniform in (0, 1]
    double uniform_open01() { return 1.0 - uniform01(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection sampling keeps the draw exactly uniform
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace pimass
