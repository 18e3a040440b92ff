#ifndef COVERT_RNG_HPP
#define COVERT_RNG_HPP

#include <cstdint>
#include <cmath>

namespace covert::rng {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// SplitMix64 finalizer. All randomness in this project is counter-based on top
// of this mixer so that streams are reproducible and freely parallelizable.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent stream key from a master seed and up to three indices
// (chunk, codeword, experiment tag, trial number, ...).
inline constexpr std::uint64_t derive_key(std::uint64_t master, std::uint64_t a,
                                          std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = mix64(master + kGolden);
    s = mix64(s ^ (a + 0xd1b54a32d192ed03ULL));
    s = mix64(s ^ (b + 0x8cb92ba72f3d8dd7ULL));
    s = mix64(s ^ (c + 0xe7037ed1a0b428dbULL));
    return s;
}

// Counter-based stream: word i of the stream is mix64(key + (i+1)*golden).
// Copies are cheap; identical (key, counter) always reproduce the same words.
class Stream {
  public:
    Stream() : key_(0), counter_(0) {}
    explicit Stream(std::uint64_t key) : key_(key), counter_(0) {}

    std::uint64_t next_u64() { return mix64(key_ + (++counter_) * kGolden); }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool next_bernoulli(double prob) {
        if (prob <= 0.0) return false;
        if (prob >= 1.0) return true;
        return next_unit() < prob;
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

inline Stream substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                        std::uint64_t c = 0) {
    return Stream(derive_key(master, a, b, c));
}

}  // namespace covert::rng

#endif
