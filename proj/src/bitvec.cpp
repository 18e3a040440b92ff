#include "covert/bitvec.hpp"

#include <cmath>

namespace covert {

std::string BitVec::to_hex() const {
    // Nibble j covers bits [4j, 4j+4); the string is written most significant
    // nibble first so it reads like a number with bit 0 at the right end.
    const std::size_t nibbles = (nbits_ + 3) / 4;
    std::string out(nibbles, '0');
    static const char* digits = "0123456789abcdef";
    for (std::size_t j = 0; j < nibbles; ++j) {
        unsigned val = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t i = 4 * j + b;
            if (i < nbits_ && get(i)) val |= 1u << b;
        }
        out[nibbles - 1 - j] = digits[val];
    }
    return out;
}

BitVec BitVec::from_hex(const std::string& hex, std::size_t nbits) {
    const std::size_t nibbles = (nbits + 3) / 4;
    if (hex.size() != nibbles)
        throw ContractError("hex string length " + std::to_string(hex.size()) +
                            " does not match " + std::to_string(nbits) + " bits");
    BitVec v(nbits);
    for (std::size_t j = 0; j < nibbles; ++j) {
        const char c = hex[nibbles - 1 - j];
        unsigned val;
        if (c >= '0' && c <= '9')
            val = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f')
            val = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'F')
            val = static_cast<unsigned>(c - 'A') + 10;
        else
            throw ContractError(std::string("invalid hex character '") + c + "'");
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t i = 4 * j + b;
            if (val & (1u << b)) {
                if (i >= nbits) throw ContractError("hex value has bits beyond requested length");
                v.set(i, true);
            }
        }
    }
    return v;
}

namespace {

constexpr int kProbBits = 40;

// One word of i.i.d. Bernoulli bits by bitwise combination of fair words.
// With prob = 0.b1 b2 ... bK binary and r built bottom-up as r = w_K, then
// r = b_i ? (w_i | r) : (w_i & r) for i = K-1 .. 1, every bit of r is set with
// probability exactly 0.b1...bK. `frac` is pre-shifted so its bit 0 is the
// lowest set digit b_levels; levels <= kProbBits words are drawn.
std::uint64_t bernoulli_word(std::uint64_t frac, int levels, rng::Stream& s) {
    std::uint64_t r = s.next_u64();
    for (int bitpos = 1; bitpos < levels; ++bitpos) {
        const std::uint64_t w = s.next_u64();
        r = ((frac >> bitpos) & 1ULL) ? (w | r) : (w & r);
    }
    return r;
}

}  // namespace

void fill_bernoulli(BitVec& v, double prob, rng::Stream& stream) {
    if (!(prob >= 0.0) || !(prob <= 1.0)) throw ContractError("Bernoulli prob outside [0,1]");
    auto words = v.words();
    if (prob == 1.0) {
        for (auto& w : words) w = ~0ULL;
        v.mask_tail();
        return;
    }
    std::uint64_t frac =
        static_cast<std::uint64_t>(std::llround(std::ldexp(prob, kProbBits)));
    if (frac >= (1ULL << kProbBits)) frac = (1ULL << kProbBits) - 1;
    if (frac == 0) {
        for (auto& w : words) w = 0;
        return;
    }
    const int low = std::countr_zero(frac);
    frac >>= low;
    const int levels = kProbBits - low;
    for (auto& w : words) w = bernoulli_word(frac, levels, stream);
    v.mask_tail();
}

PairCounts pair_counts(const BitVec& a, const BitVec& b) {
    if (a.size() != b.size()) throw ContractError("pair_counts: length mismatch");
    PairCounts c;
    auto wa = a.words();
    auto wb = b.words();
    for (std::size_t i = 0; i < wa.size(); ++i) {
        c.n11 += std::popcount(wa[i] & wb[i]);
        c.n10 += std::popcount(wa[i] & ~wb[i]);
        c.n01 += std::popcount(~wa[i] & wb[i]);
    }
    c.n00 = a.size() - c.n11 - c.n10 - c.n01;
    return c;
}

}  // namespace covert
