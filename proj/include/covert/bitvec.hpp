#ifndef COVERT_BITVEC_HPP
#define COVERT_BITVEC_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "covert/errors.hpp"
#include "covert/rng.hpp"

namespace covert {

// Packed bit vector, LSB-first within each 64-bit word. Bit i of the vector is
// bit (i % 64) of word (i / 64). Trailing bits of the last word are kept zero.
class BitVec {
  public:
    BitVec() : nbits_(0) {}
    explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    std::size_t num_words() const { return words_.size(); }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        const std::uint64_t mask = 1ULL << (i & 63);
        if (v)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::uint64_t x : words_) w += std::popcount(x);
        return w;
    }

    // Population count over bits [start, start + len) without copying.
    std::size_t weight_range(std::size_t start, std::size_t len) const {
        std::size_t w = 0;
        std::size_t i = start;
        const std::size_t end = start + len;
        while (i < end && (i & 63)) w += get(i++);
        while (i + 64 <= end) {
            w += std::popcount(words_[i >> 6]);
            i += 64;
        }
        while (i < end) w += get(i++);
        return w;
    }

    BitVec operator^(const BitVec& o) const {
        if (o.nbits_ != nbits_) throw ContractError("BitVec xor: length mismatch");
        BitVec r(nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] ^ o.words_[i];
        return r;
    }

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

    // Zeroes any bits beyond size() in the last word.
    void mask_tail() {
        if (nbits_ % 64 != 0 && !words_.empty())
            words_.back() &= (~0ULL) >> (64 - (nbits_ % 64));
    }

    // Sub-vector of `len` bits starting at `start`; word-copies when aligned.
    BitVec slice(std::size_t start, std::size_t len) const {
        BitVec r(len);
        if ((start & 63) == 0) {
            const std::size_t base = start >> 6;
            for (std::size_t w = 0; w < r.words_.size(); ++w) r.words_[w] = words_[base + w];
            r.mask_tail();
        } else {
            for (std::size_t i = 0; i < len; ++i) r.set(i, get(start + i));
        }
        return r;
    }

    // Copies `src` into bits [start, start + src.size()); `start` and the
    // destination beyond must already be zero-filled or overwritable.
    void place(std::size_t start, const BitVec& src) {
        if ((start & 63) == 0 && (src.size() & 63) == 0) {
            const std::size_t base = start >> 6;
            for (std::size_t w = 0; w < src.words_.size(); ++w) words_[base + w] = src.words_[w];
        } else {
            for (std::size_t i = 0; i < src.size(); ++i) set(start + i, src.get(i));
        }
    }

    std::string to_hex() const;
    static BitVec from_hex(const std::string& hex, std::size_t nbits);

    // 64-bit content hash (for reproducibility checks).
    std::uint64_t hash() const {
        std::uint64_t h = rng::mix64(nbits_ + 1);
        for (std::uint64_t w : words_) h = rng::mix64(h ^ w);
        return h;
    }

  private:
    std::size_t nbits_;
    std::vector<std::uint64_t> words_;
};

// Fills `v` with i.i.d. Bernoulli(prob) bits from the stream. The law is exact
// to 2^-40 in prob (dyadic probs with <= 8 fraction bits are exact); the path
// taken depends only on `prob`, so output is deterministic given the stream.
void fill_bernoulli(BitVec& v, double prob, rng::Stream& stream);

// Counts of (bit_a, bit_b) pairs between two equal-length vectors.
struct PairCounts {
    std::size_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;
};
PairCounts pair_counts(const BitVec& a, const BitVec& b);

}  // namespace covert

#endif
