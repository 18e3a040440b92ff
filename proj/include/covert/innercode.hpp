#ifndef COVERT_INNERCODE_HPP
#define COVERT_INNERCODE_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "covert/bitvec.hpp"
#include "covert/design.hpp"
#include "covert/rng.hpp"

namespace covert::inner {

// One chunk's random low-weight codebook: 2^m codewords of B i.i.d.
// Bernoulli(rho) bits, a pure function of (master_seed, chunk_index, B, rho).
struct InnerCodebook {
    int chunk_index = 0;
    std::int64_t B = 0;
    int num_codewords = 0;
    double rho = 0;
    std::uint64_t master_seed = 0;
    std::vector<BitVec> codewords;

    std::uint64_t content_hash() const;
};

InnerCodebook inner_generate(const design::CodeParams& params, int chunk_index,
                             std::uint64_t master_seed,
                             std::uint64_t bit_cap = std::uint64_t(1) << 30);

// Core generator used by inner_generate and by test fixtures that do not have
// a full CodeParams.
InnerCodebook generate_codebook(std::int64_t B, int num_codewords, double rho,
                                std::uint64_t master_seed, int chunk_index,
                                std::uint64_t bit_cap = std::uint64_t(1) << 30);

// Exact joint type of a (word, received word) pair: integer pair counts over
// B positions, fractions derived on demand.
struct PairStats {
    std::int64_t n00 = 0, n01 = 0, n10 = 0, n11 = 0;
    std::int64_t B = 0;

    double f00() const { return double(n00) / B; }
    double f01() const { return double(n01) / B; }
    double f10() const { return double(n10) / B; }
    double f11() const { return double(n11) / B; }
    double fx1() const { return double(n10 + n11) / B; }
    double fy1() const { return double(n01 + n11) / B; }
};

PairStats pair_stats(const BitVec& x, const BitVec& y);

// Inclusive integer count bounds for a fractional interval
// [center (1-delta), center (1+delta)] over B positions. Real endpoints are
// mapped to counts by ceil/floor with a 1e-9 guard so exact boundary counts
// stay inside (the intervals are closed).
struct CountInterval {
    std::int64_t lo = 0, hi = -1;
    bool contains(std::int64_t c) const { return c >= lo && c <= hi; }
};
CountInterval count_interval(double center_fraction, double delta, std::int64_t B);

enum class TypSet { Y_silent, Y_active, Z_active };

bool typicality(const design::CodeParams& params, const BitVec& v, TypSet set);

enum class Role { bob, willie };

bool cond_typicality(const design::CodeParams& params, const BitVec& x, const BitVec& yz,
                     Role role);

struct DecodeOutcome {
    enum class Kind { Silence, Message, DeclaredError };
    Kind kind = Kind::Silence;
    std::uint32_t message = 0;  // meaningful only when kind == Message

    bool is_message() const { return kind == Kind::Message; }
};

// The chunk decoding rule: silence band, unique conditionally typical
// codeword, collision, or declared error. One scan of all 2^m codewords when
// the received chunk is in the active typical set. `work_counter`, when
// given, accrues (codewords scanned) * B.
DecodeOutcome inner_decode(const InnerCodebook& cb, const design::CodeParams& params,
                           const BitVec& y, std::uint64_t* work_counter = nullptr);

struct InfoPair {
    double I = 0;  // empirical mutual information, bits
    double D = 0;  // empirical KL divergence to Bernoulli(rho), bits
};

// Measures on an explicit pair of vectors.
InfoPair empirical_info(const BitVec& x, const BitVec& z, double rho);

// Type-level evaluation from the fractional triple (f10, f11, fz1); used by
// the design verifiers on box grids where fractions need not be multiples of
// 1/B. 0 log 0 = 0 throughout.
InfoPair empirical_info_type(double f10, double f11, double fz1, double rho);

// Exact log2 probability that a Bernoulli(rho)^B word lands in the
// conditional type class with counts (c10, c11) against a fixed z of weight
// cz1:  C(cz1, c11) rho^c11 (1-rho)^c01 * C(B-cz1, c10) rho^c10 (1-rho)^c00.
double type_class_log2prob_counts(std::int64_t B, std::int64_t c10, std::int64_t c11,
                                  std::int64_t cz1, double rho);

// Fraction-based wrapper; all of B*f10, B*f11, B*fz1 must be integral.
double type_class_prob(const design::CodeParams& params, double f10, double f11, double fz1);

// Debug dump: one "index<TAB>hex" row per codeword. Codebooks are normally
// regenerated from the seed, never serialized.
void dump_codebook(const InnerCodebook& cb, std::ostream& os);

}  // namespace covert::inner

#endif
