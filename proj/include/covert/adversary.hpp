#ifndef COVERT_ADVERSARY_HPP
#define COVERT_ADVERSARY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "covert/channel.hpp"
#include "covert/codec.hpp"

namespace covert::adversary {

struct DetectionReport {
    std::string detector_name;
    double alpha = 0;  // false alarm
    double beta = 0;   // missed detection
    std::optional<double> tv_reference;
    std::int64_t trials = 0;  // 0 for exact computations
    double ci_halfwidth_alpha = 0;  // 3 sigma binomial half-widths
    double ci_halfwidth_beta = 0;

    double sum() const { return alpha + beta; }
    std::string to_json() const;
};

struct RadiometerDesign {
    std::int64_t threshold = 0;  // accuse iff weight > threshold
    double alpha = 0;
    double beta = 0;
};

// Neyman-Pearson weight threshold between Binomial(n, q) (H0) and
// Binomial(n, rho*q) (H1), minimizing exact alpha + beta; ties resolved toward
// the smallest alpha (largest threshold).
RadiometerDesign radiometer_design(std::int64_t n, double q, double rho);

struct LrtResult {
    double alpha = 0;
    double beta = 0;
    double tv = 0;  // alpha + beta == 1 - tv exactly
};

// Optimal deterministic test at micro scale: accuse whenever P1(z) > P0(z),
// ties to H0.
LrtResult lrt_exact_micro(const channel::MicroDistribution& P0,
                          const channel::MicroDistribution& P1);

// Accuses when any chunk's weight exceeds the per-chunk Neyman-Pearson
// threshold between Binomial(B, q) and Binomial(B, rho*q) at false-alarm level
// `per_chunk_alpha` (default 1/(2L), Bonferroni-style).
struct ChunkWeightDetector {
    int L = 0;
    std::int64_t B = 0;
    std::int64_t threshold = 0;
    double per_chunk_alpha = 0;
    double realized_per_chunk_alpha = 0;

    bool accuse(const BitVec& z) const;
};

ChunkWeightDetector chunk_weight_detector(const design::CodeParams& params,
                                          std::optional<double> per_chunk_alpha = std::nullopt);

using Detector = std::function<bool(const BitVec&)>;

// Monte Carlo detection experiment against a concrete code: H0 samples
// BSC(q) noise on the zero word, H1 encodes a uniform nonzero message and
// adds BSC(q) noise. Trial t draws from a stream keyed by (seed, hypothesis,
// t), so runs are reproducible and order-independent.
DetectionReport detect_experiment(const Detector& detector, const std::string& name,
                                  const codec::ConcatCode& code, std::int64_t trials,
                                  std::uint64_t seed,
                                  std::optional<double> tv_reference = std::nullopt);

// Same experiment against a pair of explicit micro laws (B <= 20).
DetectionReport detect_experiment_micro(const Detector& detector, const std::string& name,
                                        const channel::MicroDistribution& P0,
                                        const channel::MicroDistribution& P1,
                                        std::int64_t trials, std::uint64_t seed);

// Inner codebooks for the concentrated counterexample: every codeword has
// i.i.d. Bernoulli(1/2) bits in chunk 0 (the first sqrt(n) positions when
// B = sqrt(n)) and zeros in all later chunks.
codec::ConcatCode build_concentrated_code(const design::CodeParams& params,
                                          std::uint64_t master_seed);

}  // namespace covert::adversary

#endif
