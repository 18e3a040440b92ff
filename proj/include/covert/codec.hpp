#ifndef COVERT_CODEC_HPP
#define COVERT_CODEC_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "covert/bitvec.hpp"
#include "covert/design.hpp"
#include "covert/innercode.hpp"
#include "covert/rs.hpp"

namespace covert::codec {

// Systematic RS outer code over GF(2^m) concatenated with L random inner
// codebooks, all reproducible from (params, master_seed).
struct ConcatCode {
    design::CodeParams params;
    rs::RsCode outer;
    std::vector<inner::InnerCodebook> chunks;
    std::uint64_t master_seed = 0;

    int message_bits() const { return params.l1 * params.m; }
    std::uint64_t stored_bits() const {
        return std::uint64_t(params.L) * (std::uint64_t(1) << params.m) *
               std::uint64_t(params.B);
    }
};

using ChunkGenerator =
    std::function<inner::InnerCodebook(const design::CodeParams&, int, std::uint64_t)>;

ConcatCode build_code(const design::CodeParams& params, std::uint64_t master_seed);

// Same assembly with caller-supplied inner codebooks (adversarial variants in
// the detection experiments).
ConcatCode build_code_with(const design::CodeParams& params, std::uint64_t master_seed,
                           const ChunkGenerator& gen);

// Splits l1*m message bits into l1 field symbols, big-endian within each
// symbol, symbol i from bits [i*m, (i+1)*m).
std::vector<rs::Elem> message_to_symbols(const design::CodeParams& params, const BitVec& bits);
BitVec symbols_to_message(const design::CodeParams& params, std::span<const rs::Elem> symbols);

// t = 0 transmits the all-zero word; t = 1 requires a nonzero message (the
// zero message is reserved for silence).
BitVec encode(const ConcatCode& code, const BitVec& message_bits, int t);

struct TransmissionResult {
    int t_hat = 0;
    std::optional<BitVec> message;  // absent iff t_hat = 0 or RS failure
    std::vector<inner::DecodeOutcome> chunk_outcomes;
    enum class RsStatus { ok, failure, not_attempted } rs_status = RsStatus::not_attempted;
    std::uint64_t decode_work = 0;  // codeword scans * B
};

// Chunk-wise typicality decode, silence thresholding, then RS
// errors-and-erasures over the surviving symbols.
TransmissionResult decode(const ConcatCode& code, const BitVec& y);

// Chunk outcomes as fixed-width tokens: 'S', 'E', or ceil(m/4) hex digits.
std::string outcome_string(const TransmissionResult& result, int m);

struct ThroughputReport {
    double r_nominal = 0;
    double r_eff = 0;
    double gap = 0;
    double encode_ops = 0;        // O(sqrt(n) log sqrt(n)) figure
    double decode_work_bound = 0; // n * 2^m
    double space_bits = 0;        // L * 2^m * B
    double complexity_exponent = 0;  // r_u k1 + 1
};

ThroughputReport throughput_report(const ConcatCode& code);

}  // namespace covert::codec

#endif
