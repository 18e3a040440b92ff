#include "covert/codec.hpp"

#include <algorithm>
#include <cmath>

namespace covert::codec {

ConcatCode build_code_with(const design::CodeParams& params, std::uint64_t master_seed,
                           const ChunkGenerator& gen) {
    ConcatCode code;
    code.params = params;
    code.master_seed = master_seed;
    code.outer = rs::rs_build(gf::field_build(params.m), params.L, params.l1);
    code.chunks.reserve(params.L);
    for (int i = 0; i < params.L; ++i) code.chunks.push_back(gen(params, i, master_seed));
    return code;
}

ConcatCode build_code(const design::CodeParams& params, std::uint64_t master_seed) {
    return build_code_with(params, master_seed,
                           [](const design::CodeParams& p, int chunk, std::uint64_t seed) {
                               return inner::inner_generate(p, chunk, seed);
                           });
}

std::vector<rs::Elem> message_to_symbols(const design::CodeParams& params, const BitVec& bits) {
    if (static_cast<int>(bits.size()) != params.l1 * params.m)
        throw ContractError("message must carry exactly l1*m bits");
    std::vector<rs::Elem> syms(params.l1, 0);
    for (int i = 0; i < params.l1; ++i)
        for (int b = 0; b < params.m; ++b)
            if (bits.get(std::size_t(i) * params.m + b))
                syms[i] |= rs::Elem(1) << (params.m - 1 - b);
    return syms;
}

BitVec symbols_to_message(const design::CodeParams& params, std::span<const rs::Elem> symbols) {
    if (static_cast<int>(symbols.size()) != params.l1)
        throw ContractError("symbol vector must have length l1");
    BitVec bits(std::size_t(params.l1) * params.m);
    for (int i = 0; i < params.l1; ++i)
        for (int b = 0; b < params.m; ++b)
            if (symbols[i] & (rs::Elem(1) << (params.m - 1 - b)))
                bits.set(std::size_t(i) * params.m + b, true);
    return bits;
}

BitVec encode(const ConcatCode& code, const BitVec& message_bits, int t) {
    const auto& p = code.params;
    const std::size_t n = static_cast<std::size_t>(p.n);
    if (t == 0) return BitVec(n);
    if (t != 1) throw ContractError("encode: t must be 0 or 1");
    if (message_bits.weight() == 0)
        throw ContractError("encode: the zero message is reserved for silence (t = 0)");
    const auto msg_syms = message_to_symbols(p, message_bits);
    const auto codeword_syms = rs::rs_encode(code.outer, msg_syms);
    BitVec out(n);
    for (int i = 0; i < p.L; ++i)
        out.place(std::size_t(i) * p.B, code.chunks[i].codewords[codeword_syms[i]]);
    return out;
}

TransmissionResult decode(const ConcatCode& code, const BitVec& y) {
    const auto& p = code.params;
    if (y.size() != static_cast<std::size_t>(p.n)) throw ContractError("decode: |y| != n");

    TransmissionResult res;
    res.chunk_outcomes.reserve(p.L);
    // Chunks count toward the silence tally when the rule outputs Silence or
    // when their weight sits below the silent band entirely (an all-zero or
    // near-zero chunk is evidence of silence, not of transmission; the rule
    // itself files it under declared error).
    const auto silent_band =
        inner::count_interval(p.channel.p, p.dy1, p.B);
    int silent = 0;
    for (int i = 0; i < p.L; ++i) {
        const BitVec chunk = y.slice(std::size_t(i) * p.B, p.B);
        const auto outcome = inner::inner_decode(code.chunks[i], p, chunk, &res.decode_work);
        if (outcome.kind == inner::DecodeOutcome::Kind::Silence ||
            (outcome.kind == inner::DecodeOutcome::Kind::DeclaredError &&
             static_cast<std::int64_t>(chunk.weight()) < silent_band.lo))
            ++silent;
        res.chunk_outcomes.push_back(outcome);
    }

    // Global transmission-status rule: essentially-all-silent chunks declare
    // T = 0; otherwise silences join declared errors as RS erasures.
    if (silent >= p.L - p.l2 / 2) {
        res.t_hat = 0;
        res.rs_status = TransmissionResult::RsStatus::not_attempted;
        return res;
    }
    res.t_hat = 1;
    std::vector<rs::Elem> received(p.L, 0);
    std::vector<std::size_t> erasures;
    for (int i = 0; i < p.L; ++i) {
        const auto& oc = res.chunk_outcomes[i];
        if (oc.is_message())
            received[i] = oc.message;
        else
            erasures.push_back(static_cast<std::size_t>(i));
    }
    const auto decoded = rs::rs_decode(code.outer, received, erasures);
    if (decoded) {
        res.rs_status = TransmissionResult::RsStatus::ok;
        res.message = symbols_to_message(p, *decoded);
    } else {
        res.rs_status = TransmissionResult::RsStatus::failure;
    }
    return res;
}

std::string outcome_string(const TransmissionResult& result, int m) {
    const int width = (m + 3) / 4;
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(result.chunk_outcomes.size() * width);
    for (const auto& oc : result.chunk_outcomes) {
        switch (oc.kind) {
            case inner::DecodeOutcome::Kind::Silence:
                out.append(width, 'S');
                break;
            case inner::DecodeOutcome::Kind::DeclaredError:
                out.append(width, 'E');
                break;
            case inner::DecodeOutcome::Kind::Message:
                for (int j = width - 1; j >= 0; --j)
                    out.push_back(digits[(oc.message >> (4 * j)) & 0xF]);
                break;
        }
    }
    return out;
}

ThroughputReport throughput_report(const ConcatCode& code) {
    const auto& p = code.params;
    ThroughputReport rep;
    rep.r_nominal = p.r;
    rep.r_eff = p.r_eff;
    rep.gap = rep.r_nominal - rep.r_eff;
    const double sqrtn = p.sqrt_n();
    rep.encode_ops = sqrtn * std::log2(sqrtn);
    rep.space_bits = static_cast<double>(code.stored_bits());
    rep.decode_work_bound = static_cast<double>(p.n) * std::exp2(p.m);
    rep.complexity_exponent = p.r_u * p.k1 + 1.0;
    return rep;
}

}  // namespace covert::codec
