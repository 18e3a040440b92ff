#include "covert/innercode.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "covert/channel.hpp"

namespace covert::inner {

std::uint64_t InnerCodebook::content_hash() const {
    std::uint64_t h = rng::mix64(static_cast<std::uint64_t>(num_codewords));
    for (const auto& c : codewords) h = rng::mix64(h ^ c.hash());
    return h;
}

InnerCodebook generate_codebook(std::int64_t B, int num_codewords, double rho,
                                std::uint64_t master_seed, int chunk_index,
                                std::uint64_t bit_cap) {
    if (!(rho >= 0.0 && rho < 1.0)) throw ContractError("generate_codebook: rho outside [0,1)");
    const std::uint64_t bits =
        static_cast<std::uint64_t>(num_codewords) * static_cast<std::uint64_t>(B);
    if (bits > bit_cap)
        throw ScaleError("codebook of " + std::to_string(bits) + " bits exceeds cap of " +
                         std::to_string(bit_cap));
    InnerCodebook cb;
    cb.chunk_index = chunk_index;
    cb.B = B;
    cb.num_codewords = num_codewords;
    cb.rho = rho;
    cb.master_seed = master_seed;
    cb.codewords.reserve(num_codewords);
    for (int w = 0; w < num_codewords; ++w) {
        // Per-codeword counter stream keyed by (master, chunk, codeword).
        rng::Stream s =
            rng::substream(master_seed, static_cast<std::uint64_t>(chunk_index) + 1,
                           static_cast<std::uint64_t>(w) + 1);
        BitVec v(static_cast<std::size_t>(B));
        fill_bernoulli(v, rho, s);
        cb.codewords.push_back(std::move(v));
    }
    return cb;
}

InnerCodebook inner_generate(const design::CodeParams& params, int chunk_index,
                             std::uint64_t master_seed, std::uint64_t bit_cap) {
    if (chunk_index < 0 || chunk_index >= params.L)
        throw ContractError("inner_generate: chunk index out of range");
    return generate_codebook(params.B, 1 << params.m, params.rho, master_seed, chunk_index,
                             bit_cap);
}

PairStats pair_stats(const BitVec& x, const BitVec& y) {
    const PairCounts c = pair_counts(x, y);
    PairStats s;
    s.n00 = static_cast<std::int64_t>(c.n00);
    s.n01 = static_cast<std::int64_t>(c.n01);
    s.n10 = static_cast<std::int64_t>(c.n10);
    s.n11 = static_cast<std::int64_t>(c.n11);
    s.B = static_cast<std::int64_t>(x.size());
    return s;
}

CountInterval count_interval(double center_fraction, double delta, std::int64_t B) {
    const double lo = static_cast<double>(B) * center_fraction * (1.0 - delta);
    const double hi = static_cast<double>(B) * center_fraction * (1.0 + delta);
    CountInterval iv;
    iv.lo = static_cast<std::int64_t>(std::ceil(lo - 1e-9));
    iv.hi = static_cast<std::int64_t>(std::floor(hi + 1e-9));
    if (iv.lo < 0) iv.lo = 0;
    if (iv.hi > B) iv.hi = B;
    return iv;
}

bool typicality(const design::CodeParams& params, const BitVec& v, TypSet set) {
    if (static_cast<std::int64_t>(v.size()) != params.B)
        throw ContractError("typicality: vector length != B");
    const double p = params.channel.p;
    const double q = params.channel.q;
    double center = 0, delta = 0;
    switch (set) {
        case TypSet::Y_silent:
            center = p;
            delta = params.dy1;
            break;
        case TypSet::Y_active:
            center = channel::bconv(params.rho, p);
            delta = params.dy1;
            break;
        case TypSet::Z_active:
            center = channel::bconv(params.rho, q);
            delta = params.dz1;
            break;
    }
    return count_interval(center, delta, params.B)
        .contains(static_cast<std::int64_t>(v.weight()));
}

bool cond_typicality(const design::CodeParams& params, const BitVec& x, const BitVec& yz,
                     Role role) {
    if (x.size() != yz.size()) throw ContractError("cond_typicality: length mismatch");
    if (static_cast<std::int64_t>(x.size()) != params.B)
        throw ContractError("cond_typicality: vector length != B");
    const double base = role == Role::bob ? params.channel.p : params.channel.q;
    const double d10 = role == Role::bob ? params.dxy10 : params.dxz10;
    const double d11 = role == Role::bob ? params.dxy11 : params.dxz11;
    const PairCounts c = pair_counts(x, yz);
    return count_interval(params.rho * base, d10, params.B)
               .contains(static_cast<std::int64_t>(c.n10)) &&
           count_interval(params.rho * (1.0 - base), d11, params.B)
               .contains(static_cast<std::int64_t>(c.n11));
}

DecodeOutcome inner_decode(const InnerCodebook& cb, const design::CodeParams& params,
                           const BitVec& y, std::uint64_t* work_counter) {
    if (static_cast<std::int64_t>(y.size()) != params.B)
        throw ContractError("inner_decode: |y| != B");
    const bool in_active = typicality(params, y, TypSet::Y_active);
    if (in_active) {
        // Case 2: scan the codebook for conditionally typical codewords.
        int hits = 0;
        std::uint32_t hit_w = 0;
        for (int w = 0; w < cb.num_codewords; ++w) {
            if (work_counter) *work_counter += static_cast<std::uint64_t>(cb.B);
            if (cond_typicality(params, cb.codewords[w], y, Role::bob)) {
                if (++hits >= 2) return {DecodeOutcome::Kind::DeclaredError, 0};
                hit_w = static_cast<std::uint32_t>(w);
            }
        }
        if (hits == 1) return {DecodeOutcome::Kind::Message, hit_w};
        return {DecodeOutcome::Kind::Silence, 0};  // case 2c
    }
    if (typicality(params, y, TypSet::Y_silent))
        return {DecodeOutcome::Kind::Silence, 0};  // case 1
    return {DecodeOutcome::Kind::DeclaredError, 0};  // case 3
}

namespace {

inline double xlog2x_over(double a, double b) {
    // a * log2(a/b) with the 0 log 0 = 0 convention.
    if (a == 0.0) return 0.0;
    return a * std::log2(a / b);
}

}  // namespace

InfoPair empirical_info_type(double f10, double f11, double fz1, double rho) {
    const double fx1 = f10 + f11;
    const double fx0 = 1.0 - fx1;
    const double fz0 = 1.0 - fz1;
    const double f01 = fz1 - f11;
    const double f00 = fz0 - f10;
    if (f01 < -1e-15 || f00 < -1e-15)
        throw ContractError("empirical_info_type: inconsistent fractional type");
    if ((rho == 0.0 && fx1 > 0.0) || (rho == 1.0 && fx0 > 0.0))
        throw DomainError("empirical_info: rho in {0,1} with nonconforming x");
    InfoPair r;
    r.I = xlog2x_over(f00, fx0 * fz0) + xlog2x_over(f01, fx0 * fz1) +
          xlog2x_over(f10, fx1 * fz0) + xlog2x_over(f11, fx1 * fz1);
    r.D = xlog2x_over(fx0, 1.0 - rho) + xlog2x_over(fx1, rho);
    return r;
}

InfoPair empirical_info(const BitVec& x, const BitVec& z, double rho) {
    const PairStats s = pair_stats(x, z);
    return empirical_info_type(s.f10(), s.f11(), s.fy1(), rho);
}

double type_class_log2prob_counts(std::int64_t B, std::int64_t c10, std::int64_t c11,
                                  std::int64_t cz1, double rho) {
    if (cz1 < 0 || cz1 > B) throw ContractError("type_class_prob: cz1 outside [0, B]");
    if (c11 < 0 || c11 > cz1 || c10 < 0 || c10 > B - cz1)
        throw ContractError("type_class_prob: counts inconsistent with z weight");
    if (!(rho > 0.0 && rho < 1.0)) {
        // Degenerate bias: the all-zero class has probability one.
        if (rho == 0.0) return (c10 == 0 && c11 == 0) ? 0.0 : -HUGE_VAL;
        throw ContractError("type_class_prob: rho outside [0, 1)");
    }
    auto log2_choose = [](std::int64_t n, std::int64_t k) {
        return static_cast<double>(
            (lgammal(static_cast<long double>(n) + 1) - lgammal(static_cast<long double>(k) + 1) -
             lgammal(static_cast<long double>(n - k) + 1)) /
            logl(2.0L));
    };
    const std::int64_t c01 = cz1 - c11;
    const std::int64_t c00 = B - cz1 - c10;
    return log2_choose(cz1, c11) + log2_choose(B - cz1, c10) +
           static_cast<double>(c10 + c11) * std::log2(rho) +
           static_cast<double>(c00 + c01) * std::log2(1.0 - rho);
}

namespace {

std::int64_t integral_count(double fraction, std::int64_t B, const char* name) {
    const double raw = fraction * static_cast<double>(B);
    const std::int64_t c = static_cast<std::int64_t>(std::llround(raw));
    if (std::fabs(raw - static_cast<double>(c)) > 1e-6)
        throw ContractError(std::string("type_class_prob: B * ") + name + " is not integral");
    return c;
}

}  // namespace

double type_class_prob(const design::CodeParams& params, double f10, double f11, double fz1) {
    const std::int64_t B = params.B;
    return type_class_log2prob_counts(B, integral_count(f10, B, "f10"),
                                      integral_count(f11, B, "f11"),
                                      integral_count(fz1, B, "fz1"), params.rho);
}

void dump_codebook(const InnerCodebook& cb, std::ostream& os) {
    for (int w = 0; w < cb.num_codewords; ++w)
        os << w << '\t' << cb.codewords[w].to_hex() << '\n';
}

}  // namespace covert::inner
