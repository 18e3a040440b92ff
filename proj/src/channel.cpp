#include "covert/channel.hpp"

#include <cmath>
#include <string>

namespace covert::channel {

double WeightLaw::logpmf(std::int64_t w) const { return binom_logpmf(n, p_success, w); }

BitVec bsc_transmit(const BitVec& x, double crossover, rng::Stream& stream) {
    if (!(crossover >= 0.0 && crossover <= 0.5))
        throw ContractError("bsc_transmit: crossover outside [0, 1/2]");
    BitVec noise(x.size());
    fill_bernoulli(noise, crossover, stream);
    return x ^ noise;
}

double binom_logpmf(std::int64_t n, double p, std::int64_t w) {
    if (w < 0 || w > n) throw ContractError("binom_logpmf: w outside [0, n]");
    if (!(p > 0.0 && p < 1.0)) throw ContractError("binom_logpmf: p outside (0, 1)");
    // Long double keeps the lgamma cancellation error ~1e-10 absolute even at
    // n = 1e8 where the individual lgamma terms reach ~2e9.
    const long double ln = static_cast<long double>(n);
    const long double lw = static_cast<long double>(w);
    const long double lp = static_cast<long double>(p);
    const long double logc = lgammal(ln + 1) - lgammal(lw + 1) - lgammal(ln - lw + 1);
    return static_cast<double>(logc + lw * logl(lp) + (ln - lw) * log1pl(-lp));
}

double tv_product_bernoulli(std::int64_t n, double p0, double p1) {
    if (!(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0))
        throw ContractError("tv_product_bernoulli: probabilities outside [0, 1]");
    if (p0 == p1) return 0.0;
    auto pmf = [n](double p, std::int64_t w) -> double {
        if (p == 0.0) return w == 0 ? 1.0 : 0.0;
        if (p == 1.0) return w == n ? 1.0 : 0.0;
        return std::exp(binom_logpmf(n, p, w));
    };
    // Kahan-compensated fixed-order sum of |pmf0 - pmf1| over the weight.
    double sum = 0.0, comp = 0.0;
    for (std::int64_t w = 0; w <= n; ++w) {
        const double term = std::fabs(pmf(p0, w) - pmf(p1, w));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return 0.5 * sum;
}

double MicroDistribution::total() const {
    double sum = 0.0, comp = 0.0;
    for (double p : probs) {
        const double y = p - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

namespace {

void check_micro_scale(int B) {
    if (B < 1 || B > 20)
        throw ScaleError("micro distribution: B=" + std::to_string(B) +
                         " outside [1, 20] exactness cap");
}

}  // namespace

MicroDistribution micro_product_bernoulli(int B, double q) {
    check_micro_scale(B);
    MicroDistribution d;
    d.B = B;
    d.probs.resize(std::size_t(1) << B);
    for (std::size_t z = 0; z < d.probs.size(); ++z) {
        const int w = std::popcount(z);
        d.probs[z] = std::pow(q, w) * std::pow(1.0 - q, B - w);
    }
    return d;
}

MicroDistribution exact_p1_micro(std::span<const BitVec> codewords, double q) {
    if (codewords.empty()) throw ContractError("exact_p1_micro: empty codeword list");
    const int B = static_cast<int>(codewords.front().size());
    check_micro_scale(B);
    for (const auto& c : codewords)
        if (static_cast<int>(c.size()) != B)
            throw ContractError("exact_p1_micro: codeword lengths differ");

    MicroDistribution d;
    d.B = B;
    d.probs.assign(std::size_t(1) << B, 0.0);
    const double inv_n = 1.0 / static_cast<double>(codewords.size());
    // Precompute q^d (1-q)^{B-d} by Hamming distance.
    std::vector<double> by_dist(B + 1);
    for (int dist = 0; dist <= B; ++dist)
        by_dist[dist] = std::pow(q, dist) * std::pow(1.0 - q, B - dist);
    for (const auto& c : codewords) {
        const std::uint64_t cw = c.words().empty() ? 0 : c.words()[0];
        for (std::size_t z = 0; z < d.probs.size(); ++z)
            d.probs[z] += inv_n * by_dist[std::popcount(cw ^ z)];
    }
    return d;
}

double tv_micro(const MicroDistribution& a, const MicroDistribution& b) {
    if (a.B != b.B) throw ContractError("tv_micro: dimension mismatch");
    double sum = 0.0, comp = 0.0;
    for (std::size_t z = 0; z < a.probs.size(); ++z) {
        const double term = std::fabs(a.probs[z] - b.probs[z]);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return 0.5 * sum;
}

WeightLaw ensemble_avg_p1(const design::CodeParams& params) {
    return WeightLaw{params.n, bconv(params.rho, params.channel.q)};
}

}  // namespace covert::channel
