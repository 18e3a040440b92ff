#ifndef COVERT_CHANNEL_HPP
#define COVERT_CHANNEL_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "covert/bitvec.hpp"
#include "covert/design.hpp"
#include "covert/rng.hpp"

namespace covert::channel {

// Binomial(n, p) accessed through its natural-log pmf.
struct WeightLaw {
    std::int64_t n = 0;
    double p_success = 0;

    double logpmf(std::int64_t w) const;
};

// y = x with each bit flipped independently with probability `crossover`.
BitVec bsc_transmit(const BitVec& x, double crossover, rng::Stream& stream);

// ln pmf of Binomial(n, p) at w via log-gamma (long double internally).
double binom_logpmf(std::int64_t n, double p, std::int64_t w);

// Exact total variation between the i.i.d. product laws Bernoulli(p0)^n and
// Bernoulli(p1)^n. Both densities depend on a vector only through its weight,
// so the sum collapses to the weight statistic; summation is compensated and
// fixed-order, hence deterministic.
double tv_product_bernoulli(std::int64_t n, double p0, double p1);

// Full distribution on {0,1}^B, indexed by the integer whose bit i is
// position i of the vector. Only for B <= 20.
struct MicroDistribution {
    int B = 0;
    std::vector<double> probs;

    double total() const;
};

// Product Bernoulli(q) law on {0,1}^B (the innocent micro law P0).
MicroDistribution micro_product_bernoulli(int B, double q);

// P1(z) = (1/N) sum_w q^{d_H(x_w, z)} (1-q)^{B - d_H(x_w, z)} under a uniform
// message prior over the given codewords.
MicroDistribution exact_p1_micro(std::span<const BitVec> codewords, double q);

double tv_micro(const MicroDistribution& a, const MicroDistribution& b);

// Ensemble-averaged active law: Binomial(n, rho * q) on the weight, i.e. the
// all-zero word through BSC(rho) then BSC(q).
WeightLaw ensemble_avg_p1(const design::CodeParams& params);

// Binary convolution a*b = a(1-b) + b(1-a).
inline double bconv(double a, double b) { return a * (1.0 - b) + b * (1.0 - a); }

}  // namespace covert::channel

#endif
