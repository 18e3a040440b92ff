#include "covert/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace covert::adversary {

std::string DetectionReport::to_json() const {
    nlohmann::json j;
    j["detector"] = detector_name;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["sum"] = sum();
    if (tv_reference) j["tv_reference"] = *tv_reference;
    j["trials"] = trials;
    j["ci_halfwidth_alpha"] = ci_halfwidth_alpha;
    j["ci_halfwidth_beta"] = ci_halfwidth_beta;
    return j.dump();
}

RadiometerDesign radiometer_design(std::int64_t n, double q, double rho) {
    if (!(q > 0.0 && q < 0.5)) throw ContractError("radiometer_design: q outside (0, 1/2)");
    if (!(rho >= 0.0 && rho < 1.0)) throw ContractError("radiometer_design: rho outside [0,1)");
    const double p1 = channel::bconv(rho, q);

    // alpha(T) + beta(T) = P0(w > T) + P1(w <= T); one pass over T accumulating
    // both CDFs. The likelihood ratio is increasing in weight (p1 >= q), so
    // threshold tests are optimal among all tests on the weight.
    RadiometerDesign best;
    double best_sum = 2.0;
    double cdf0 = 0.0, cdf1 = 0.0, c0 = 0.0, c1 = 0.0;
    auto kahan_add = [](double& sum, double& comp, double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    // T = -1 (always accuse): alpha = 1, beta = 0.
    best = {-1, 1.0, 0.0};
    best_sum = 1.0;
    for (std::int64_t t = 0; t <= n; ++t) {
        kahan_add(cdf0, c0, std::exp(channel::binom_logpmf(n, q, t)));
        if (rho == 0.0)
            cdf1 = cdf0;
        else
            kahan_add(cdf1, c1, std::exp(channel::binom_logpmf(n, p1, t)));
        const double alpha = std::max(0.0, 1.0 - cdf0);
        const double beta = std::min(1.0, cdf1);
        // Ties break toward the larger threshold (minimal alpha).
        if (alpha + beta <= best_sum + 1e-15) {
            best = {t, alpha, beta};
            best_sum = std::min(best_sum, alpha + beta);
        }
    }
    return best;
}

LrtResult lrt_exact_micro(const channel::MicroDistribution& P0,
                          const channel::MicroDistribution& P1) {
    if (P0.B != P1.B) throw ContractError("lrt_exact_micro: dimension mismatch");
    LrtResult r;
    double alpha = 0, beta = 0, tv = 0, ca = 0, cb = 0, ct = 0;
    auto kahan_add = [](double& sum, double& comp, double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };
    for (std::size_t z = 0; z < P0.probs.size(); ++z) {
        if (P1.probs[z] > P0.probs[z])
            kahan_add(alpha, ca, P0.probs[z]);  // accused under H0
        else
            kahan_add(beta, cb, P1.probs[z]);  // missed under H1 (ties to H0)
        kahan_add(tv, ct, std::fabs(P0.probs[z] - P1.probs[z]));
    }
    r.alpha = alpha;
    r.beta = beta;
    r.tv = 0.5 * tv;
    return r;
}

bool ChunkWeightDetector::accuse(const BitVec& z) const {
    if (z.size() != static_cast<std::size_t>(L) * static_cast<std::size_t>(B))
        throw ContractError("chunk_weight_detector: |z| != L*B");
    for (int i = 0; i < L; ++i) {
        const std::size_t w =
            z.weight_range(static_cast<std::size_t>(i) * B, static_cast<std::size_t>(B));
        if (static_cast<std::int64_t>(w) > threshold) return true;
    }
    return false;
}

ChunkWeightDetector chunk_weight_detector(const design::CodeParams& params,
                                          std::optional<double> per_chunk_alpha) {
    ChunkWeightDetector det;
    det.L = params.L;
    det.B = params.B;
    det.per_chunk_alpha = per_chunk_alpha.value_or(1.0 / (2.0 * params.L));
    // Smallest threshold whose H0 exceedance stays within the per-chunk
    // budget; scanning from the top keeps it exact.
    const double q = params.channel.q;
    double tail = 0.0, comp = 0.0;
    std::int64_t threshold = det.B;
    double realized = 0.0;
    for (std::int64_t w = det.B; w >= 0; --w) {
        const double term = std::exp(channel::binom_logpmf(det.B, q, w));
        const double y = term - comp;
        const double t = tail + y;
        comp = (t - tail) - y;
        tail = t;
        // tail = P(W >= w) = P(W > w - 1).
        if (tail > det.per_chunk_alpha) break;
        threshold = w - 1;
        realized = tail;
    }
    det.threshold = threshold;
    det.realized_per_chunk_alpha = realized;
    return det;
}

namespace {

DetectionReport finish_report(const std::string& name, std::int64_t trials,
                              std::int64_t false_alarms, std::int64_t misses,
                              std::optional<double> tv_reference) {
    DetectionReport rep;
    rep.detector_name = name;
    rep.trials = trials;
    rep.alpha = static_cast<double>(false_alarms) / trials;
    rep.beta = static_cast<double>(misses) / trials;
    rep.ci_halfwidth_alpha = 3.0 * std::sqrt(rep.alpha * (1.0 - rep.alpha) / trials);
    rep.ci_halfwidth_beta = 3.0 * std::sqrt(rep.beta * (1.0 - rep.beta) / trials);
    rep.tv_reference = tv_reference;
    return rep;
}

}  // namespace

DetectionReport detect_experiment(const Detector& detector, const std::string& name,
                                  const codec::ConcatCode& code, std::int64_t trials,
                                  std::uint64_t seed, std::optional<double> tv_reference) {
    if (trials < 1000) throw ContractError("detect_experiment: trials must be >= 1000");
    const auto& p = code.params;
    const std::size_t n = static_cast<std::size_t>(p.n);
    const int msg_bits = code.message_bits();

    std::int64_t false_alarms = 0, misses = 0;
    const BitVec zero(n);
    for (std::int64_t t = 0; t < trials; ++t) {
        rng::Stream s0 = rng::substream(seed, 0, static_cast<std::uint64_t>(t));
        if (detector(channel::bsc_transmit(zero, p.channel.q, s0))) ++false_alarms;

        rng::Stream s1 = rng::substream(seed, 1, static_cast<std::uint64_t>(t));
        BitVec msg(msg_bits);
        do {
            fill_bernoulli(msg, 0.5, s1);
        } while (msg.weight() == 0);  // zero message is reserved for silence
        const BitVec x = codec::encode(code, msg, 1);
        if (!detector(channel::bsc_transmit(x, p.channel.q, s1))) ++misses;
    }
    return finish_report(name, trials, false_alarms, misses, tv_reference);
}

DetectionReport detect_experiment_micro(const Detector& detector, const std::string& name,
                                        const channel::MicroDistribution& P0,
                                        const channel::MicroDistribution& P1,
                                        std::int64_t trials, std::uint64_t seed) {
    if (trials < 1000) throw ContractError("detect_experiment: trials must be >= 1000");
    if (P0.B != P1.B) throw ContractError("detect_experiment_micro: dimension mismatch");
    const int B = P0.B;
    // Inverse-CDF sampling over the 2^B states.
    auto make_cdf = [](const channel::MicroDistribution& d) {
        std::vector<double> cdf(d.probs.size());
        double acc = 0;
        for (std::size_t z = 0; z < d.probs.size(); ++z) {
            acc += d.probs[z];
            cdf[z] = acc;
        }
        cdf.back() = 1.0;
        return cdf;
    };
    const auto cdf0 = make_cdf(P0);
    const auto cdf1 = make_cdf(P1);
    auto sample = [B](const std::vector<double>& cdf, rng::Stream& s) {
        const double u = s.next_unit();
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t z = static_cast<std::size_t>(it - cdf.begin());
        BitVec v(B);
        for (int b = 0; b < B; ++b)
            if (z & (std::size_t(1) << b)) v.set(b, true);
        return v;
    };

    std::int64_t false_alarms = 0, misses = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        rng::Stream s0 = rng::substream(seed, 0, static_cast<std::uint64_t>(t));
        if (detector(sample(cdf0, s0))) ++false_alarms;
        rng::Stream s1 = rng::substream(seed, 1, static_cast<std::uint64_t>(t));
        if (!detector(sample(cdf1, s1))) ++misses;
    }
    return finish_report(name, trials, false_alarms, misses, std::nullopt);
}

codec::ConcatCode build_concentrated_code(const design::CodeParams& params,
                                          std::uint64_t master_seed) {
    return codec::build_code_with(
        params, master_seed,
        [](const design::CodeParams& p, int chunk, std::uint64_t seed) {
            inner::InnerCodebook cb;
            cb.chunk_index = chunk;
            cb.B = p.B;
            cb.num_codewords = 1 << p.m;
            cb.rho = chunk == 0 ? 0.5 : 0.0;
            cb.master_seed = seed;
            cb.codewords.reserve(cb.num_codewords);
            for (int w = 0; w < cb.num_codewords; ++w) {
                BitVec v(static_cast<std::size_t>(p.B));
                if (chunk == 0) {
                    rng::Stream s = rng::substream(seed, static_cast<std::uint64_t>(chunk) + 1,
                                                   static_cast<std::uint64_t>(w) + 1);
                    fill_bernoulli(v, 0.5, s);
                }
                cb.codewords.push_back(std::move(v));
            }
            return cb;
        });
}

}  // namespace covert::adversary
