#include "covert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "covert/channel.hpp"
#include "covert/innercode.hpp"

namespace covert::design {

CornerReport verify_corner_points(double q, double rho, double d10, double d11, int grid_steps,
                                  std::optional<double> eps_d) {
    if (grid_steps < 2) throw ContractError("verify_corner_points: grid_steps must be >= 2");
    if (!(q > 0.0 && q < 0.5 && rho > 0.0 && rho < 1.0))
        throw ContractError("verify_corner_points: bad (q, rho)");
    CornerReport rep;
    rep.q = q;
    rep.rho = rho;
    rep.d10 = d10;
    rep.d11 = d11;
    rep.grid_steps = grid_steps;

    const double fz1 = channel::bconv(rho, q);
    const double lo10 = rho * q * (1.0 - d10), hi10 = rho * q * (1.0 + d10);
    const double lo11 = rho * (1.0 - q) * (1.0 - d11), hi11 = rho * (1.0 - q) * (1.0 + d11);

    rep.max_value = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_steps; ++i) {
        const double f10 =
            grid_steps == 1 ? lo10 : lo10 + (hi10 - lo10) * i / (grid_steps - 1);
        for (int j = 0; j < grid_steps; ++j) {
            const double f11 =
                grid_steps == 1 ? lo11 : lo11 + (hi11 - lo11) * j / (grid_steps - 1);
            const inner::InfoPair v = inner::empirical_info_type(f10, f11, fz1, rho);
            if (v.I + v.D > rep.max_value) {
                rep.max_value = v.I + v.D;
                rep.argmax_f10 = f10;
                rep.argmax_f11 = f11;
            }
        }
    }

    // Corners in g_j order: (lo,hi), (hi,hi), (lo,lo), (hi,lo) for (f10, f11).
    const std::array<std::pair<double, double>, 4> corners = {
        std::pair{lo10, hi11}, {hi10, hi11}, {lo10, lo11}, {hi10, lo11}};
    for (int j = 0; j < 4; ++j) {
        const inner::InfoPair v =
            inner::empirical_info_type(corners[j].first, corners[j].second, fz1, rho);
        rep.corner_values[j] = v.I + v.D;
    }
    const double cell10 = (hi10 - lo10) / (grid_steps - 1);
    const double cell11 = (hi11 - lo11) / (grid_steps - 1);
    rep.argmax_at_corner = false;
    for (const auto& [c10, c11] : corners)
        if (std::fabs(rep.argmax_f10 - c10) <= cell10 * 1.000001 &&
            std::fabs(rep.argmax_f11 - c11) <= cell11 * 1.000001)
            rep.argmax_at_corner = true;

    if (eps_d) {
        const double k2 = design_k2(q, *eps_d, Mode::paper);
        rep.has_g_comparison = true;
        rep.n = (k2 / rho) * (k2 / rho);
        const double sqrtn = k2 / rho;
        for (int j = 0; j < 4; ++j) {
            rep.g_values[j] = aux_g(j + 1, q, *eps_d, d10, d11);
            rep.scaled_corner_values[j] = -sqrtn * rep.corner_values[j];
            rep.scaled_gaps[j] = std::fabs(rep.scaled_corner_values[j] - rep.g_values[j]);
        }
    }
    return rep;
}

const char* tail_case_name(TailCase c) {
    switch (c) {
        case TailCase::d10_upper: return "d10_upper";
        case TailCase::d10_lower: return "d10_lower";
        case TailCase::d11_upper: return "d11_upper";
        case TailCase::d11_lower: return "d11_lower";
    }
    return "?";
}

namespace {

// log2(sum 2^terms) without leaving log space.
class Log2Sum {
  public:
    void add(double log2term) {
        if (log2term == -std::numeric_limits<double>::infinity()) return;
        if (max_ == -std::numeric_limits<double>::infinity()) {
            max_ = log2term;
            sum_ = 1.0;
            return;
        }
        if (log2term > max_) {
            sum_ = sum_ * std::exp2(max_ - log2term) + 1.0;
            max_ = log2term;
        } else {
            sum_ += std::exp2(log2term - max_);
        }
    }
    double value() const {
        if (max_ == -std::numeric_limits<double>::infinity()) return max_;
        return max_ + std::log2(sum_);
    }

  private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

}  // namespace

TailReport verify_tail_bound(double n, double q, double k1, double k2, double delta,
                             double d10, double d11, TailCase which) {
    TailReport rep;
    rep.which = which;
    rep.n = n;
    const double sqrtn = std::sqrt(n);
    const double log2n = std::log2(n);
    rep.B = static_cast<std::int64_t>(std::llround(k1 * sqrtn * log2n));

    const bool is_d10 = which == TailCase::d10_upper || which == TailCase::d10_lower;
    const bool is_upper = which == TailCase::d10_upper || which == TailCase::d11_upper;
    const double base = is_d10 ? q : 1.0 - q;
    const double width = is_d10 ? d10 : d11;
    const double psucc = k2 * base / sqrtn;
    const double mean_threshold = k1 * k2 * base * log2n;  // = B * psucc up to rounding

    if (is_upper) {
        rep.range_lo =
            static_cast<std::int64_t>(std::ceil(mean_threshold * (1.0 + width) - 1e-9));
        rep.range_hi = rep.B;
    } else {
        rep.range_lo = 0;
        rep.range_hi =
            static_cast<std::int64_t>(std::floor(mean_threshold * (1.0 - width) + 1e-9));
    }
    if (rep.range_lo < 0) rep.range_lo = 0;
    if (rep.range_hi > rep.B) rep.range_hi = rep.B;

    Log2Sum acc;
    const double ln2 = std::log(2.0);
    for (std::int64_t i = rep.range_lo; i <= rep.range_hi; ++i)
        acc.add(channel::binom_logpmf(rep.B, psucc, i) / ln2);
    rep.log2_tail = acc.value();
    rep.log2_bound = (-k1 * k2 * base * aux_f(width) + delta / 2.0) * log2n;
    rep.holds = rep.log2_tail <= rep.log2_bound;
    return rep;
}

TailReport verify_tail_bound(const CodeParams& params, TailCase which) {
    // The realized k1 makes round(k1 sqrt(n) log2 n) reproduce the instance's
    // actual chunk length B.
    return verify_tail_bound(static_cast<double>(params.n), params.channel.q,
                             params.k1_realized, params.k2, params.channel.delta,
                             params.dxz10, params.dxz11, which);
}

TaylorReport verify_taylor_identity(double p, double k2, double delta,
                                    std::span<const double> n_schedule) {
    if (!(p > 0.0 && p < 0.5)) throw ContractError("verify_taylor_identity: p outside (0,1/2)");
    TaylorReport rep;
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0;
    double bmin = std::numeric_limits<double>::infinity(), bmax = 0;
    for (double n : n_schedule) {
        TaylorPoint pt;
        pt.n = n;
        pt.rho = k2 / std::sqrt(n);
        const double rho = pt.rho;
        const double fy1 = channel::bconv(rho, p);
        const inner::InfoPair center =
            inner::empirical_info_type(rho * p, rho * (1.0 - p), fy1, rho);
        pt.center_value = center.I + center.D;
        pt.leading_term = rho * (1.0 - 2.0 * p) * std::log2((1.0 - p) / p);
        pt.center_dev = std::fabs(pt.center_value - pt.leading_term);
        pt.center_dev_scaled = pt.center_dev * n;

        // Deviation over the conditional box corners, fy1 swept over its own
        // typical interval.
        const double dxy = std::pow(std::log2(n), -1.0 / 3.0);
        const double dy1 = std::pow(n, -0.25 + delta / 2.0);
        pt.box_dev = 0;
        for (double s10 : {-1.0, 1.0})
            for (double s11 : {-1.0, 1.0})
                for (double sy : {-1.0, 0.0, 1.0}) {
                    const inner::InfoPair v = inner::empirical_info_type(
                        rho * p * (1.0 + s10 * dxy), rho * (1.0 - p) * (1.0 + s11 * dxy),
                        fy1 * (1.0 + sy * dy1), rho);
                    pt.box_dev = std::max(pt.box_dev, std::fabs(v.I + v.D - pt.leading_term));
                }
        pt.box_dev_scaled = pt.box_dev * std::sqrt(n) * std::cbrt(std::log2(n));

        cmin = std::min(cmin, pt.center_dev_scaled);
        cmax = std::max(cmax, pt.center_dev_scaled);
        bmin = std::min(bmin, pt.box_dev_scaled);
        bmax = std::max(bmax, pt.box_dev_scaled);
        rep.points.push_back(pt);
    }
    rep.fitted_center_constant = cmax;
    rep.center_ratio = cmin > 0 ? cmax / cmin : std::numeric_limits<double>::infinity();
    rep.box_ratio = bmin > 0 ? bmax / bmin : std::numeric_limits<double>::infinity();
    return rep;
}

}  // namespace covert::design
