#ifndef COVERT_VERIFY_HPP
#define COVERT_VERIFY_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "covert/design.hpp"

namespace covert::design {

// ---- Corner-point maximization of I + D over the conditional box ----------

struct CornerReport {
    double q = 0, rho = 0, d10 = 0, d11 = 0;
    int grid_steps = 0;

    double max_value = 0;            // grid maximum of I + D
    double argmax_f10 = 0, argmax_f11 = 0;
    bool argmax_at_corner = false;   // within one grid cell of a corner

    // I + D at the corners in g_j order: (1-w,1+t), (1+w,1+t), (1-w,1-t), (1+w,1-t).
    std::array<double, 4> corner_values{};

    // Present when eps_d was supplied: scaled corners -sqrt(n) (I+D) against
    // g_j, with n = (k2 / rho)^2.
    bool has_g_comparison = false;
    double n = 0;
    std::array<double, 4> g_values{};
    std::array<double, 4> scaled_corner_values{};
    std::array<double, 4> scaled_gaps{};  // |scaled corner - g_j|
};

// Evaluates I(x;z) + D(x || rho) on a grid over the box f10 in rho q (1 +- d10),
// f11 in rho (1-q) (1 +- d11) with fz1 fixed at rho*q, and reports where the
// maximum sits. A non-corner argmax is reported, not thrown.
CornerReport verify_corner_points(double q, double rho, double d10, double d11, int grid_steps,
                                  std::optional<double> eps_d = std::nullopt);

// ---- Binomial tail bounds of the h(i) series -------------------------------

enum class TailCase { d10_upper, d10_lower, d11_upper, d11_lower };

const char* tail_case_name(TailCase c);

struct TailReport {
    TailCase which = TailCase::d10_upper;
    double n = 0;
    std::int64_t B = 0;
    std::int64_t range_lo = 0, range_hi = -1;  // summation index range (empty if lo > hi)
    double log2_tail = 0;   // -inf when the range is empty
    double log2_bound = 0;  // (-k1 k2 q f(delta) + delta/2) log2 n, or the (1-q) variant
    bool holds = false;
};

// Exact log-space tail of Binomial(B, k2 q / sqrt(n)) (d10 cases) or
// Binomial(B, k2 (1-q) / sqrt(n)) (d11 cases) with B = round(k1 sqrt(n) log2 n),
// against the closed-form bound.
TailReport verify_tail_bound(double n, double q, double k1, double k2, double delta,
                             double d10, double d11, TailCase which);

TailReport verify_tail_bound(const CodeParams& params, TailCase which);

// ---- Taylor identity for I + D at the reliability center --------------------

struct TaylorPoint {
    double n = 0, rho = 0;
    double center_value = 0;     // I + D at (rho*p, rho p, rho (1-p))
    double leading_term = 0;     // rho (1-2p) log2((1-p)/p)
    double center_dev = 0;       // |center - leading|
    double center_dev_scaled = 0;  // center_dev * n
    double box_dev = 0;          // max corner deviation over the conditional box
    double box_dev_scaled = 0;   // box_dev * sqrt(n) (log2 n)^{1/3}
};

struct TaylorReport {
    std::vector<TaylorPoint> points;
    double fitted_center_constant = 0;  // max center_dev_scaled
    double center_ratio = 0;            // max/min of center_dev_scaled
    double box_ratio = 0;               // max/min of box_dev_scaled
};

// Evaluates the identity along rho = k2 / sqrt(n) for the given n schedule;
// deviations must shrink like 1/n at the center and n^{-1/2} (log n)^{-1/3}
// over the box, which the caller checks via the reported ratios.
TaylorReport verify_taylor_identity(double p, double k2, double delta,
                                    std::span<const double> n_schedule);

}  // namespace covert::design

#endif
