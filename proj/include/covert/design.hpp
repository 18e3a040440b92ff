#ifndef COVERT_DESIGN_HPP
#define COVERT_DESIGN_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "covert/errors.hpp"

namespace covert::design {

// All logarithms in the design formulas are base 2.

struct ChannelModel {
    double p = 0;       // Bob crossover
    double q = 0;       // Willie crossover, p < q
    double eps_d = 0;   // covertness budget
    double delta = 0.01;  // slackness

    void validate() const;
};

enum class Mode { paper, optimal };

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);

// f(x) = log2(e) - (1+x) log2(e/(1+x)); positive on (0,1], zero at 0.
double aux_f(double x);

// g_j(u, v, w, t), j in 1..4; w/t enter with signs (-,+), (+,+), (-,-), (+,-).
double aux_g(int j, double u, double v, double w, double t);

// Gaussian tail Q(x) and its inverse (bisection on [0,10] to |dQ| <= 1e-10).
double q_function(double x);
double q_inverse(double y);

double design_k2(double q, double eps_d, Mode mode);
double design_ru(double p, double q, double eps_d, Mode mode);

struct K1Solution {
    double k1 = 0;
    double d10 = 0, d11 = 0;
    int binding_constraint = 0;          // i in {1,2,3} attaining the max ratio
    std::array<double, 3> phi_values{};  // Phi_1..Phi_3 at (d10, d11)
    int attaining_g_index = 0;           // j in {1,2,3,4} attaining max g_j
};

struct K1SolverOptions {
    double coarse_step = 0.01;
    double fine_step = 1e-4;
};

// Minimizes max_i (xi_i + delta) / Phi_i over (d10, d11) in (0,1)^2 with
// Phi_1 = r_u + max_j g_j, Phi_2 = q k2 f(d10), Phi_3 = (1-q) k2 f(d11),
// xi = (3/2, 1/2, 1/2). Deterministic grid + refinement; ties break toward
// smaller k1, then smaller d10, then smaller d11.
K1Solution solve_k1(const ChannelModel& ch, Mode mode, const K1SolverOptions& opts = {});

struct Overrides {
    std::optional<int> l2;
    std::optional<int> m;
    std::optional<double> rho;
    std::optional<double> dz1, dy1;
    std::optional<double> dxy10, dxy11;
    std::optional<double> dxz10, dxz11;
};

struct CodeParams {
    ChannelModel channel;
    Mode mode = Mode::paper;

    std::int64_t n = 0;  // total blocklength, exactly L * B
    int L = 0;           // number of chunks
    int B = 0;           // chunk length in bits
    int m = 0;           // field exponent; 2^m codewords per chunk
    int l1 = 0, l2 = 0;  // systematic / parity chunk counts
    double lambda = 0;   // outer rate l1 / L

    double k1 = 0, k2 = 0, r_u = 0;
    double k1_realized = 0;  // B / (sqrt(n) log2 n): the k1 the integers actually give
    double r = 0;      // nominal throughput r_u (1 - (log2 n)^{-1/4})
    double r_hat = 0;  // r k1_realized / lambda, so l1 * r_hat * log2(n) = r sqrt(n)
    double r_eff = 0;  // realized l1 m / sqrt(n)
    double rho = 0;    // inner bias, k2 / sqrt(n) unless overridden

    double dz1 = 0, dy1 = 0;
    double dxz10 = 0, dxz11 = 0;
    double dxy10 = 0, dxy11 = 0;

    K1Solution k1_solution;

    bool off_nominal = false;  // any override or fallback applied
    std::vector<std::string> diagnostics;

    double sqrt_n() const;
    double log2_n() const;
};

// Inverted parameterization: the caller fixes integers (L, B); n := L * B and
// every rate is recomputed from realized integers. Fallbacks (parity
// count, overrides) are flagged in `diagnostics`.
CodeParams derive_params(const ChannelModel& ch, int L, int B, Mode mode,
                         const Overrides& overrides = {});

struct ContourCell {
    double p = 0, q = 0;
    double k1 = 0, d10 = 0, d11 = 0;
    double exponent = 0;  // r_u k1 + 1
    std::string status;   // "ok", "absent", or an error tag
};

std::vector<ContourCell> contour_grid(double p_min, double p_max, double q_min, double q_max,
                                      double eps_d, double delta, int steps,
                                      Mode mode = Mode::paper);

// CSV with header p,q,k1,d10,d11,exponent,status.
void write_contour_csv(std::ostream& os, const std::vector<ContourCell>& cells);

enum class ChernoffSide { upper, lower };

// exp(-eps^2 mu / 3), the unified two-sided form.
double chernoff_bound(std::int64_t n, double mu, double eps, ChernoffSide side);

}  // namespace covert::design

#endif
