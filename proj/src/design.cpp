#include "covert/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace covert::design {

namespace {
const double kLog2E = std::log2(std::exp(1.0));

double log2_(double x) { return std::log2(x); }
}  // namespace

void ChannelModel::validate() const {
    if (!(p > 0.0 && q > p && q < 0.5))
        throw ConfigError("channel requires p < q with 0 < p < q < 1/2");
    if (!(eps_d > 0.0 && eps_d < 1.0)) throw ConfigError("channel requires 0 < eps_d < 1");
    if (!(delta > 0.0 && delta < 0.5)) throw ConfigError("channel requires 0 < delta < 0.5");
}

const char* mode_name(Mode m) { return m == Mode::paper ? "paper" : "optimal"; }

Mode mode_from_name(const std::string& name) {
    if (name == "paper") return Mode::paper;
    if (name == "optimal") return Mode::optimal;
    throw ConfigError("unknown mode '" + name + "' (expected paper|optimal)");
}

double aux_f(double x) {
    if (!(x > -1.0)) throw DomainError("aux_f requires x > -1");
    // log2 e - (1+x) log2(e/(1+x)) == (1+x) log2(1+x) - x log2 e
    return (1.0 + x) * std::log2(1.0 + x) - x * kLog2E;
}

double aux_g(int j, double u, double v, double w, double t) {
    if (j < 1 || j > 4) throw ContractError("aux_g: j must be in 1..4");
    if (!(u > 0.0 && u < 0.5)) throw DomainError("aux_g requires 0 < u < 1/2");
    const double a = (j == 2 || j == 4) ? 1.0 + w : 1.0 - w;  // multiplies the u term
    const double b = (j == 1 || j == 2) ? 1.0 + t : 1.0 - t;  // multiplies the (1-u) term
    if (!(a > 0.0 && b > 0.0)) throw DomainError("aux_g: log of non-positive argument");
    const double arg1 = (1.0 - u) / (u * a);
    const double arg2 = u / ((1.0 - u) * b);
    if (!(arg1 > 0.0 && arg2 > 0.0)) throw DomainError("aux_g: log of non-positive argument");
    const double k2 = design_k2(u, v, Mode::paper);
    return k2 * (u * a * (log2_(arg1) + kLog2E) + (1.0 - u) * b * (log2_(arg2) + kLog2E) -
                 kLog2E);
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double q_inverse(double y) {
    if (!(y > 0.0 && y < 0.5)) throw DomainError("q_inverse expects y in (0, 1/2)");
    double lo = 0.0, hi = 10.0;
    // Q is decreasing; bisect until the Q gap is certainly below 1e-10.
    while (q_function(lo) - q_function(hi) > 1e-10 && hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        if (q_function(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double design_k2(double q, double eps_d, Mode mode) {
    if (!(q > 0.0 && q < 0.5)) throw DomainError("design_k2 requires 0 < q < 1/2");
    const double base = 2.0 * std::sqrt(q * (1.0 - q)) / (1.0 - 2.0 * q);
    if (mode == Mode::paper) return eps_d * base;
    if (eps_d == 0.0) return 0.0;
    return base * q_inverse((1.0 - eps_d) / 2.0);
}

double design_ru(double p, double q, double eps_d, Mode mode) {
    if (!(p > 0.0 && p < q && q < 0.5)) throw DomainError("design_ru requires 0 < p < q < 1/2");
    return design_k2(q, eps_d, mode) * (1.0 - 2.0 * p) * log2_((1.0 - p) / p);
}

namespace {

struct PointEval {
    double k1 = std::numeric_limits<double>::infinity();
    std::array<double, 3> phi{};
    int binding = 0;
    int g_index = 0;
    bool feasible = false;
};

PointEval eval_point(double ru, double q, double eps_d, double k2, double delta, double d10,
                     double d11) {
    PointEval pe;
    // aux_g carries the baseline-mode k2 factor; rescale so that in optimal mode
    // every Phi term uses the same code weight parameter.
    const double gscale = k2 / design_k2(q, eps_d, Mode::paper);
    // Phi_1 uses the worst corner of the conditional box: the corner with the
    // largest empirical I+D has the fewest expected codewords, and its scaled
    // value is the smallest of the four g_j. (Taking the largest instead
    // keeps Phi_1 bounded away from zero as p -> q and flattens the contour
    // shape the design is known for.)
    double gworst = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= 4; ++j) {
        const double g = gscale * aux_g(j, q, eps_d, d10, d11);
        if (g < gworst) {
            gworst = g;
            pe.g_index = j;
        }
    }
    pe.phi = {ru + gworst, q * k2 * aux_f(d10), (1.0 - q) * k2 * aux_f(d11)};
    static const std::array<double, 3> xi = {1.5, 0.5, 0.5};
    if (pe.phi[0] <= 0.0) return pe;  // only Phi_1 can go non-positive
    pe.feasible = true;
    pe.k1 = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double ratio = (xi[i] + delta) / pe.phi[i];
        if (ratio > pe.k1) {
            pe.k1 = ratio;
            pe.binding = i + 1;
        }
    }
    return pe;
}

constexpr double kTieEps = 1e-12;

bool better(const PointEval& a, double a10, double a11, const PointEval& b, double b10,
            double b11) {
    if (!b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (a.k1 < b.k1 - kTieEps) return true;
    if (a.k1 > b.k1 + kTieEps) return false;
    if (a10 != b10) return a10 < b10;
    return a11 < b11;
}

}  // namespace

K1Solution solve_k1(const ChannelModel& ch, Mode mode, const K1SolverOptions& opts) {
    ch.validate();
    const double k2 = design_k2(ch.q, ch.eps_d, mode);
    const double ru = design_ru(ch.p, ch.q, ch.eps_d, mode);

    PointEval best;
    double bd10 = 0, bd11 = 0;
    auto consider = [&](double d10, double d11) {
        if (!(d10 > 0.0 && d10 < 1.0 && d11 > 0.0 && d11 < 1.0)) return;
        const PointEval pe = eval_point(ru, ch.q, ch.eps_d, k2, ch.delta, d10, d11);
        if (better(pe, d10, d11, best, bd10, bd11)) {
            best = pe;
            bd10 = d10;
            bd11 = d11;
        }
    };

    const double step = opts.coarse_step;
    const int cells = static_cast<int>(std::floor(1.0 / step)) - 1;
    for (int i = 1; i <= cells; ++i)
        for (int j = 1; j <= cells; ++j) consider(i * step, j * step);
    if (!best.feasible)
        throw InfeasibleError(
            "solve_k1: Phi_1 = r_u + worst-corner g_j is non-positive over the whole "
            "(0,1)^2 grid");

    // One-shot refinement over the surrounding coarse cell.
    const double c10 = bd10, c11 = bd11;
    const int half = static_cast<int>(std::llround(step / opts.fine_step));
    for (int i = -half; i <= half; ++i)
        for (int j = -half; j <= half; ++j)
            consider(c10 + i * opts.fine_step, c11 + j * opts.fine_step);

    K1Solution sol;
    sol.k1 = best.k1;
    sol.d10 = bd10;
    sol.d11 = bd11;
    sol.binding_constraint = best.binding;
    sol.phi_values = best.phi;
    sol.attaining_g_index = best.g_index;

    // Re-verify the certificates by direct evaluation.
    static const std::array<double, 3> xi = {1.5, 0.5, 0.5};
    for (int i = 0; i < 3; ++i)
        if (sol.k1 * sol.phi_values[i] < xi[i] + ch.delta - 1e-9)
            throw InfeasibleError("solve_k1: certificate k1*Phi_" + std::to_string(i + 1) +
                                  " >= xi + delta failed after refinement");
    return sol;
}

double CodeParams::sqrt_n() const { return std::sqrt(static_cast<double>(n)); }
double CodeParams::log2_n() const { return std::log2(static_cast<double>(n)); }

CodeParams derive_params(const ChannelModel& ch, int L, int B, Mode mode,
                         const Overrides& overrides) {
    ch.validate();
    if (L < 4) throw ConfigError("derive_params: L must be >= 4");
    if (B < 16) throw ConfigError("derive_params: B must be >= 16");

    CodeParams cp;
    cp.channel = ch;
    cp.mode = mode;
    cp.L = L;
    cp.B = B;
    cp.n = static_cast<std::int64_t>(L) * B;
    const double log2n = cp.log2_n();
    const double sqrtn = cp.sqrt_n();

    cp.k1_solution = solve_k1(ch, mode);
    cp.k1 = cp.k1_solution.k1;
    cp.k2 = design_k2(ch.q, ch.eps_d, mode);
    cp.r_u = design_ru(ch.p, ch.q, ch.eps_d, mode);

    auto note = [&](const std::string& s) { cp.diagnostics.push_back(s); };

    // Parity chunk count: the 28 L / log2(n) rule only makes sense at large
    // n. When it would eat at least half the chunks we fall back to L/4,
    // flagged in diagnostics.
    const double l2_nominal = 28.0 * L / log2n;
    int l2 = std::max(2, static_cast<int>(std::llround(l2_nominal)));
    if (overrides.l2) {
        l2 = *overrides.l2;
        cp.off_nominal = true;
        note("l2 override " + std::to_string(l2) + " (nominal value " +
             std::to_string(l2_nominal) + ")");
    } else if (l2_nominal >= L / 2.0) {
        l2 = std::max(2, (L + 3) / 4);
        cp.off_nominal = true;
        note("infeasible-lambda: nominal parity count 28L/log2(n) = " + std::to_string(l2_nominal) +
             " >= L/2 at this scale; fallback l2 = " + std::to_string(l2));
    }
    if (l2 < 2 || l2 >= L) throw ConfigError("derive_params: need 2 <= l2 < L");
    cp.l2 = l2;
    cp.l1 = L - l2;
    cp.lambda = static_cast<double>(cp.l1) / L;

    // Throughput backoff factor (1 - (log n)^{-1/4}). The chunk rate uses
    // the realized k1 = B / (sqrt(n) log2 n) so that the realized integers
    // keep l1 * r_hat * log2(n) = r * sqrt(n) exactly.
    cp.r = cp.r_u * (1.0 - std::pow(log2n, -0.25));
    cp.k1_realized = B / (sqrtn * log2n);
    cp.r_hat = cp.r * cp.k1_realized / cp.lambda;

    int m = static_cast<int>(std::llround(cp.r_hat * log2n));
    if (overrides.m) {
        m = *overrides.m;
        cp.off_nominal = true;
        note("m override " + std::to_string(m) + " (nominal value round(r_hat log2 n) = " +
             std::to_string(cp.r_hat * log2n) + ")");
    } else if (m < 2) {
        throw ScaleError("derive_params: r_hat*log2(n) rounds below 2 bits per chunk");
    } else if (m > 20) {
        note("m clamped to 20 from nominal value " + std::to_string(m));
        m = 20;
        cp.off_nominal = true;
    }
    if (m < 2 || m > 20) throw ConfigError("derive_params: m must land in [2, 20]");
    cp.m = m;
    if (L > (1 << m))
        throw InfeasibleError("derive_params: RS infeasible, L=" + std::to_string(L) +
                              " > 2^m=" + std::to_string(1 << m));

    cp.rho = cp.k2 / sqrtn;
    if (overrides.rho) {
        cp.rho = *overrides.rho;
        cp.off_nominal = true;
        note("rho override " + std::to_string(cp.rho) + " (nominal value k2/sqrt(n) = " +
             std::to_string(cp.k2 / sqrtn) + ")");
    }
    if (!(cp.rho >= 0.0 && cp.rho < 1.0)) throw ConfigError("derive_params: rho outside [0,1)");

    cp.r_eff = static_cast<double>(cp.l1) * cp.m / sqrtn;

    const double width_z = std::pow(static_cast<double>(cp.n), -0.25 + ch.delta / 2.0);
    cp.dz1 = overrides.dz1.value_or(width_z);
    cp.dy1 = overrides.dy1.value_or(width_z);
    const double width_xy = std::pow(log2n, -1.0 / 3.0);
    cp.dxy10 = overrides.dxy10.value_or(width_xy);
    cp.dxy11 = overrides.dxy11.value_or(width_xy);
    cp.dxz10 = overrides.dxz10.value_or(cp.k1_solution.d10);
    cp.dxz11 = overrides.dxz11.value_or(cp.k1_solution.d11);
    if (overrides.dz1 || overrides.dy1 || overrides.dxy10 || overrides.dxy11 ||
        overrides.dxz10 || overrides.dxz11) {
        cp.off_nominal = true;
        note("typicality width overrides in effect");
    }
    return cp;
}

std::vector<ContourCell> contour_grid(double p_min, double p_max, double q_min, double q_max,
                                      double eps_d, double delta, int steps, Mode mode) {
    if (steps < 2) throw ConfigError("contour_grid: steps must be >= 2");
    if (!(p_min > 0.0 && p_max < 0.5 && q_min > 0.0 && q_max < 0.5))
        throw ConfigError("contour_grid: ranges must lie inside (0, 1/2)");
    std::vector<ContourCell> cells;
    cells.reserve(static_cast<std::size_t>(steps) * steps);
    for (int i = 0; i < steps; ++i) {
        const double p = p_min + (p_max - p_min) * i / (steps - 1);
        for (int j = 0; j < steps; ++j) {
            const double q = q_min + (q_max - q_min) * j / (steps - 1);
            ContourCell cell;
            cell.p = p;
            cell.q = q;
            if (!(p < q)) {
                cell.status = "absent";
                cells.push_back(cell);
                continue;
            }
            try {
                ChannelModel ch{p, q, eps_d, delta};
                const K1Solution sol = solve_k1(ch, mode);
                cell.k1 = sol.k1;
                cell.d10 = sol.d10;
                cell.d11 = sol.d11;
                cell.exponent = design_ru(p, q, eps_d, mode) * sol.k1 + 1.0;
                cell.status = "ok";
            } catch (const InfeasibleError&) {
                cell.status = "absent";
            } catch (const std::exception& e) {
                cell.status = std::string("error: ") + e.what();
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

void write_contour_csv(std::ostream& os, const std::vector<ContourCell>& cells) {
    os << "p,q,k1,d10,d11,exponent,status\n";
    for (const auto& c : cells) {
        os << c.p << ',' << c.q << ',';
        if (c.status == "ok")
            os << c.k1 << ',' << c.d10 << ',' << c.d11 << ',' << c.exponent;
        else
            os << ",,,";
        os << ',' << c.status << '\n';
    }
}

double chernoff_bound(std::int64_t /*n*/, double mu, double eps, ChernoffSide /*side*/) {
    if (!(eps > 0.0 && eps < 1.0)) throw ContractError("chernoff_bound: eps must be in (0,1)");
    return std::exp(-eps * eps * mu / 3.0);
}

}  // namespace covert::design
