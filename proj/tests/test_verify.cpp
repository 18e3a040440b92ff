#include <doctest.h>

#include <cmath>

#include "covert/channel.hpp"
#include "covert/innercode.hpp"
#include "covert/verify.hpp"

using namespace covert;
using namespace covert::design;

TEST_CASE("corner points: argmax lands on a corner of the box") {
    const auto rep = verify_corner_points(0.25, 0.01, 0.5, 0.5, 101);
    CHECK(rep.argmax_at_corner);
    // The grid maximum matches the best corner value.
    double best = rep.corner_values[0];
    for (double v : rep.corner_values) best = std::max(best, v);
    CHECK(rep.max_value == doctest::Approx(best).epsilon(1e-9));
}

TEST_CASE("corner points: degenerate box collapses to its center") {
    const double q = 0.25, rho = 0.01;
    const auto rep = verify_corner_points(q, rho, 1e-12, 1e-12, 11);
    const auto center = inner::empirical_info_type(rho * q, rho * (1 - q),
                                                   channel::bconv(rho, q), rho);
    CHECK(rep.max_value == doctest::Approx(center.I + center.D).epsilon(1e-9));
    CHECK(rep.argmax_at_corner);  // all corners coincide with the center
}

TEST_CASE("scaled corner values track g_j with an O(n^{-1/2}) gap") {
    // n = 1e6 via rho = k2/sqrt(n); gaps shrink by ~10x at n = 1e8.
    const double q = 0.25, eps = 0.1;
    const double k2 = design_k2(q, eps, Mode::paper);
    const auto rep6 = verify_corner_points(q, k2 / 1e3, 0.5, 0.5, 41, eps);
    REQUIRE(rep6.has_g_comparison);
    CHECK(rep6.n == doctest::Approx(1e6).epsilon(1e-9));
    for (int j = 0; j < 4; ++j) CHECK(rep6.scaled_gaps[j] <= 0.01);

    const auto rep10 = verify_corner_points(q, k2 / 1e5, 0.5, 0.5, 41, eps);
    for (int j = 0; j < 4; ++j) {
        CHECK(rep10.scaled_gaps[j] <= 1e-4);
        CHECK(rep10.scaled_gaps[j] <= rep6.scaled_gaps[j]);
    }
}

TEST_CASE("tail bounds hold at n = 1e6 for mode=paper parameters") {
    const ChannelModel ch{0.05, 0.25, 0.1, 0.01};
    const auto sol = solve_k1(ch, Mode::paper);
    const double k2 = design_k2(ch.q, ch.eps_d, Mode::paper);
    for (auto which : {TailCase::d10_upper, TailCase::d10_lower, TailCase::d11_upper,
                       TailCase::d11_lower}) {
        const auto rep =
            verify_tail_bound(1e6, ch.q, sol.k1, k2, ch.delta, sol.d10, sol.d11, which);
        CHECK(rep.holds);
        CHECK(rep.log2_tail < 0.0);
    }
}

TEST_CASE("tail bound: empty index range sums to zero and passes") {
    // Threshold beyond B: upper range starts past the end.
    const auto rep = verify_tail_bound(100.0, 0.25, 0.05, 100.0, 0.01, 0.9, 0.9,
                                       TailCase::d10_upper);
    CHECK(rep.range_lo > rep.range_hi);
    CHECK(rep.log2_tail == -std::numeric_limits<double>::infinity());
    CHECK(rep.holds);
}

TEST_CASE("tail bound monotonicity: larger width shrinks tail and bound") {
    const ChannelModel ch{0.05, 0.25, 0.1, 0.01};
    const double k2 = design_k2(ch.q, ch.eps_d, Mode::paper);
    const auto narrow =
        verify_tail_bound(1e6, ch.q, 20.0, k2, ch.delta, 0.3, 0.3, TailCase::d10_upper);
    const auto wide =
        verify_tail_bound(1e6, ch.q, 20.0, k2, ch.delta, 0.6, 0.6, TailCase::d10_upper);
    CHECK(wide.log2_tail <= narrow.log2_tail);
    CHECK(wide.log2_bound <= narrow.log2_bound);
}

TEST_CASE("taylor identity: deviations scale as predicted across the schedule") {
    const double q = 0.25, eps = 0.1;
    const double k2 = design_k2(q, eps, Mode::paper);
    const std::vector<double> ns{1e4, 1e6, 1e8};
    const auto rep = verify_taylor_identity(0.05, k2, 0.01, ns);
    REQUIRE(rep.points.size() == 3);
    for (const auto& pt : rep.points) {
        CHECK(pt.center_value > 0.0);
        CHECK(pt.center_dev <= rep.fitted_center_constant / pt.n + 1e-18);
    }
    CHECK(rep.center_ratio <= 10.0);
    CHECK(rep.box_ratio <= 10.0);
    // rho -> 0: both sides vanish.
    const auto& last = rep.points.back();
    CHECK(last.center_value <= rep.points.front().center_value);
    CHECK(last.leading_term <= rep.points.front().leading_term);
}
