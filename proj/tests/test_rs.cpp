#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "covert/rng.hpp"
#include "covert/rs.hpp"

using namespace covert;
using rs::Elem;

namespace {

// Every codeword of a tiny code by message enumeration.
std::vector<std::vector<Elem>> enumerate_codewords(const rs::RsCode& code) {
    std::vector<std::vector<Elem>> all;
    std::vector<Elem> msg(code.l1, 0);
    const Elem fsize = code.field.size();
    while (true) {
        all.push_back(rs_encode(code, msg));
        int pos = 0;
        while (pos < code.l1 && ++msg[pos] == fsize) msg[pos++] = 0;
        if (pos == code.l1) break;
    }
    return all;
}

int weight(const std::vector<Elem>& v) {
    int w = 0;
    for (Elem s : v) w += s != 0;
    return w;
}

int hamming(const std::vector<Elem>& a, const std::vector<Elem>& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

}  // namespace

TEST_CASE("rs_build produces systematic form and rejects bad shapes") {
    auto f4 = gf::field_build(2);
    auto code = rs::rs_build(f4, 3, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(code.gen_systematic[r][c] == (r == c ? 1u : 0u));
    CHECK_THROWS_AS(rs::rs_build(gf::field_build(2), 5, 2), InfeasibleError);  // L > 2^m
    CHECK_THROWS_AS(rs::rs_build(gf::field_build(3), 4, 4), ConfigError);
}

TEST_CASE("[3,2] over GF(4): 16 codewords, pairwise distance >= 2") {
    auto code = rs::rs_build(gf::field_build(2), 3, 2);
    const auto all = enumerate_codewords(code);
    CHECK(all.size() == 16);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(hamming(all[i], all[j]) >= 2);
}

TEST_CASE("[7,3] over GF(8): MDS distance and closed-form weight counts") {
    auto code = rs::rs_build(gf::field_build(3), 7, 3);
    const auto all = enumerate_codewords(code);
    REQUIRE(all.size() == 512);
    std::vector<std::int64_t> counts(8, 0);
    for (const auto& cw : all) ++counts[weight(cw)];
    CHECK(counts[0] == 1);
    for (int w = 1; w <= 4; ++w) CHECK(counts[w] == 0);  // minimum distance l2+1 = 5
    for (int w = 5; w <= 7; ++w)
        CHECK(rs::rs_weight_distribution(7, 5, 8, w) == counts[w]);
}

TEST_CASE("weight distribution closed form at tiny scale") {
    CHECK(rs::rs_weight_distribution(3, 2, 4, 2) == 9);
    CHECK(rs::rs_weight_distribution(3, 2, 4, 3) == 6);
    CHECK(rs::rs_weight_distribution(3, 2, 4, 1) == 0);  // below dmin
    // Counts sum to |F|^l1 - 1 over nonzero weights.
    CHECK(rs::rs_weight_distribution(3, 2, 4, 2) + rs::rs_weight_distribution(3, 2, 4, 3) ==
          15);
}

TEST_CASE("systematic and Vandermonde generators span the same code") {
    auto code = rs::rs_build(gf::field_build(3), 7, 3);
    // Vandermonde row space: evaluations of all polynomials of degree < l1.
    std::set<std::vector<Elem>> vandermonde;
    std::vector<Elem> coeffs(3, 0);
    while (true) {
        vandermonde.insert(code.evaluate_poly(coeffs));
        int pos = 0;
        while (pos < 3 && ++coeffs[pos] == 8) coeffs[pos++] = 0;
        if (pos == 3) break;
    }
    const auto systematic = enumerate_codewords(code);
    CHECK(vandermonde.size() == systematic.size());
    for (const auto& cw : systematic) CHECK(vandermonde.count(cw) == 1);
}

TEST_CASE("encode: linearity, systematic prefix, idempotent re-encode") {
    auto code = rs::rs_build(gf::field_build(2), 3, 2);
    CHECK(rs_encode(code, std::vector<Elem>{0, 0}) == std::vector<Elem>{0, 0, 0});
    const auto cw = rs_encode(code, std::vector<Elem>{1, 0});
    CHECK(cw[0] == 1);
    CHECK(cw[1] == 0);
    // the parity symbol is the unique one completing a codeword
    int matches = 0;
    for (Elem x = 0; x < 4; ++x) {
        std::vector<Elem> cand{1, 0, x};
        bool is_cw = false;
        for (const auto& c : enumerate_codewords(code))
            if (c == cand) is_cw = true;
        if (is_cw) {
            ++matches;
            CHECK(x == cw[2]);
        }
    }
    CHECK(matches == 1);
    CHECK_THROWS_AS(rs_encode(code, std::vector<Elem>{1}), ContractError);

    rng::Stream s(42);
    auto f8 = rs::rs_build(gf::field_build(3), 7, 3);
    for (int t = 0; t < 100; ++t) {
        std::vector<Elem> msg(3);
        for (auto& m : msg) m = static_cast<Elem>(s.next_u64() & 7);
        const auto c1 = rs_encode(f8, msg);
        const std::vector<Elem> prefix(c1.begin(), c1.begin() + 3);
        CHECK(prefix == msg);
        CHECK(rs_encode(f8, prefix) == c1);
    }
}

TEST_CASE("decode: clean word, random errors within radius, brute-force agreement") {
    auto code = rs::rs_build(gf::field_build(3), 7, 3);
    const auto all = enumerate_codewords(code);
    rng::Stream s(rng::derive_key(7, 3));

    SUBCASE("clean codeword") {
        const std::vector<Elem> msg{3, 1, 4};
        const auto cw = rs_encode(code, msg);
        auto dec = rs_decode(code, cw);
        REQUIRE(dec.has_value());
        CHECK(*dec == msg);
    }

    SUBCASE("floor(l2/2) random symbol errors over 1000 trials") {
        for (int t = 0; t < 1000; ++t) {
            std::vector<Elem> msg(3);
            for (auto& m : msg) m = static_cast<Elem>(s.next_u64() & 7);
            auto word = rs_encode(code, msg);
            // two distinct error positions, nonzero error values
            const int p1 = static_cast<int>(s.next_u64() % 7);
            int p2 = static_cast<int>(s.next_u64() % 7);
            while (p2 == p1) p2 = static_cast<int>(s.next_u64() % 7);
            word[p1] ^= 1 + static_cast<Elem>(s.next_u64() % 7);
            word[p2] ^= 1 + static_cast<Elem>(s.next_u64() % 7);
            auto dec = rs_decode(code, word);
            REQUIRE(dec.has_value());
            REQUIRE(*dec == msg);
        }
    }

    SUBCASE("agrees with nearest-codeword brute force, including failures") {
        for (int t = 0; t < 300; ++t) {
            std::vector<Elem> word(7);
            for (auto& w : word) w = static_cast<Elem>(s.next_u64() & 7);
            int best = 8;
            std::vector<Elem> best_cw;
            for (const auto& c : all) {
                const int d = hamming(c, word);
                if (d < best) {
                    best = d;
                    best_cw = c;
                }
            }
            auto dec = rs_decode(code, word);
            if (best <= 2) {
                REQUIRE(dec.has_value());
                CHECK(std::equal(dec->begin(), dec->end(), best_cw.begin()));
            } else {
                CHECK_FALSE(dec.has_value());
            }
        }
    }
}

TEST_CASE("decode: erasure-only fill and mixed error/erasure radius") {
    auto code = rs::rs_build(gf::field_build(3), 7, 3);
    rng::Stream s(rng::derive_key(7, 4));
    for (int t = 0; t < 300; ++t) {
        std::vector<Elem> msg(3);
        for (auto& m : msg) m = static_cast<Elem>(s.next_u64() & 7);
        const auto cw = rs_encode(code, msg);

        // l2 = 4 erasures, zero errors.
        auto word = cw;
        std::vector<std::size_t> erasures;
        while (erasures.size() < 4) {
            const std::size_t pos = s.next_u64() % 7;
            if (std::find(erasures.begin(), erasures.end(), pos) == erasures.end())
                erasures.push_back(pos);
        }
        for (auto pos : erasures) word[pos] = static_cast<Elem>(s.next_u64() & 7);
        auto dec = rs_decode(code, word, erasures);
        REQUIRE(dec.has_value());
        CHECK(*dec == msg);

        // 1 error + 2 erasures: 2*1 + 2 <= 4.
        word = cw;
        const std::size_t e1 = s.next_u64() % 7;
        std::size_t e2 = s.next_u64() % 7;
        while (e2 == e1) e2 = s.next_u64() % 7;
        std::size_t perr = s.next_u64() % 7;
        while (perr == e1 || perr == e2) perr = s.next_u64() % 7;
        word[e1] = static_cast<Elem>(s.next_u64() & 7);
        word[e2] = static_cast<Elem>(s.next_u64() & 7);
        word[perr] ^= 1 + static_cast<Elem>(s.next_u64() % 7);
        dec = rs_decode(code, word, std::vector<std::size_t>{e1, e2});
        REQUIRE(dec.has_value());
        CHECK(*dec == msg);
    }
    CHECK_THROWS_AS(
        rs_decode(code, std::vector<Elem>(7, 0), std::vector<std::size_t>{0, 0}),
        ContractError);
    CHECK_THROWS_AS(rs_decode(code, std::vector<Elem>(7, 0), std::vector<std::size_t>{9}),
                    ContractError);
}

TEST_CASE("preimage counts: uniform over parity values on GF(4) [3,2]") {
    auto code = rs::rs_build(gf::field_build(2), 3, 2);
    CHECK(rs::rs_preimage_count(code) == 4);  // |F|^{l1-l2} = 4^1
    for (Elem parity = 0; parity < 4; ++parity) {
        const auto pre = rs::rs_preimage_enumerate(code, std::vector<Elem>{parity});
        CHECK(pre.size() == 4);
        for (const auto& msg : pre) {
            const auto cw = rs_encode(code, msg);
            CHECK(cw[2] == parity);
        }
    }
}

TEST_CASE("preimage enumeration refuses infeasible scale") {
    auto code = rs::rs_build(gf::field_build(5), 32, 24);
    CHECK_THROWS_AS(rs::rs_preimage_enumerate(code, std::vector<Elem>(8, 0)), ScaleError);
}

TEST_CASE("every tiny instance is MDS with the closed-form weight counts") {
    for (int m : {2, 3}) {
        const auto field = gf::field_build(m);
        const int fsize = static_cast<int>(field.size());
        for (int L = 3; L <= std::min(7, fsize); ++L)
            for (int l1 = 1; l1 < L; ++l1) {
                const auto code = rs::rs_build(field, L, l1);
                std::vector<long> counts(L + 1, 0);
                std::vector<rs::Elem> msg(l1, 0);
                while (true) {
                    const auto cw = rs_encode(code, msg);
                    ++counts[weight(cw)];
                    int pos = 0;
                    while (pos < l1 && ++msg[pos] == field.size()) msg[pos++] = 0;
                    if (pos == l1) break;
                }
                const int dmin = code.l2 + 1;
                REQUIRE(counts[0] == 1);
                for (int w = 1; w < dmin; ++w) REQUIRE(counts[w] == 0);
                for (int w = dmin; w <= L; ++w)
                    REQUIRE(rs::rs_weight_distribution(L, dmin, fsize, w) == counts[w]);
            }
    }
}

TEST_CASE("weight distribution and decode argument contracts") {
    CHECK_THROWS_AS(rs::rs_weight_distribution(3, 2, 4, 4), ContractError);  // i > L
    auto code = rs::rs_build(gf::field_build(3), 7, 3);
    CHECK_THROWS_AS(rs_decode(code, std::vector<Elem>(6, 0)), ContractError);
    CHECK_THROWS_AS(rs_decode(code, std::vector<Elem>(7, 9)), ContractError);  // symbol >= 8
}
