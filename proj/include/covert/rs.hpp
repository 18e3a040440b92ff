#ifndef COVERT_RS_HPP
#define COVERT_RS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "covert/gf2m.hpp"

namespace covert::rs {

using gf::Elem;
using BigInt = boost::multiprecision::cpp_int;

// Systematic Reed-Solomon code over GF(2^m): the row space of the Vandermonde
// generator at L distinct evaluation points, systematized by Gaussian
// elimination to [I | P]. Minimum distance l2 + 1 (MDS).
struct RsCode {
    gf::Field field;
    int L = 0;   // code length in symbols
    int l1 = 0;  // message (systematic) length
    int l2 = 0;  // parity length = L - l1
    std::vector<Elem> eval_points;              // mu_1..mu_L, canonical order 0,1,alpha,...
    std::vector<std::vector<Elem>> gen_systematic;  // l1 x L, left block = identity

    // Codeword polynomial evaluated at all L points.
    std::vector<Elem> evaluate_poly(std::span<const Elem> coeffs) const;
};

RsCode rs_build(gf::Field field, int L, int l1);

std::vector<Elem> rs_encode(const RsCode& code, std::span<const Elem> msg);

// Errors-and-erasures decoding: returns the message of the unique codeword c
// with 2 * |{i not erased : c_i != received_i}| + |erasures| <= l2; nullopt if
// no such codeword exists. Internally an erasure-restricted Gao decoder
// (interpolation + partial extended Euclid), which handles the evaluation
// point 0 that locator-based decoders cannot.
std::optional<std::vector<Elem>> rs_decode(const RsCode& code,
                                           std::span<const Elem> received,
                                           std::span<const std::size_t> erasures = {});

// MDS weight distribution: the exact number of weight-i codewords in an
// [L, L-dmin+1] MDS code over a field of `field_size` elements.
BigInt rs_weight_distribution(int L, int dmin, const BigInt& field_size, int i);

// Number of systematic message vectors producing any fixed parity vector:
// |F|^(l1-l2), independent of the parity value. Requires l1 >= l2.
BigInt rs_preimage_count(const RsCode& code);

// Lists every systematic vector mapping to `parity`. Feasible only while
// |F|^l1 <= 2^20.
std::vector<std::vector<Elem>> rs_preimage_enumerate(const RsCode& code,
                                                     std::span<const Elem> parity);

}  // namespace covert::rs

#endif
