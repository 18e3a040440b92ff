#ifndef COVERT_GF2M_HPP
#define COVERT_GF2M_HPP

#include <cstdint>
#include <vector>

#include "covert/errors.hpp"

namespace covert::gf {

using Elem = std::uint32_t;

// GF(2^m) with table-based arithmetic. Addition is bitwise XOR; mul/inv go
// through discrete-log tables generated from one fixed primitive polynomial
// per degree, so all outputs are bit-reproducible.
struct Field {
    int m = 0;
    Elem primitive_poly = 0;              // degree-m bitmask, e.g. 0x13 for x^4+x+1
    std::vector<Elem> exp_table;          // exp_table[i] = alpha^i, i in [0, 2(2^m-1))
    std::vector<std::uint32_t> log_table; // log_table[a] = log_alpha(a), a != 0

    Elem size() const { return Elem(1) << m; }
    Elem order() const { return (Elem(1) << m) - 1; }  // multiplicative group order

    Elem add(Elem a, Elem b) const { return a ^ b; }

    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_table[log_table[a] + log_table[b]];
    }

    Elem inv(Elem a) const {
        if (a == 0) throw DomainError("GF(2^m): inverse of zero");
        return exp_table[order() - log_table[a]];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, std::uint64_t e) const {
        if (a == 0) return e == 0 ? 1 : 0;
        return exp_table[(log_table[a] * e) % order()];
    }

    // Element k in the canonical enumeration 0, 1, alpha, alpha^2, ...
    Elem canonical_element(std::uint32_t k) const {
        return k == 0 ? 0 : exp_table[k - 1];
    }
};

// The hard-coded primitive polynomial used for degree m (2 <= m <= 20).
Elem canonical_primitive_poly(int m);

// Builds the field tables for degree m; verifies the generator cycle has full
// order 2^m - 1 while filling them.
Field field_build(int m);

// Carry-less polynomial multiplication modulo `poly` (degree m). Table-free;
// used as the independent oracle for mul.
Elem clmul_mod(Elem a, Elem b, Elem poly, int m);

inline Elem field_mul(const Field& f, Elem a, Elem b) { return f.mul(a, b); }
inline Elem field_inv(const Field& f, Elem a) { return f.inv(a); }

}  // namespace covert::gf

#endif
