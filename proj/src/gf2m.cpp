#include "covert/gf2m.hpp"

#include <string>

namespace covert::gf {

Elem canonical_primitive_poly(int m) {
    // One fixed minimum-weight primitive polynomial per degree (Peterson's
    // tables). Bitmask includes the leading x^m term.
    switch (m) {
        case 2: return 0x7;        // x^2 + x + 1
        case 3: return 0xB;        // x^3 + x + 1
        case 4: return 0x13;       // x^4 + x + 1
        case 5: return 0x25;       // x^5 + x^2 + 1
        case 6: return 0x43;       // x^6 + x + 1
        case 7: return 0x89;       // x^7 + x^3 + 1
        case 8: return 0x11D;      // x^8 + x^4 + x^3 + x^2 + 1
        case 9: return 0x211;      // x^9 + x^4 + 1
        case 10: return 0x409;     // x^10 + x^3 + 1
        case 11: return 0x805;     // x^11 + x^2 + 1
        case 12: return 0x1053;    // x^12 + x^6 + x^4 + x + 1
        case 13: return 0x201B;    // x^13 + x^4 + x^3 + x + 1
        case 14: return 0x4443;    // x^14 + x^10 + x^6 + x + 1
        case 15: return 0x8003;    // x^15 + x + 1
        case 16: return 0x1100B;   // x^16 + x^12 + x^3 + x + 1
        case 17: return 0x20009;   // x^17 + x^3 + 1
        case 18: return 0x40081;   // x^18 + x^7 + 1
        case 19: return 0x80027;   // x^19 + x^5 + x^2 + x + 1
        case 20: return 0x100009;  // x^20 + x^3 + 1
        default:
            throw ConfigError("GF(2^m): extension degree m=" + std::to_string(m) +
                              " outside supported range [2, 20]");
    }
}

Field field_build(int m) {
    Field f;
    f.m = m;
    f.primitive_poly = canonical_primitive_poly(m);  // throws if m out of range

    const Elem n = f.size();
    const Elem order = f.order();
    f.exp_table.assign(2 * order, 0);
    f.log_table.assign(n, 0);

    // Repeatedly multiply by alpha = x; reduce by the primitive polynomial.
    Elem x = 1;
    for (Elem i = 0; i < order; ++i) {
        f.exp_table[i] = x;
        if (i > 0 && x == 1)
            throw ConfigError("GF(2^m): polynomial is not primitive (short cycle)");
        f.log_table[x] = i;
        x <<= 1;
        if (x & n) x ^= f.primitive_poly;
    }
    if (x != 1) throw ConfigError("GF(2^m): generator cycle does not close");
    // Doubled table removes the mod in mul().
    for (Elem i = 0; i < order; ++i) f.exp_table[order + i] = f.exp_table[i];
    return f;
}

Elem clmul_mod(Elem a, Elem b, Elem poly, int m) {
    // Shift-and-xor schoolbook multiply, reducing whenever the accumulator
    // would reach degree m.
    Elem acc = 0;
    const Elem high = Elem(1) << m;
    for (int i = m - 1; i >= 0; --i) {
        acc <<= 1;
        if (acc & high) acc ^= poly;
        if ((b >> i) & 1) acc ^= a;
    }
    return acc;
}

}  // namespace covert::gf
