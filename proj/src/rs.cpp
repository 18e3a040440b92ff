#include "covert/rs.hpp"

#include <algorithm>
#include <string>

namespace covert::rs {

namespace {

// Dense polynomials over GF(2^m), coefficients ascending. The zero polynomial
// is the empty vector.
using Poly = std::vector<Elem>;

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }  // -1 for zero

Poly add(const gf::Field& f, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = f.add(r[i], b[i]);
    trim(r);
    return r;
}

Poly mul(const gf::Field& f, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
    }
    return r;
}

Poly scale(const gf::Field& f, const Poly& a, Elem s) {
    Poly r = a;
    for (auto& c : r) c = f.mul(c, s);
    return r;
}

Elem eval(const gf::Field& f, const Poly& p, Elem x) {
    Elem acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
    return acc;
}

// quotient/remainder of a by b (b nonzero).
std::pair<Poly, Poly> divmod(const gf::Field& f, Poly a, const Poly& b) {
    Poly q;
    const int db = degree(b);
    const Elem lead_inv = f.inv(b.back());
    while (degree(a) >= db) {
        const int shift = degree(a) - db;
        const Elem coef = f.mul(a.back(), lead_inv);
        if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, 0);
        q[shift] = f.add(q[shift], coef);
        for (int i = 0; i <= db; ++i)
            a[shift + i] = f.add(a[shift + i], f.mul(coef, b[i]));
        trim(a);
    }
    return {std::move(q), std::move(a)};
}

// Exact synthetic division of p by (x - root); remainder must be zero.
Poly divide_linear(const gf::Field& f, const Poly& p, Elem root) {
    Poly q(p.size() - 1, 0);
    Elem carry = 0;
    for (std::size_t i = p.size(); i-- > 1;) {
        carry = f.add(p[i], f.mul(carry, root));
        q[i - 1] = carry;
    }
    return q;
}

// Lagrange interpolation through (xs[i], ys[i]), all xs distinct.
Poly interpolate(const gf::Field& f, std::span<const Elem> xs, std::span<const Elem> ys) {
    // master(x) = prod (x - xs[i]); term_i = master/(x - xs[i]) scaled to hit ys[i].
    Poly master{1};
    for (Elem x : xs) master = mul(f, Poly{x, 1}, master);  // x - xs[i] == x + xs[i]
    Poly acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] == 0) continue;
        Poly term = divide_linear(f, master, xs[i]);
        const Elem denom = eval(f, term, xs[i]);
        acc = add(f, acc, scale(f, term, f.mul(ys[i], f.inv(denom))));
    }
    return acc;
}

}  // namespace

std::vector<Elem> RsCode::evaluate_poly(std::span<const Elem> coeffs) const {
    std::vector<Elem> out(L);
    Poly p(coeffs.begin(), coeffs.end());
    for (int i = 0; i < L; ++i) out[i] = eval(field, p, eval_points[i]);
    return out;
}

RsCode rs_build(gf::Field field, int L, int l1) {
    if (l1 < 1 || l1 >= L) throw ConfigError("RS: need 1 <= l1 < L");
    if (static_cast<std::uint64_t>(L) > field.size())
        throw InfeasibleError("RS: length L=" + std::to_string(L) + " exceeds field size 2^" +
                              std::to_string(field.m));
    RsCode code;
    code.L = L;
    code.l1 = l1;
    code.l2 = L - l1;
    code.eval_points.resize(L);
    for (int i = 0; i < L; ++i) code.eval_points[i] = field.canonical_element(i);

    // Vandermonde generator G[r][c] = mu_c^r, then Gauss-Jordan on the first
    // l1 columns to reach [I | P]. The leading l1 x l1 block is Vandermonde at
    // distinct points, hence invertible.
    std::vector<std::vector<Elem>> g(l1, std::vector<Elem>(L));
    for (int c = 0; c < L; ++c) {
        Elem v = 1;
        for (int r = 0; r < l1; ++r) {
            g[r][c] = v;
            v = field.mul(v, code.eval_points[c]);
        }
    }
    for (int col = 0; col < l1; ++col) {
        int pivot = -1;
        for (int r = col; r < l1; ++r)
            if (g[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw InfeasibleError("RS: singular leading block");
        std::swap(g[col], g[pivot]);
        const Elem inv = field.inv(g[col][col]);
        for (int c = 0; c < L; ++c) g[col][c] = field.mul(g[col][c], inv);
        for (int r = 0; r < l1; ++r) {
            if (r == col || g[r][col] == 0) continue;
            const Elem factor = g[r][col];
            for (int c = 0; c < L; ++c)
                g[r][c] = field.add(g[r][c], field.mul(factor, g[col][c]));
        }
    }
    code.gen_systematic = std::move(g);
    code.field = std::move(field);
    return code;
}

std::vector<Elem> rs_encode(const RsCode& code, std::span<const Elem> msg) {
    if (static_cast<int>(msg.size()) != code.l1)
        throw ContractError("RS encode: message length " + std::to_string(msg.size()) +
                            " != l1=" + std::to_string(code.l1));
    std::vector<Elem> out(code.L, 0);
    for (int i = 0; i < code.l1; ++i) out[i] = msg[i];
    for (int c = code.l1; c < code.L; ++c) {
        Elem acc = 0;
        for (int i = 0; i < code.l1; ++i)
            acc = code.field.add(acc, code.field.mul(msg[i], code.gen_systematic[i][c]));
        out[c] = acc;
    }
    return out;
}

std::optional<std::vector<Elem>> rs_decode(const RsCode& code,
                                           std::span<const Elem> received,
                                           std::span<const std::size_t> erasures) {
    const gf::Field& f = code.field;
    if (static_cast<int>(received.size()) != code.L)
        throw ContractError("RS decode: received length != L");
    std::vector<bool> erased(code.L, false);
    for (std::size_t idx : erasures) {
        if (idx >= static_cast<std::size_t>(code.L))
            throw ContractError("RS decode: erasure index out of range");
        if (erased[idx]) throw ContractError("RS decode: duplicate erasure index");
        erased[idx] = true;
    }
    for (Elem s : received)
        if (s >= f.size()) throw ContractError("RS decode: symbol outside field");

    const int s = static_cast<int>(erasures.size());
    if (s > code.l2) return std::nullopt;  // radius already exhausted

    std::vector<Elem> xs, ys;
    xs.reserve(code.L - s);
    ys.reserve(code.L - s);
    for (int i = 0; i < code.L; ++i) {
        if (erased[i]) continue;
        xs.push_back(code.eval_points[i]);
        ys.push_back(received[i]);
    }
    const int np = static_cast<int>(xs.size());

    // Gao decoding on the restriction to non-erased coordinates (still an
    // evaluation code with the same message polynomials): g0 = prod(x - mu_i),
    // g1 = interpolation, then partial EEA down to deg < (np + l1) / 2 and an
    // exact division recovers the message polynomial when
    // errors <= (np - l1) / 2.
    Poly g0{1};
    for (Elem x : xs) g0 = mul(f, Poly{x, 1}, g0);
    Poly r0 = g0;
    Poly r1 = interpolate(f, xs, ys);
    Poly v0, v1{1};
    while (2 * degree(r1) >= np + code.l1) {
        auto [q, rem] = divmod(f, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(rem);
        Poly vnext = add(f, v0, mul(f, q, v1));
        v0 = std::move(v1);
        v1 = std::move(vnext);
    }
    if (v1.empty()) return std::nullopt;
    auto [fpoly, rem] = divmod(f, r1, v1);
    if (!rem.empty() || degree(fpoly) >= code.l1) return std::nullopt;

    // Certify the contract radius on the full length-L word.
    const std::vector<Elem> cw = code.evaluate_poly(fpoly);
    int errors = 0;
    for (int i = 0; i < code.L; ++i)
        if (!erased[i] && cw[i] != received[i]) ++errors;
    if (2 * errors + s > code.l2) return std::nullopt;

    return std::vector<Elem>(cw.begin(), cw.begin() + code.l1);
}

namespace {

BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

}  // namespace

BigInt rs_weight_distribution(int L, int dmin, const BigInt& field_size, int i) {
    if (i > L) throw ContractError("weight distribution: i > L");
    if (i < dmin) return 0;
    // A_i = C(L,i) (|F|-1) sum_{j=0}^{i-dmin} (-1)^j C(i-1,j) |F|^{i-dmin-j}
    BigInt sum = 0;
    for (int j = 0; j <= i - dmin; ++j) {
        BigInt term = binomial(i - 1, j);
        BigInt power = 1;
        for (int e = 0; e < i - dmin - j; ++e) power *= field_size;
        term *= power;
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
    }
    return binomial(L, i) * (field_size - 1) * sum;
}

BigInt rs_preimage_count(const RsCode& code) {
    if (code.l1 < code.l2)
        throw ContractError("preimage count: requires l1 >= l2 (lambda close to 1)");
    BigInt r = 1;
    for (int i = 0; i < code.l1 - code.l2; ++i) r *= code.field.size();
    return r;
}

std::vector<std::vector<Elem>> rs_preimage_enumerate(const RsCode& code,
                                                     std::span<const Elem> parity) {
    if (static_cast<int>(parity.size()) != code.l2)
        throw ContractError("preimage enumerate: parity length != l2");
    const double total_log2 = static_cast<double>(code.l1) * code.field.m;
    if (total_log2 > 20.0)
        throw ScaleError("preimage enumerate: |F|^l1 exceeds 2^20 feasibility cap");

    std::vector<std::vector<Elem>> hits;
    std::vector<Elem> msg(code.l1, 0);
    const Elem fsize = code.field.size();
    while (true) {
        const auto cw = rs_encode(code, msg);
        if (std::equal(cw.begin() + code.l1, cw.end(), parity.begin())) hits.push_back(msg);
        // odometer over F^l1
        int pos = 0;
        while (pos < code.l1 && ++msg[pos] == fsize) msg[pos++] = 0;
        if (pos == code.l1) break;
    }
    return hits;
}

}  // namespace covert::rs
