#pragma once

#include <utility>

#include "relclass/arith.hpp"

namespace relclass {

/// Fundamental unit (x + y*sqrt(m))/c of the maximal order of Q(sqrt(m)),
/// normalized to the smallest unit > 1.  c = 2 iff m = 1 (mod 4), and then
/// x = y (mod 2); norm = (x^2 - m y^2)/c^2 is +1 or -1.
struct QuadUnit {
    Int m;
    Int x;
    Int y;
    int c = 1;
    int norm = 1;
};

/// Coordinates of u^n: (a + b*sqrt(m))/c = u^n exactly.  b is always an
/// integer in this normalization, so "f divides b" is meaningful.
struct PellCoords {
    Int n;
    Int a;
    Int b;
    Int m;
    int c = 1;
};

/// Residue pair (A, B) standing for the matrix [[A, m*B], [B, A]] mod f.
/// The shape is closed under multiplication, and det = A^2 - m B^2 mod f.
struct ModMatrix2 {
    Int f;      // modulus >= 2
    Int m_res;  // m mod f
    Int A;
    Int B;

    static ModMatrix2 identity(const Int& f, const Int& m_res) {
        return {f, m_res, Int(1), Int(0)};
    }

    ModMatrix2 operator*(const ModMatrix2& o) const {
        if (f != o.f) throw std::domain_error("ModMatrix2: modulus mismatch");
        return {f, m_res, mod(A * o.A + m_res * B * o.B, f), mod(A * o.B + B * o.A, f)};
    }

    Int det() const { return mod(A * A - m_res * B * B, f); }

    bool is_identity() const { return A == 1 && B == 0; }
    bool is_diagonal() const { return B == 0; }
};

/// One quadratic surd alpha_i = (P + sqrt(m))/Q of the expansion of sqrt(m),
/// with the convergents accumulated so far.  Q always divides m - P^2.
struct CfState {
    Int m;
    Int s;  // isqrt(m)
    Int P{0};
    Int Q{1};
    Int a;       // partial quotient of the current surd
    Int p;       // convergent numerator  p_i
    Int p_prev;  // p_{i-1}
    Int q;       // convergent denominator q_i
    Int q_prev;

    explicit CfState(const Int& m_in) : m(m_in), s(isqrt(m_in)) {
        a = s;
        p = a;
        p_prev = 1;
        q = 1;
        q_prev = 0;
    }

    // Move to the next surd; returns the new Q.
    const Int& advance_surd() {
        P = a * Q - P;
        Q = (m - P * P) / Q;
        return Q;
    }

    // Partial quotient of the current surd and convergent update.
    void absorb() {
        a = (P + s) / Q;
        Int pn = a * p + p_prev;
        p_prev = p;
        p = pn;
        Int qn = a * q + q_prev;
        q_prev = q;
        q = qn;
    }
};

namespace detail {

// Least unit > 1 of Z[sqrt(m)]: the convergent just before the continued
// fraction of sqrt(m) closes its period.  x^2 - m y^2 = (-1)^period.
inline void cf_pell_solution(const Int& m, Int& x, Int& y, int& norm) {
    CfState st(m);
    unsigned long period = 0;
    while (true) {
        ++period;
        if (st.advance_surd() == 1) break;
        st.absorb();
    }
    x = st.p;
    y = st.q;
    norm = (period % 2 == 1) ? -1 : +1;
}

}  // namespace detail

/// Fundamental unit of the maximal order of Q(sqrt(m)), m squarefree > 1.
///
/// The continued fraction of sqrt(m) yields the least unit x0 + y0 sqrt(m)
/// of Z[sqrt(m)].  For m = 1 (mod 4) the maximal order's unit group contains
/// that one with index 1 or 3 (a half-integer unit squared is never
/// integral), so the only other candidate is a cube root (u + v sqrt(m))/2,
/// pinned down exactly by trace(eps^3) = u^3 - 3*norm*u = 2*x0.
inline QuadUnit fundamental_unit(const Int& m) {
    if (m <= 1) throw std::domain_error("fundamental_unit: need squarefree m > 1");
    if (!is_squarefree(m)) throw std::domain_error("fundamental_unit: m is not squarefree");

    Int x0, y0;
    int norm0;
    detail::cf_pell_solution(m, x0, y0, norm0);

    if (mod(m, 4) != 1) {
        return {m, x0, y0, 1, norm0};
    }

    Int target = 2 * x0;
    Int r;
    mpz_root(r.get_mpz_t(), target.get_mpz_t(), 3);
    for (int n : {-1, +1}) {
        for (Int u = r - 1; u <= r + 1; ++u) {
            if (u < 1) continue;
            if (u * u * u - 3 * n * u != target) continue;
            Int mv2 = u * u - 4 * n;
            if (mv2 <= 0 || !divides(m, mv2)) continue;
            Int v2 = mv2 / m;
            if (!is_square(v2)) continue;
            Int v = isqrt(v2);
            if (v < 1) continue;
            // verify (u + v sqrt m)^3 = 8 (x0 + y0 sqrt m) before accepting
            if (u * (u * u + 3 * m * v * v) != 8 * x0) continue;
            if (v * (3 * u * u + m * v * v) != 8 * y0) continue;
            return {m, u, v, 2, n};
        }
    }
    return {m, 2 * x0, 2 * y0, 2, norm0};
}

namespace detail {

// Integral basis (1, w): w = sqrt(m) when c = 1, w = (1+sqrt(m))/2 when
// c = 2.  w^2 = t*w + s keeps all products in integer coordinates.
struct OmegaCtx {
    Int t;
    Int s;
};

inline OmegaCtx omega_ctx(const QuadUnit& u) {
    if (u.c == 2) return {Int(1), (u.m - 1) / 4};
    return {Int(0), u.m};
}

struct UV {
    Int u;
    Int v;
};

inline UV uv_of(const QuadUnit& q) {
    if (q.c == 2) return {(q.x - q.y) / 2, q.y};
    return {q.x, q.y};
}

inline UV uv_mul(const UV& a, const UV& b, const OmegaCtx& cx) {
    return {a.u * b.u + cx.s * a.v * b.v,
            a.u * b.v + a.v * b.u + cx.t * a.v * b.v};
}

inline UV uv_mul_mod(const UV& a, const UV& b, const OmegaCtx& cx, const Int& f) {
    return {mod(a.u * b.u + cx.s * a.v * b.v, f),
            mod(a.u * b.v + a.v * b.u + cx.t * a.v * b.v, f)};
}

template <typename Mul>
inline UV uv_pow(const UV& base, const Int& n, Mul&& mul) {
    UV acc{Int(1), Int(0)};
    UV sq = base;
    unsigned long bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long i = 0; i < bits; ++i) {
        if (mpz_tstbit(n.get_mpz_t(), i)) acc = mul(acc, sq);
        if (i + 1 < bits) sq = mul(sq, sq);
    }
    return acc;
}

// (a, b) of (a + b sqrt m)/c from basis coordinates.
inline std::pair<Int, Int> ab_of(const UV& w, int c) {
    if (c == 2) return {2 * w.u + w.v, w.v};
    return {w.u, w.v};
}

}  // namespace detail

/// Exact coordinates of u^n, n >= 1.  Binary powering on bigints; reach for
/// coords_mod instead when only residues are needed.
inline PellCoords unit_power(const QuadUnit& u, const Int& n) {
    if (n < 1) throw std::domain_error("unit_power: exponent must be >= 1");
    auto cx = detail::omega_ctx(u);
    auto w = detail::uv_pow(detail::uv_of(u), n,
                            [&cx](const detail::UV& a, const detail::UV& b) { return detail::uv_mul(a, b, cx); });
    auto [a, b] = detail::ab_of(w, u.c);
    return {n, a, b, u.m, u.c};
}

/// (a_n mod f, b_n mod f) in O(log n) multiplications mod f.  Works for every
/// f >= 2: the (1, w) basis needs no division by c.
inline std::pair<Int, Int> coords_mod(const QuadUnit& u, const Int& n, const Int& f) {
    if (n < 1) throw std::domain_error("coords_mod: exponent must be >= 1");
    if (f < 2) throw std::domain_error("coords_mod: modulus must be >= 2");
    auto cx = detail::omega_ctx(u);
    auto uv = detail::uv_of(u);
    detail::UV base{mod(uv.u, f), mod(uv.v, f)};
    auto w = detail::uv_pow(base, n,
                            [&cx, &f](const detail::UV& a, const detail::UV& b) { return detail::uv_mul_mod(a, b, cx, f); });
    if (u.c == 2) return {mod(2 * w.u + w.v, f), w.v};
    return {w.u, w.v};
}

/// The multiplication-by-u matrix [[a1, m b1], [b1, a1]] reduced mod f, in
/// coordinates with c cleared (multiplied through by c^-1 mod f).  For c = 2
/// this needs f odd; even f is an explicit unsupported input.
inline ModMatrix2 unit_matrix_mod(const QuadUnit& u, const Int& f) {
    if (f < 2) throw std::domain_error("unit_matrix_mod: modulus must be >= 2");
    Int m_res = mod(u.m, f);
    if (u.c == 1) {
        return {f, m_res, mod(u.x, f), mod(u.y, f)};
    }
    Int inv2;
    if (mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), f.get_mpz_t()) == 0) {
        throw std::domain_error("unit_matrix_mod: c = 2 with even modulus is unsupported; use coords_mod");
    }
    return {f, m_res, mod(u.x * inv2, f), mod(u.y * inv2, f)};
}

/// M^t by binary exponentiation, t >= 0; preserves the [[A, mB], [B, A]] shape.
inline ModMatrix2 matrix_power_mod(const ModMatrix2& M, const Int& t) {
    if (t < 0) throw std::domain_error("matrix_power_mod: exponent must be >= 0");
    ModMatrix2 acc = ModMatrix2::identity(M.f, M.m_res);
    ModMatrix2 sq = M;
    unsigned long bits = mpz_sizeinbase(t.get_mpz_t(), 2);
    if (t == 0) return acc;
    for (unsigned long i = 0; i < bits; ++i) {
        if (mpz_tstbit(t.get_mpz_t(), i)) acc = acc * sq;
        if (i + 1 < bits) sq = sq * sq;
    }
    return acc;
}

}  // namespace relclass
