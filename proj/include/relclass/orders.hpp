#pragma once

#include <optional>
#include <utility>

#include "relclass/arith.hpp"
#include "relclass/pell.hpp"

namespace relclass {

/// The order of conductor f inside the maximal order of Q(sqrt(d0));
/// non-maximal iff f > 1.  m is the squarefree part of d0.
struct OrderId {
    Int d0;
    Int f;
    Int m;
};

/// psi, phi and the three relative class numbers of one order, together with
/// the unit norms that decide the strict/wide factor of 2.
struct ClassRecord {
    OrderId order;
    Int psi;
    Int phi;
    Int h_rel;            // h(d0 f^2) / h(d0) = psi/phi
    int norm_eps_d0 = 1;
    int norm_eps_d0f2 = 1;
    Int h_plus_rel;       // strict relative class number
    Int H_rel;            // relative form class number, = h_plus_rel
};

namespace detail {

inline Int d0_of(const QuadUnit& u) {
    return u.c == 2 ? u.m : Int(4 * u.m);
}

inline Int m_of_fundamental(const Int& d0) {
    return mod(d0, 4) == 1 ? d0 : Int(d0 / 4);
}

inline void require_fundamental(const Int& d0, const char* who) {
    if (split_discriminant(d0).second != 1) {
        throw std::domain_error(std::string(who) + ": discriminant is not fundamental: " + d0.get_str());
    }
}

}  // namespace detail

/// psi(f) = f * prod over primes q | f of (1 - (d0/q)/q), evaluated exactly
/// in integers (divide by q, multiply by q - (d0/q), one prime at a time).
/// This is the order of the Pell solution group mod a prime conductor.
inline Int psi(const Int& d0, const Int& f) {
    detail::require_fundamental(d0, "psi");
    if (f < 1) throw std::domain_error("psi: conductor must be >= 1");
    Int res = f;
    for (const auto& pp : factor(f)) {
        res /= pp.prime;
        res *= pp.prime - kronecker(d0, pp.prime);
    }
    return res;
}

/// Least n >= 1 with eps^n in the order of conductor f, i.e. f | b_n.
/// Only divisors of psi(f) need testing: the n with eps^n in the order form
/// a subgroup phi*Z of Z, and psi/phi is a class number, hence an integer.
inline Int phi(const QuadUnit& eps, const Int& f) {
    if (f < 1) throw std::domain_error("phi: conductor must be >= 1");
    if (f == 1) return 1;
    Int ps = psi(detail::d0_of(eps), f);
    for (const Int& d : divisors_sorted(factor(ps))) {
        if (coords_mod(eps, d, f).second == 0) return d;
    }
    throw verification_error("phi: no divisor of psi(" + f.get_str() + ") puts the unit in the order");
}

inline Int phi(const Int& d0, const Int& f) {
    detail::require_fundamental(d0, "phi");
    return phi(fundamental_unit(detail::m_of_fundamental(d0)), f);
}

/// Linear scan n = 1, 2, ... using exact arithmetic; verification fallback
/// for the divisor search, only sensible for small f.
inline Int phi_exhaustive(const QuadUnit& eps, const Int& f) {
    if (f < 1) throw std::domain_error("phi_exhaustive: conductor must be >= 1");
    if (f == 1) return 1;
    Int bound = psi(detail::d0_of(eps), f);
    auto cx = detail::omega_ctx(eps);
    auto base = detail::uv_of(eps);
    auto cur = base;
    for (Int n(1); n <= bound; ++n) {
        if (mod(cur.v, f) == 0) return n;
        cur = detail::uv_mul(cur, base, cx);
    }
    throw verification_error("phi_exhaustive: unit never entered the order within psi(f) steps");
}

namespace detail {

inline Int rel_class_number_fundamental(const QuadUnit& eps, const Int& f) {
    Int ps = psi(d0_of(eps), f);
    Int ph = phi(eps, f);
    if (!divides(ph, ps)) {
        throw verification_error("relative class number: phi(" + f.get_str() + ") does not divide psi");
    }
    return ps / ph;
}

}  // namespace detail

/// Relative ideal class number h(d f^2)/h(d) for a positive non-square
/// discriminant d.  For fundamental d this is psi(f)/phi(f); for d = d0 g^2
/// it is the quotient h_{d0}(g f) / h_{d0}(g), integral by the divisibility
/// of relative class numbers along divisors.
inline Int relative_class_number(const Int& d, const Int& f) {
    if (f < 1) throw std::domain_error("relative_class_number: conductor must be >= 1");
    auto [d0, g] = split_discriminant(d);
    QuadUnit eps = fundamental_unit(detail::m_of_fundamental(d0));
    if (g == 1) return detail::rel_class_number_fundamental(eps, f);
    Int hn = detail::rel_class_number_fundamental(eps, g * f);
    Int hd = detail::rel_class_number_fundamental(eps, g);
    if (!divides(hd, hn)) {
        throw verification_error("relative_class_number: quotient over the non-maximal base is not integral");
    }
    return hn / hd;
}

inline Int relative_class_number(const QuadUnit& eps, const Int& f) {
    if (f < 1) throw std::domain_error("relative_class_number: conductor must be >= 1");
    return detail::rel_class_number_fundamental(eps, f);
}

/// Full bookkeeping for one order.  The fundamental unit of the conductor-f
/// order is eps^phi(f), so its norm is norm(eps)^phi(f); the strict relative
/// class number doubles exactly when norm(eps_d0) = -1 and that power is +1.
/// The combination norm(eps_d0) = +1 with norm(eps_d0f2) = -1 cannot occur.
inline ClassRecord class_record(const QuadUnit& eps, const Int& f) {
    if (f < 1) throw std::domain_error("class_record: conductor must be >= 1");
    ClassRecord rec;
    rec.order = {detail::d0_of(eps), f, eps.m};
    rec.psi = psi(rec.order.d0, f);
    rec.phi = phi(eps, f);
    if (!divides(rec.phi, rec.psi)) {
        throw verification_error("class_record: phi does not divide psi");
    }
    rec.h_rel = rec.psi / rec.phi;
    rec.norm_eps_d0 = eps.norm;
    rec.norm_eps_d0f2 = (eps.norm == -1 && mpz_odd_p(rec.phi.get_mpz_t())) ? -1 : +1;
    bool doubles = rec.norm_eps_d0 == -1 && rec.norm_eps_d0f2 == +1;
    rec.h_plus_rel = doubles ? Int(2 * rec.h_rel) : rec.h_rel;
    rec.H_rel = rec.h_plus_rel;
    return rec;
}

inline ClassRecord class_record(const Int& d0, const Int& f) {
    detail::require_fundamental(d0, "class_record");
    return class_record(fundamental_unit(detail::m_of_fundamental(d0)), f);
}

/// If m does not divide y(eps_m), some prime f | m misses y, and for it
/// psi(f) = f while eps is not yet in the order, forcing phi(f) = f and a
/// relative class number of exactly 1.  Returns the smallest such prime,
/// re-verified; empty when m | y (no conductor *dividing m* works then —
/// this says nothing about conductors prime to m).
inline std::optional<Int> has_trivial_relative_order(const Int& m) {
    QuadUnit eps = fundamental_unit(m);
    if (mod(eps.y, m) == 0) return std::nullopt;
    for (const auto& pp : factor(m)) {
        if (mod(eps.y, pp.prime) == 0) continue;
        Int h = detail::rel_class_number_fundamental(eps, pp.prime);
        if (h != 1) {
            throw verification_error("has_trivial_relative_order: witness prime " + pp.prime.get_str() +
                                     " for m = " + m.get_str() + " gave relative class number " + h.get_str());
        }
        return pp.prime;
    }
    throw verification_error("has_trivial_relative_order: squarefree m with m not dividing y must own a witness prime");
}

/// True iff eps^(psi(f)/2) already lies in the conductor-f order, i.e. the
/// matrix power M^(psi(f)/2) mod f is diagonal.  Requires an odd prime f
/// not dividing 2m and norm(eps) = +1 (so the matrix group mod f is the
/// cyclic Pell solution group of order psi(f), which is even here).
/// Also verifies M^psi(f) = identity and the matrix/scalar agreement.
inline bool half_power_membership(const QuadUnit& eps, const Int& f) {
    if (f < 3 || !is_prime(f)) throw std::domain_error("half_power_membership: f must be an odd prime");
    if (gcd_int(f, 2 * eps.m) != 1) throw std::domain_error("half_power_membership: f must not divide 2m");
    if (eps.norm != 1) throw std::domain_error("half_power_membership: unit norm must be +1");
    Int ps = f - kronecker(detail::d0_of(eps), f);
    if (mpz_odd_p(ps.get_mpz_t())) throw std::domain_error("half_power_membership: psi(f) is odd");

    ModMatrix2 half = matrix_power_mod(unit_matrix_mod(eps, f), ps / 2);
    if (!(half * half).is_identity()) {
        throw verification_error("half_power_membership: M^psi(f) is not the identity mod " + f.get_str());
    }
    auto [a, b] = coords_mod(eps, ps / 2, f);
    (void)a;
    if ((b == 0) != half.is_diagonal()) {
        throw verification_error("half_power_membership: matrix and scalar routes disagree mod " + f.get_str());
    }
    return half.is_diagonal();
}

inline bool half_power_membership(const Int& m, const Int& f) {
    return half_power_membership(fundamental_unit(m), f);
}

/// True iff h_{d0}(f) divides h_{d0}(g); f | g required.
inline bool relative_divisibility_check(const Int& d0, const Int& f, const Int& g) {
    if (f < 1 || g < 1) throw std::domain_error("relative_divisibility_check: conductors must be >= 1");
    if (!divides(f, g)) throw std::domain_error("relative_divisibility_check: f does not divide g");
    detail::require_fundamental(d0, "relative_divisibility_check");
    QuadUnit eps = fundamental_unit(detail::m_of_fundamental(d0));
    Int hf = detail::rel_class_number_fundamental(eps, f);
    Int hg = detail::rel_class_number_fundamental(eps, g);
    return divides(hf, hg);
}

}  // namespace relclass
