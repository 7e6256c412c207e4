#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relclass {

/// Exact arbitrary-precision signed integer; every quantity in this library
/// is one of these.  No floating point anywhere.
using Int = mpz_class;

/// Thrown when a computation contradicts an identity that must hold
/// (non-integral class number quotient, oracle mismatch, ...).  Distinct from
/// std::domain_error, which covers bad inputs.
struct verification_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Canonical residue in [0, f).
inline Int mod(const Int& a, const Int& f) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), f.get_mpz_t());
    return r;
}

inline bool divides(const Int& d, const Int& n) {
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

/// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt: negative input");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

/// Kronecker symbol (d/q), q >= 1.  Coincides with the Legendre symbol for
/// odd prime q; (d/2) is 0 for even d, +1 for d = +-1 (mod 8), -1 otherwise.
inline int kronecker(const Int& d, const Int& q) {
    if (q < 1) throw std::domain_error("kronecker: lower argument must be >= 1");
    return mpz_kronecker(d.get_mpz_t(), q.get_mpz_t());
}

namespace detail {

// True if a proves n composite (n odd > 2, n - 1 = d * 2^r, d odd).
inline bool mr_witness(const Int& n, unsigned long a, const Int& d, unsigned long r) {
    Int base(a);
    if (divides(n, base)) return false;  // base = 0 mod n carries no information
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) return false;
    for (unsigned long i = 1; i < r; ++i) {
        x = mod(x * x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace detail

/// Deterministic primality test.  The 12-prime witness set decides every
/// n < 3.3e24 (covers anything the campaigns produce); larger inputs fall
/// back to GMP's test.
inline bool is_prime(const Int& n) {
    static const unsigned long small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (n < 2) return false;
    for (unsigned long p : small) {
        if (mpz_cmp_ui(n.get_mpz_t(), p) == 0) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    Int d = n - 1;
    unsigned long r = mpz_scan1(d.get_mpz_t(), 0);
    d >>= r;
    for (unsigned long a : small) {
        if (detail::mr_witness(n, a, d, r)) return false;
    }
    static const Int det_bound("3317044064679887385961981");
    if (n < det_bound) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Complete factorization, primes strictly increasing.
using Factorization = std::vector<PrimePower>;

namespace detail {

// Pollard rho (Floyd variant) on an odd composite; deterministic parameter
// sequence c = 1, 2, 3, ...
inline Int rho_split(const Int& n) {
    for (unsigned long c = 1;; ++c) {
        Int x(2), y(2), d(1);
        while (d == 1) {
            x = mod(x * x + c, n);
            y = mod(y * y + c, n);
            y = mod(y * y + c, n);
            d = gcd_int(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

inline void collect_factors(Int n, std::vector<Int>& primes) {
    if (n == 1) return;
    if (is_prime(n)) {
        primes.push_back(n);
        return;
    }
    Int d = rho_split(n);
    collect_factors(d, primes);
    collect_factors(n / d, primes);
}

}  // namespace detail

/// Deterministic prime factorization of n >= 1 (empty for n = 1).
/// Trial division up to 1e6, then rho on whatever survives.
inline Factorization factor(const Int& n_in) {
    if (n_in < 1) throw std::domain_error("factor: input must be a positive integer");
    Factorization out;
    Int n = n_in;

    unsigned long e2 = mpz_scan1(n.get_mpz_t(), 0);
    if (e2 > 0) {
        out.push_back({Int(2), static_cast<unsigned>(e2)});
        n >>= e2;
    }
    Int limit = isqrt(n);
    for (unsigned long d = 3; d <= 999999; d += 2) {
        if (mpz_cmp_ui(limit.get_mpz_t(), d) < 0) break;
        if (!mpz_divisible_ui_p(n.get_mpz_t(), d)) continue;
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
            ++e;
        }
        out.push_back({Int(d), e});
        limit = isqrt(n);
    }
    if (n > 1) {
        std::vector<Int> rest;
        detail::collect_factors(n, rest);
        std::sort(rest.begin(), rest.end());
        for (std::size_t i = 0; i < rest.size();) {
            std::size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.push_back({rest[i], static_cast<unsigned>(j - i)});
            i = j;
        }
    }
    return out;
}

inline Int value_of(const Factorization& f) {
    Int v(1);
    for (const auto& pp : f) {
        for (unsigned i = 0; i < pp.exponent; ++i) v *= pp.prime;
    }
    return v;
}

/// All divisors, ascending.
inline std::vector<Int> divisors_sorted(const Factorization& f) {
    std::vector<Int> divs{Int(1)};
    for (const auto& pp : f) {
        std::size_t base = divs.size();
        Int pe(1);
        for (unsigned e = 1; e <= pp.exponent; ++e) {
            pe *= pp.prime;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pe);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// True iff no prime divides n twice (n >= 1).
inline bool is_squarefree(const Int& n) {
    if (n < 1) throw std::domain_error("is_squarefree: input must be a positive integer");
    for (const auto& pp : factor(n)) {
        if (pp.exponent > 1) return false;
    }
    return true;
}

/// Product of the primes appearing to an odd power in n.
inline Int squarefree_part(const Int& n) {
    if (n < 1) throw std::domain_error("squarefree_part: input must be a positive integer");
    Int m(1);
    for (const auto& pp : factor(n)) {
        if (pp.exponent % 2 == 1) m *= pp.prime;
    }
    return m;
}

/// Fundamental discriminant of Q(sqrt(m)): m itself if m = 1 (mod 4), else 4m.
inline Int discriminant_of(const Int& m) {
    if (m <= 1) throw std::domain_error("discriminant_of: need squarefree m > 1");
    if (!is_squarefree(m)) throw std::domain_error("discriminant_of: input is not squarefree");
    return mod(m, 4) == 1 ? m : 4 * m;
}

/// Splits a positive non-square discriminant as d = d0 * f^2 with d0
/// fundamental.  Rejects anything that is not a discriminant.
inline std::pair<Int, Int> split_discriminant(const Int& d) {
    if (d <= 0) throw std::domain_error("split_discriminant: discriminant must be positive");
    Int r4 = mod(d, 4);
    if (r4 == 2 || r4 == 3) throw std::domain_error("split_discriminant: d = 2,3 (mod 4) is not a discriminant");
    if (is_square(d)) throw std::domain_error("split_discriminant: square discriminant");
    Int m = squarefree_part(d);
    Int d0 = mod(m, 4) == 1 ? m : 4 * m;
    Int fsq = d / d0;
    Int f = isqrt(fsq);
    if (f * f != fsq) throw verification_error("split_discriminant: conductor square expected");
    return {d0, f};
}

inline bool is_fundamental_discriminant(const Int& d) {
    return split_discriminant(d).second == 1;
}

/// Primes <= n by sieve.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
    std::vector<bool> comp(static_cast<std::size_t>(n) + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

/// table[k] is true iff k is squarefree, for 0 <= k <= n.
inline std::vector<char> squarefree_table(std::uint32_t n) {
    std::vector<char> table(static_cast<std::size_t>(n) + 1, 1);
    table[0] = 0;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        for (std::uint64_t j = p * p; j <= n; j += p * p) table[j] = 0;
    }
    return table;
}

inline unsigned long to_ulong(const Int& n) {
    if (!n.fits_ulong_p()) throw std::domain_error("value exceeds machine-word range: " + n.get_str());
    return n.get_ui();
}

}  // namespace relclass
